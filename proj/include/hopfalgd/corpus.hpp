#ifndef HOPFALGD_CORPUS_HPP
#define HOPFALGD_CORPUS_HPP

#include "hopfalgd/groupoid.hpp"

#include <string>
#include <vector>

namespace hopfalgd {

struct GroupTable {
    std::string name;
    int order = 0;
    std::vector<int> mult;  // a * order + b -> ab; element 0 is the unit

    int operator()(int a, int b) const { return mult[static_cast<std::size_t>(a * order + b)]; }
};

struct NamedGroupoid {
    std::string name;
    FiniteGroupoid groupoid;
};

// All groups of order <= max_order up to isomorphism (max_order <= 10).
std::vector<GroupTable> small_groups(int max_order);

FiniteGroupoid one_object_groupoid(const GroupTable& g);
// Pair groupoid on n objects times a group.
FiniteGroupoid pair_times_group(int n, const GroupTable& g);

// Every connected groupoid with at most max_objects objects and max_arrows arrows.
std::vector<NamedGroupoid> connected_corpus(int max_objects = 4, int max_arrows = 10);

// terminal, pair2, C2, Z4, S3, pair2xC2, C2+C2 with readable arrow ids.
std::vector<NamedGroupoid> named_fixtures();
NamedGroupoid named_fixture(const std::string& name);

}  // namespace hopfalgd

#endif
