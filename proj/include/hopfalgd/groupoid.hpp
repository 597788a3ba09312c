#ifndef HOPFALGD_GROUPOID_HPP
#define HOPFALGD_GROUPOID_HPP

#include "hopfalgd/report.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfalgd {

struct UndefinedComposite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotNormal : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Malformed tables: duplicate ids, unknown references, conflicting composites.
struct GroupoidInputError : std::invalid_argument {
    GroupoidInputError(std::string field, const std::string& what) : std::invalid_argument(what), field(std::move(field)) {}
    std::string field;
};

struct ArrowSpec {
    std::string id, src, tgt;
};
struct CompositeSpec {
    std::string g, f, gf;  // gf = g after f
};

// Objects and arrows are kept sorted by id; indices below refer to that
// order.  Nothing is assumed valid: see validate_groupoid.
class FiniteGroupoid {
public:
    static constexpr int kUndefined = -1;

    FiniteGroupoid() = default;
    FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows, const std::vector<CompositeSpec>& compose,
                   const std::map<std::string, std::string>& identities = {});

    // compose(g, f) returns the index of g after f, or kUndefined.
    static FiniteGroupoid build(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                                const std::function<std::optional<std::string>(const std::string&, const std::string&)>& compose);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& arrows() const { return arrows_; }
    const std::string& object_id(int x) const { return objects_[static_cast<std::size_t>(x)]; }
    const std::string& arrow_id(int g) const { return arrows_[static_cast<std::size_t>(g)]; }
    int object_index(const std::string& id) const;
    int arrow_index(const std::string& id) const;

    int src(int g) const { return src_[static_cast<std::size_t>(g)]; }
    int tgt(int g) const { return tgt_[static_cast<std::size_t>(g)]; }
    int identity(int x) const { return ident_[static_cast<std::size_t>(x)]; }
    int inverse(int g) const { return inv_[static_cast<std::size_t>(g)]; }
    int compose(int g, int f) const
    {
        return g < 0 || f < 0 ? kUndefined : comp_[static_cast<std::size_t>(g * arrow_count() + f)];
    }
    // Throws UndefinedComposite when the table has no entry.
    int compose_checked(int g, int f) const;
    bool is_identity(int g) const { return ident_[static_cast<std::size_t>(src(g))] == g && src(g) == tgt(g); }
    bool is_loop(int g) const { return src(g) == tgt(g); }
    std::size_t composable_pairs() const;

private:
    void infer_structure(const std::map<std::string, std::string>& identities);

    std::vector<std::string> objects_, arrows_;
    std::vector<int> src_, tgt_, ident_, inv_, comp_;
};

Certification validate_groupoid(const FiniteGroupoid& g);

// Arrow subset containing all identities, closed under composition and inverses.
struct WideSubgroupoid {
    std::vector<bool> member;

    std::vector<int> arrows() const;
    bool contains(int g) const { return member[static_cast<std::size_t>(g)]; }
    std::size_t size() const;
};

WideSubgroupoid identities_only(const FiniteGroupoid& g);
WideSubgroupoid isotropy(const FiniteGroupoid& g);
Certification check_wide_subgroupoid(const FiniteGroupoid& g, const WideSubgroupoid& n);
// The subgroupoid as a groupoid in its own right, ids kept.
FiniteGroupoid restrict_to(const FiniteGroupoid& g, const WideSubgroupoid& n);
std::vector<std::string> arrow_ids(const FiniteGroupoid& g, const WideSubgroupoid& n);

// Left action: act(g, n) = g n, defined iff src(g) = anchor(n).
struct GroupoidAction {
    FiniteGroupoid groupoid;
    std::vector<std::string> carrier;
    std::vector<int> anchor;  // carrier -> objects of groupoid
    std::vector<int> table;   // g * |carrier| + n -> carrier index or -1

    int size() const { return static_cast<int>(carrier.size()); }
    int act(int g, int n) const;  // throws UndefinedComposite
};

Certification check_action(const GroupoidAction& a);
GroupoidAction adjoint_action(const FiniteGroupoid& g);
// G acting on its objects: g . src(g) = tgt(g).
GroupoidAction object_action(const FiniteGroupoid& g);
// n acting on all arrows of g by left composition.
GroupoidAction left_translation(const FiniteGroupoid& g, const WideSubgroupoid& n);

struct NormalVerdict {
    bool normal = false;
    std::string witness;
};
NormalVerdict is_normal(const FiniteGroupoid& g, const WideSubgroupoid& n);

struct NormalEnumeration {
    std::vector<WideSubgroupoid> subgroupoids;
    bool truncated = false;
    std::size_t candidates = 0;  // orbit unions examined
};
// Sorted by arrow-id sets.  `limit` caps the number of orbit unions examined.
NormalEnumeration enumerate_normal_subgroupoids(const FiniteGroupoid& g, std::optional<std::size_t> limit = std::nullopt);
// Subset scan over non-identity isotropy arrows.
std::vector<WideSubgroupoid> enumerate_normal_brute_force(const FiniteGroupoid& g);

// Classes sorted internally and by smallest member.
std::vector<std::vector<int>> orbit_space(const GroupoidAction& a);
std::vector<std::vector<int>> right_orbits(const FiniteGroupoid& g, const WideSubgroupoid& n);

FiniteGroupoid translation_groupoid(const GroupoidAction& a);

struct QuotientGroupoid {
    FiniteGroupoid groupoid;
    std::vector<int> projection;  // arrow of g -> arrow of quotient
    std::vector<std::vector<int>> classes;
};
QuotientGroupoid quotient_groupoid(const FiniteGroupoid& g, const WideSubgroupoid& n);

// Functor given on arrows; objects are read off identities.
bool is_morphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const std::vector<int>& arrow_map);
// For a morphism killing n: the induced map on the quotient, if it is well defined.
std::optional<std::vector<int>> factor_through_quotient(const FiniteGroupoid& g, const WideSubgroupoid& n,
                                                        const QuotientGroupoid& q, const FiniteGroupoid& h,
                                                        const std::vector<int>& arrow_map);

// Isomorphism search by backtracking over arrow assignments.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h);

}  // namespace hopfalgd

#endif
