#ifndef HOPFALGD_IO_HPP
#define HOPFALGD_IO_HPP

#include "hopfalgd/groupoid.hpp"

#include <stdexcept>
#include <string>

namespace hopfalgd {

// Malformed input.  line is 1-based, 0 when unknown; field is a path such
// as "arrows[2].src".
struct InputError : std::runtime_error {
    InputError(std::string field, int line, const std::string& message);
    std::string field;
    int line;
    std::string message;
};

// Groupoid file:
//   {"objects": [..], "arrows": [{"id", "src", "tgt"}, ..],
//    "compose": [[g, f, "g after f"], ..], "identities": {object: arrow}}
// identities is optional; without it units are inferred from the table.
FiniteGroupoid parse_groupoid(const std::string& text);
FiniteGroupoid load_groupoid(const std::string& path);

std::string read_file(const std::string& path);

// Every defined composite, in arrow order; identities written explicitly.
std::string groupoid_to_json(const FiniteGroupoid& g);

// Line of the value at a field path, 0 if the path is absent.
int line_of_field(const std::string& text, const std::string& field);

}  // namespace hopfalgd

#endif
