#ifndef HOPFALGD_CLI_HPP
#define HOPFALGD_CLI_HPP

#include "hopfalgd/report.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hopfalgd {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportSection {
    std::string title;
    Certification checks;
};

struct ReportDocument {
    std::string command;
    std::string input;
    std::string digest;  // fnv1a-64 of the input bytes
    std::string field;   // "Q" or "F_p"
    std::vector<ReportSection> sections;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();  // command specific listings

    std::size_t count(Verdict v) const;
    // 0 when nothing failed, 1 otherwise.
    int exit_code() const;
};

struct CommandOptions {
    std::uint64_t prime = 0;  // 0 means Q
    long exhaustive_subspaces = 0;
    std::optional<std::size_t> limit;
    std::uint64_t seed = 1;
    std::size_t module_pool = 20;
};

// Throws InputError for unknown fields and non-prime moduli.
std::uint64_t parse_field(const std::string& spec);

// All three throw InputError when the file cannot be read or parsed.
ReportDocument cmd_validate(const std::string& path, const CommandOptions& opt);
ReportDocument cmd_normal(const std::string& path, const CommandOptions& opt);
ReportDocument cmd_correspondence(const std::string& path, const CommandOptions& opt);

std::string render_text(const ReportDocument& doc);
nlohmann::ordered_json render_json(const ReportDocument& doc);

std::string fnv1a64(const std::string& bytes);

}  // namespace hopfalgd

#endif
