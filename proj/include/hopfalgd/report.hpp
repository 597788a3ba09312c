#ifndef HOPFALGD_REPORT_HPP
#define HOPFALGD_REPORT_HPP

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace hopfalgd {

enum class Verdict { Pass, Fail, Skipped };

const char* verdict_name(Verdict v);

struct Check {
    std::string name;
    std::string anchor;  // axiom or construction label, e.g. "B4", "CH3", "NG2"
    Verdict verdict = Verdict::Pass;
    std::vector<std::string> witnesses;
    std::size_t witness_count = 0;  // total found; only the first few are kept
    std::string detail;
};

class Certification {
public:
    static constexpr std::size_t kMaxWitnesses = 8;

    // Starts a passing check; record failures with fail().  References stay
    // valid while further checks are added.
    Check& open(std::string name, std::string anchor);
    void fail(Check& c, std::string witness);
    Check& add(std::string name, std::string anchor, bool ok, std::string detail = {});
    Check& skip(std::string name, std::string anchor, std::string reason);
    // A non-empty anchor replaces the anchors of the merged checks.
    void merge(const Certification& other, const std::string& prefix = {}, const std::string& anchor = {});

    bool passed() const;
    const Check* find(const std::string& name) const;
    const std::deque<Check>& checks() const { return checks_; }
    std::vector<std::string> failures() const;

private:
    std::deque<Check> checks_;
};

}  // namespace hopfalgd

#endif
