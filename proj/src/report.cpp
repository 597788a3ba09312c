#include "hopfalgd/report.hpp"

namespace hopfalgd {

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
    }
    return "?";
}

Check& Certification::open(std::string name, std::string anchor)
{
    checks_.push_back(Check{std::move(name), std::move(anchor), Verdict::Pass, {}, 0, {}});
    return checks_.back();
}

void Certification::fail(Check& c, std::string witness)
{
    c.verdict = Verdict::Fail;
    ++c.witness_count;
    if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back(std::move(witness));
}

Check& Certification::add(std::string name, std::string anchor, bool ok, std::string detail)
{
    Check& c = open(std::move(name), std::move(anchor));
    c.detail = std::move(detail);
    if (!ok) c.verdict = Verdict::Fail;
    return c;
}

Check& Certification::skip(std::string name, std::string anchor, std::string reason)
{
    Check& c = open(std::move(name), std::move(anchor));
    c.verdict = Verdict::Skipped;
    c.detail = std::move(reason);
    return c;
}

void Certification::merge(const Certification& other, const std::string& prefix, const std::string& anchor)
{
    for (Check c : other.checks_) {
        if (!prefix.empty()) c.name = prefix + c.name;
        if (!anchor.empty()) c.anchor = anchor;
        checks_.push_back(std::move(c));
    }
}

bool Certification::passed() const
{
    for (const Check& c : checks_)
        if (c.verdict == Verdict::Fail) return false;
    return true;
}

const Check* Certification::find(const std::string& name) const
{
    for (const Check& c : checks_)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<std::string> Certification::failures() const
{
    std::vector<std::string> out;
    for (const Check& c : checks_)
        if (c.verdict == Verdict::Fail) out.push_back(c.name);
    return out;
}

}  // namespace hopfalgd
