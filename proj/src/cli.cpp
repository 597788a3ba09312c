#include "hopfalgd/cli.hpp"

#include "hopfalgd/funhopf.hpp"
#include "hopfalgd/io.hpp"

#include <cstdio>
#include <sstream>

namespace hopfalgd {

using ojson = nlohmann::ordered_json;

std::size_t ReportDocument::count(Verdict v) const
{
    std::size_t n = 0;
    for (const ReportSection& s : sections)
        for (const Check& c : s.checks.checks())
            if (c.verdict == v) ++n;
    return n;
}

int ReportDocument::exit_code() const
{
    return count(Verdict::Fail) == 0 ? 0 : 1;
}

std::string fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t parse_field(const std::string& spec)
{
    if (spec == "q" || spec == "Q") return 0;
    if (spec.rfind("fp:", 0) == 0) {
        const std::string digits = spec.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
            throw InputError("--field", 0, "expected fp:<prime>, got '" + spec + "'");
        const std::uint64_t p = std::stoull(digits);
        if (!Fp::is_prime(p)) throw InputError("--field", 0, std::to_string(p) + " is not prime");
        return p;
    }
    throw InputError("--field", 0, "expected q or fp:<prime>, got '" + spec + "'");
}

namespace {

std::string ids_of(const FiniteGroupoid& g, const std::vector<int>& arrows)
{
    std::string out = "{";
    for (std::size_t k = 0; k < arrows.size(); ++k) out += (k ? "," : "") + g.arrow_id(arrows[k]);
    return out + '}';
}

ojson id_list(const FiniteGroupoid& g, const std::vector<int>& arrows)
{
    ojson out = ojson::array();
    for (int a : arrows) out.push_back(g.arrow_id(a));
    return out;
}

template <class K> ojson basis_rows(const Subspace<K>& s)
{
    ojson out = ojson::array();
    for (Index r = 0; r < s.dim(); ++r) {
        ojson row = ojson::array();
        for (Index c = 0; c < s.ambient_dim(); ++c) row.push_back(to_string(s.basis()(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

ReportSection& section(ReportDocument& doc, const std::string& title)
{
    doc.sections.push_back({title, {}});
    return doc.sections.back();
}

struct Loaded {
    std::string text;
    FiniteGroupoid groupoid;
};

Loaded load(ReportDocument& doc, const std::string& command, const std::string& path, const CommandOptions& opt)
{
    Loaded l{read_file(path), {}};
    l.groupoid = parse_groupoid(l.text);
    doc.command = command;
    doc.input = path;
    doc.digest = "fnv1a-64:" + fnv1a64(l.text);
    doc.field = opt.prime ? "F_" + std::to_string(opt.prime) : "Q";
    doc.data["objects"] = l.groupoid.object_count();
    doc.data["arrows"] = l.groupoid.arrow_count();
    return l;
}

// Validation plus the function Hopf algebroid; nullopt when the groupoid is invalid.
template <class K>
std::optional<FunctionHopfAlgebroid<K>> build(ReportDocument& doc, const FiniteGroupoid& g, bool axioms)
{
    ReportSection& v = section(doc, "groupoid");
    v.checks = validate_groupoid(g);
    if (!v.checks.passed()) {
        section(doc, "Hopf algebroid").checks.skip("function Hopf algebroid", "Hopfalgd", "groupoid fails validation");
        return std::nullopt;
    }
    FunctionHopfAlgebroid<K> h = build_function_hopf_algebroid<K>(g);
    doc.data["dim_A"] = h.base().dim();
    doc.data["dim_H"] = h.dim();
    doc.data["dim_H_tensor_H"] = h.bialgebroid.tensor.dim();
    if (axioms) {
        section(doc, "bialgebroid axioms").checks = verify_bialgebroid(h.bialgebroid);
        section(doc, "Hopf algebroid axioms").checks = check_hopf_axioms(h);
    }
    return h;
}

template <class K> void hopf_galois_section(ReportDocument& doc, const FunctionHopfAlgebroid<K>& h, const std::optional<HopfGaloisData<K>>& hg)
{
    ReportSection& s = section(doc, "Hopf-Galois map");
    if (!hg) {
        s.checks.add("beta invertible", "beta", false);
        return;
    }
    s.checks = verify_hopf_galois(h.bialgebroid, *hg);
    s.checks.merge(check_translation_map(h, *hg));
}

template <class K> void run_validate(ReportDocument& doc, const FiniteGroupoid& g)
{
    auto h = build<K>(doc, g, true);
    if (!h) return;
    hopf_galois_section(doc, *h, hopf_galois(h->bialgebroid));
}

template <class K> void run_normal(ReportDocument& doc, const FiniteGroupoid& g, const CommandOptions& opt)
{
    auto h = build<K>(doc, g, false);
    if (!h) return;
    ReportSection& s = section(doc, "normal subgroupoids");
    const NormalEnumeration en = enumerate_normal_subgroupoids(g, opt.limit);
    if (en.truncated) {
        s.checks.skip("normal subgroupoids enumerated", "cociente",
                      "--limit reached after " + std::to_string(en.candidates) + " orbit unions");
        return;
    }
    s.checks.add("normal subgroupoids enumerated", "cociente", true, std::to_string(en.subgroupoids.size()) + " found");
    const AdjointCoaction<K> co = adjoint_coaction(*h);
    ojson entries = ojson::array();
    for (const WideSubgroupoid& n : en.subgroupoids) {
        std::vector<int> s1;
        for (int a = 0; a < g.arrow_count(); ++a)
            if (!n.contains(a)) s1.push_back(a);
        const QuotientGroupoid q = quotient_groupoid(g, n);
        const std::string tag = "N = " + ids_of(g, n.arrows());
        const NormalVerdict nv = is_normal(g, n);
        s.checks.add(tag + " is normal", "NG", nv.normal,
                     "S1 = " + ids_of(g, s1) + ", |(G/N)_1| = " + std::to_string(q.groupoid.arrow_count()));
        const HopfIdeal<K> hi = classify_ideal(*h, arrow_span(*h, s1), false, &co);
        s.checks.add(tag + ": k(S1) is a normal Hopf ideal", "cociente", hi.hopf() && hi.wide && hi.ni2.value_or(false));
        ojson e;
        e["normal"] = id_list(g, n.arrows());
        e["ideal"] = id_list(g, s1);
        e["quotient_arrows"] = q.groupoid.arrow_count();
        entries.push_back(std::move(e));
    }
    doc.data["normal_subgroupoids"] = std::move(entries);
}

template <class K> void run_correspondence(ReportDocument& doc, const FiniteGroupoid& g, const CommandOptions& opt)
{
    auto built = build<K>(doc, g, true);
    if (!built) return;
    const FunctionHopfAlgebroid<K>& h = *built;
    const LeftBialgebroid<K>& b = h.bialgebroid;
    const auto hg = hopf_galois(b);
    hopf_galois_section(doc, h, hg);

    const AdjointCoaction<K> co = adjoint_coaction(h);
    {
        ReportSection& s = section(doc, "adjoint coaction");
        s.checks.merge(co.quotient.report);
        s.checks.merge(co.report);
    }

    const TheoremB<K> tb = theorem_B_bijection(h, co, opt.limit);
    section(doc, "normal Hopf ideals and coinvariants").checks = tb.report;
    ojson pairs = ojson::array();
    for (const CorrespondencePair<K>& p : tb.pairs) {
        ojson e;
        e["normal"] = id_list(g, p.normal.arrows());
        e["ideal"] = id_list(g, p.ideal_arrows);
        e["quotient_arrows"] = p.quotient.groupoid.arrow_count();
        e["coinvariants_dim"] = p.coinvariants.dim();
        e["coinvariants_basis"] = basis_rows(p.coinvariants);
        pairs.push_back(std::move(e));
    }
    doc.data["pairs"] = std::move(pairs);
    doc.data["basis_order"] = g.arrows();

    const Pool<K> ideals = arrow_ideal_pool(h, opt.limit);
    const Pool<K> subrings = block_subring_pool(h, opt.limit);
    {
        ReportSection& s = section(doc, "Galois connection");
        if (ideals.truncated || subrings.truncated) {
            s.checks.skip("pools enumerated", "adjunction",
                          "--limit reached: " + std::to_string(ideals.scanned) + " arrow subsets, " +
                              std::to_string(subrings.scanned) + " partitions scanned");
        }
        else {
            s.checks.add("pools enumerated", "adjunction", true,
                         std::to_string(ideals.members.size()) + " of " + std::to_string(ideals.scanned) + " arrow subsets, " +
                             std::to_string(subrings.members.size()) + " of " + std::to_string(subrings.scanned) + " partitions");
            s.checks.merge(galois_connection_check(b, ideals.members, subrings.members));
        }
    }
    {
        ReportSection& s = section(doc, "gamma stability and xi");
        if (!hg) s.checks.skip("xi", "xi", "beta is not invertible");
        else if (tb.pairs.empty()) s.checks.skip("xi", "xi", "no correspondence pairs");
        else
            for (const CorrespondencePair<K>& p : tb.pairs)
                s.checks.merge(gamma_stability_and_xi(b, *hg, p.coinvariants), "N = " + ids_of(g, p.normal.arrows()) + ": ");
    }
    {
        ReportSection& s = section(doc, "characters");
        if (tb.pairs.empty()) s.checks.skip("characters", "Takeuchi3.12", "no correspondence pairs");
        for (const CorrespondencePair<K>& p : tb.pairs) {
            const std::string tag = "N = " + ids_of(g, p.normal.arrows()) + ": ";
            try {
                s.checks.merge(characters_and_quotient(h, p.coinvariants), tag);
            }
            catch (const NotCertified& e) {
                s.checks.add(tag + "characters", "Takeuchi3.12", false, e.what());
            }
        }
    }
    {
        ReportSection& s = section(doc, "purity oracle");
        if (tb.pairs.empty()) s.checks.skip("purity", "equivpure", "no correspondence pairs");
        for (const CorrespondencePair<K>& p : tb.pairs) {
            const std::string tag = "N = " + ids_of(g, p.normal.arrows()) + ": ";
            if (auto emb = subalgebra(b.total, p.coinvariants))
                s.checks.merge(purity_agreement(emb->inclusion, opt.module_pool, opt.seed), tag);
            else
                s.checks.add(tag + "coinvariants form a subalgebra", "equivpure", false);
        }
    }
    section(doc, "exhaustive subspaces").checks = exhaustive_subspace_check(h, ideals, subrings, opt.exhaustive_subspaces, opt.limit);
}

template <class Run> ReportDocument dispatch(const std::string& command, const std::string& path, const CommandOptions& opt, Run run)
{
    ReportDocument doc;
    const Loaded l = load(doc, command, path, opt);
    if (opt.prime) {
        Fp::Scope scope(opt.prime);
        run(doc, l.groupoid, Fp{});
    }
    else {
        run(doc, l.groupoid, Rational{});
    }
    return doc;
}

}  // namespace

ReportDocument cmd_validate(const std::string& path, const CommandOptions& opt)
{
    return dispatch("validate", path, opt, [](ReportDocument& doc, const FiniteGroupoid& g, auto tag) {
        run_validate<decltype(tag)>(doc, g);
    });
}

ReportDocument cmd_normal(const std::string& path, const CommandOptions& opt)
{
    return dispatch("normal", path, opt, [&](ReportDocument& doc, const FiniteGroupoid& g, auto tag) {
        run_normal<decltype(tag)>(doc, g, opt);
    });
}

ReportDocument cmd_correspondence(const std::string& path, const CommandOptions& opt)
{
    return dispatch("correspondence", path, opt, [&](ReportDocument& doc, const FiniteGroupoid& g, auto tag) {
        run_correspondence<decltype(tag)>(doc, g, opt);
    });
}

std::string render_text(const ReportDocument& doc)
{
    std::ostringstream os;
    os << "hopfalgd " << kToolVersion << ' ' << doc.command << '\n';
    os << "input: " << doc.input << " (" << doc.digest << ")\n";
    os << "field: " << doc.field << '\n';
    for (const ReportSection& s : doc.sections) {
        os << "\n[" << s.title << "]\n";
        for (const Check& c : s.checks.checks()) {
            std::string verdict = verdict_name(c.verdict);
            verdict.resize(8, ' ');
            os << "  " << verdict << c.name << " (" << c.anchor << ')';
            if (!c.detail.empty()) os << ": " << c.detail;
            os << '\n';
            for (const std::string& w : c.witnesses) os << "            witness: " << w << '\n';
            if (c.witness_count > c.witnesses.size())
                os << "            (" << c.witness_count - c.witnesses.size() << " more witnesses)\n";
        }
    }
    if (doc.data.contains("normal_subgroupoids")) {
        os << "\n[listing]\n";
        for (const auto& e : doc.data["normal_subgroupoids"])
            os << "  N1 = " << e["normal"].dump() << "  S1 = " << e["ideal"].dump() << "  |(G/N)_1| = " << e["quotient_arrows"].dump()
               << '\n';
    }
    if (doc.data.contains("pairs")) {
        os << "\n[correspondence pairs]\n  basis order " << doc.data["basis_order"].dump() << '\n';
        for (const auto& e : doc.data["pairs"]) {
            os << "  N1 = " << e["normal"].dump() << "  S1 = " << e["ideal"].dump() << "  dim K = " << e["coinvariants_dim"].dump() << '\n';
            for (const auto& row : e["coinvariants_basis"]) {
                os << "    [";
                for (std::size_t k = 0; k < row.size(); ++k) os << (k ? ", " : "") << row[k].get<std::string>();
                os << "]\n";
            }
        }
    }
    os << "\nsummary: " << doc.count(Verdict::Pass) << " PASS, " << doc.count(Verdict::Fail) << " FAIL, " << doc.count(Verdict::Skipped)
       << " SKIPPED\n";
    return os.str();
}

ojson render_json(const ReportDocument& doc)
{
    ojson out;
    out["tool_version"] = kToolVersion;
    out["command"] = doc.command;
    out["input"] = doc.input;
    out["input_digest"] = doc.digest;
    out["field"] = doc.field;
    ojson sections = ojson::array();
    for (const ReportSection& s : doc.sections) {
        ojson checks = ojson::array();
        for (const Check& c : s.checks.checks()) {
            ojson j;
            j["name"] = c.name;
            j["anchor"] = c.anchor;
            j["verdict"] = verdict_name(c.verdict);
            j["witnesses"] = c.witnesses;
            j["witness_count"] = c.witness_count;
            j["detail"] = c.detail;
            checks.push_back(std::move(j));
        }
        sections.push_back({{"title", s.title}, {"checks", std::move(checks)}});
    }
    out["sections"] = std::move(sections);
    out["data"] = doc.data;
    out["summary"] = {{"pass", doc.count(Verdict::Pass)}, {"fail", doc.count(Verdict::Fail)}, {"skipped", doc.count(Verdict::Skipped)}};
    out["exit_code"] = doc.exit_code();
    return out;
}

}  // namespace hopfalgd
