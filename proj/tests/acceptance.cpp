// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "hopfalgd/corpus.hpp"
#include "hopfalgd/funhopf.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

using namespace hopfalgd;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;  // failures, shown after the verdict line
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (notes.size() < 10) notes.push_back(what);
        }
    }
    void require(const Certification& c, const std::string& where)
    {
        for (const std::string& f : c.failures()) require(false, where + ": " + f);
    }
};

// Verdicts by check name, for the field comparison.
using Signature = std::vector<std::string>;

void sign(Signature& s, const std::string& where, const Certification& c)
{
    for (const Check& ch : c.checks()) s.push_back(where + '/' + ch.name + '=' + verdict_name(ch.verdict));
}

std::string tag(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    std::string out = "N={";
    const auto arrows = n.arrows();
    for (std::size_t k = 0; k < arrows.size(); ++k) out += (k ? "," : "") + g.arrow_id(arrows[k]);
    return out + '}';
}

template <class K> struct FieldRun {
    std::map<int, Signature> signatures;  // criteria 1-5 on the fixtures
    Outcome c[9];

    void run(const std::vector<NamedGroupoid>& fixtures, const std::vector<NamedGroupoid>& corpus, std::uint64_t seed, bool full)
    {
        // 1 and 4 over the corpus as well (not part of the field comparison)
        std::size_t corpus_count = 0;
        if (full) {
            for (const NamedGroupoid& n : corpus) {
                const auto h = build_function_hopf_algebroid<K>(n.groupoid);
                c[1].require(verify_bialgebroid(h.bialgebroid), n.name);
                c[1].require(check_hopf_axioms(h), n.name);
                const auto hg = hopf_galois(h.bialgebroid);
                c[4].require(hg.has_value(), n.name + ": beta not invertible");
                if (hg) {
                    c[4].require(verify_hopf_galois(h.bialgebroid, *hg), n.name);
                    c[4].require(check_translation_map(h, *hg), n.name);
                }
                ++corpus_count;
            }
        }

        std::size_t pairs = 0, lattice_pairs = 0, extensions = 0, modules = 0, pure = 0;
        for (const NamedGroupoid& n : fixtures) {
            const auto h = build_function_hopf_algebroid<K>(n.groupoid);
            const LeftBialgebroid<K>& b = h.bialgebroid;

            const Certification bi = verify_bialgebroid(b), ch = check_hopf_axioms(h);
            c[1].require(bi, n.name);
            c[1].require(ch, n.name);
            sign(signatures[1], n.name, bi);
            sign(signatures[1], n.name, ch);

            const auto hg = hopf_galois(b);
            c[4].require(hg.has_value(), n.name + ": beta not invertible");
            signatures[4].push_back(n.name + "/beta invertible=" + (hg ? "1" : "0"));
            if (hg) {
                const Certification v = verify_hopf_galois(b, *hg), t = check_translation_map(h, *hg);
                c[4].require(v, n.name);
                c[4].require(t, n.name);
                sign(signatures[4], n.name, v);
                sign(signatures[4], n.name, t);
            }

            const Pool<K> ideals = arrow_ideal_pool(h), subrings = block_subring_pool(h);
            c[2].require(!ideals.truncated && !subrings.truncated, n.name + ": pools truncated");
            const Certification gc = galois_connection_check(b, ideals.members, subrings.members);
            c[2].require(gc, n.name);
            sign(signatures[2], n.name, gc);
            lattice_pairs += ideals.members.size() * subrings.members.size();

            const AdjointCoaction<K> co = adjoint_coaction(h);
            const TheoremB<K> tb = theorem_B_bijection(h, co);
            c[3].require(co.report, n.name);
            c[3].require(tb.report, n.name);
            for (const Check& x : tb.report.checks()) c[3].require(x.verdict != Verdict::Skipped, n.name + ": " + x.name + " skipped");
            sign(signatures[3], n.name, co.report);
            sign(signatures[3], n.name, tb.report);
            signatures[3].push_back(n.name + "/pairs=" + std::to_string(tb.pairs.size()));
            if (n.name == "pair2xC2") c[3].require(tb.pairs.size() == 2, "pair2xC2 should give 2 pairs");
            if (n.name == "C2uC2") c[3].require(tb.pairs.size() == 4, "C2uC2 should give 4 pairs");

            for (const CorrespondencePair<K>& p : tb.pairs) {
                ++pairs;
                const std::string where = n.name + ' ' + tag(n.groupoid, p.normal);
                if (hg) {
                    const Certification x = gamma_stability_and_xi(b, *hg, p.coinvariants);
                    c[5].require(x, where);
                    for (const char* name : {"xi bijective", "B = Psi Phi(B)"}) {
                        const Check* k = x.find(name);
                        c[5].require(k && k->verdict == Verdict::Pass, where + ": " + name + " not passed");
                    }
                    sign(signatures[5], where, x);
                }

                const auto emb = subalgebra(b.total, p.coinvariants);
                c[6].require(emb.has_value(), where + ": coinvariants not a subalgebra");
                if (emb) {
                    c[6].require(purity_agreement(emb->inclusion, 20, seed), where);
                    if (purity_check(emb->inclusion).pure) ++pure;
                    ++extensions;
                    modules += 20;
                }

                try {
                    const Certification ch7 = characters_and_quotient(h, p.coinvariants);
                    c[7].require(ch7, where);
                    if (n.name == "pair2xC2" && p.quotient.groupoid.arrow_count() == 4) {
                        const Check* k = ch7.find("composition in G_K matches G/N");
                        c[7].require(k && k->detail == "|G_H| = 8, |G_{H/I}| = 4, cosets 4, |G_K| = 4",
                                     "pair2xC2 cardinalities: " + (k ? k->detail : std::string("missing")));
                    }
                }
                catch (const std::exception& e) {
                    c[7].require(false, where + ": " + e.what());
                }
            }

            // purity on every comodule subring of the pool, pure or not
            for (const Subspace<K>& s : subrings.members) {
                const auto emb = subalgebra(b.total, s);
                if (!emb) continue;
                c[6].require(purity_agreement(emb->inclusion, 20, seed + 1), n.name + " pool subring");
                if (purity_check(emb->inclusion).pure) ++pure;
                ++extensions;
                modules += 20;
            }
        }
        c[1].detail << fixtures.size() << " fixtures" << (full ? " + " + std::to_string(corpus_count) + " corpus groupoids" : "");
        c[2].detail << lattice_pairs << " (I, B) pairs from exhaustive arrow-subset and partition lattices";
        c[3].detail << pairs << " correspondence pairs";
        c[4].detail << "beta, gamma = (H (x) S) Delta, gamma multiplicative";
        c[5].detail << pairs << " coinvariant subrings";
        c[6].detail << extensions << " extensions (" << pure << " pure), " << modules << " random modules";
        c[7].detail << pairs << " quotients, full composition tables";
    }
};

}  // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t seed = 1;
    if (const char* s = std::getenv("HOPFALGD_SEED")) seed = std::strtoull(s, nullptr, 10);

    const std::vector<NamedGroupoid> fixtures = named_fixtures();
    const std::vector<NamedGroupoid> corpus = connected_corpus(4, 10);

    FieldRun<Rational> q;
    q.run(fixtures, corpus, seed, true);
    FieldRun<Fp> f3;
    {
        Fp::Scope scope(3);
        f3.run(fixtures, corpus, seed, false);
    }

    Outcome field;
    for (int k = 1; k <= 5; ++k) {
        field.require(q.signatures[k] == f3.signatures[k], "criterion " + std::to_string(k) + " verdicts differ between Q and F_3");
        field.require(!q.signatures[k].empty(), "criterion " + std::to_string(k) + " has no verdicts");
    }
    for (int k = 1; k <= 7; ++k) {
        q.c[k].require(f3.c[k].ok, "over F_3: " + (f3.c[k].notes.empty() ? std::string() : f3.c[k].notes.front()));
    }
    std::size_t compared = 0;
    for (int k = 1; k <= 5; ++k) compared += q.signatures[k].size();
    field.detail << compared << " verdicts compared over Q and F_3";

    const char* names[] = {"",
                           "axiom suite",
                           "Galois connection",
                           "normal Hopf ideal correspondence",
                           "Hopf-Galois structure",
                           "xi isomorphism",
                           "purity oracle",
                           "character-level quotients",
                           "field independence"};
    bool all = true;
    for (int k = 1; k <= 8; ++k) {
        const Outcome& o = k == 8 ? field : q.c[k];
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << k << " " << names[k] << ": " << o.detail.str() << '\n';
        for (const std::string& note : o.notes) std::cout << "     " << note << '\n';
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "elapsed " << static_cast<int>(secs + 0.5) << " s\n";
    return all ? 0 : 1;
}
