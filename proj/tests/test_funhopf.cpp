#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hopfalgd/corpus.hpp"
#include "hopfalgd/funhopf.hpp"

#include <string>

using namespace hopfalgd;

namespace {

using Q = Rational;

FunctionHopfAlgebroid<Q> fun(const std::string& name)
{
    return build_function_hopf_algebroid<Q>(named_fixture(name).groupoid);
}

std::vector<int> ids(const FiniteGroupoid& g, const std::vector<std::string>& names)
{
    std::vector<int> out;
    for (const auto& n : names) out.push_back(g.arrow_index(n));
    std::sort(out.begin(), out.end());
    return out;
}

template <class K> Vector<K> arrows_vec(const FiniteGroupoid& g, const std::vector<std::string>& names)
{
    Vector<K> v = Vector<K>::Zero(g.arrow_count());
    for (const auto& n : names) v(g.arrow_index(n)) += K(1);
    return v;
}

void require_passed(const Certification& c)
{
    for (const std::string& f : c.failures()) INFO(f);
    CHECK(c.passed());
    if (!c.passed())
        for (const std::string& f : c.failures()) MESSAGE(f);
}

}  // namespace

TEST_CASE("terminal groupoid gives A = H = k")
{
    const auto h = fun("terminal");
    CHECK(h.dim() == 1);
    CHECK(h.base().dim() == 1);
    CHECK(h.bialgebroid.tensor.dim() == 1);
    require_passed(verify_bialgebroid(h.bialgebroid));
    require_passed(check_hopf_axioms(h));
}

TEST_CASE("pair groupoid coproduct")
{
    const auto h = fun("pair2");
    const FiniteGroupoid& g = h.groupoid;
    const LeftBialgebroid<Q>& b = h.bialgebroid;
    CHECK(b.tensor.dim() == 8);
    const int a = g.arrow_index("a"), id1 = g.arrow_index("id1"), id2 = g.arrow_index("id2");
    const Vector<Q> expected = b.tensor.project_pure(unit_vector<Q>(4, id1), unit_vector<Q>(4, a)) +
                               b.tensor.project_pure(unit_vector<Q>(4, a), unit_vector<Q>(4, id2));
    CHECK(Vector<Q>(b.delta.col(a)) == expected);
    CHECK(h.antipode(g.arrow_index("ainv"), a) == Q(1));
    CHECK(b.counit(0, id1) == Q(1));
    CHECK(b.counit.col(a).isZero());
}

TEST_CASE("C2 coproduct")
{
    const auto h = fun("C2");
    const FiniteGroupoid& g = h.groupoid;
    const LeftBialgebroid<Q>& b = h.bialgebroid;
    const int e = g.arrow_index("e"), eps = g.arrow_index("eps");
    auto pure = [&](int x, int y) { return b.tensor.project_pure(unit_vector<Q>(2, x), unit_vector<Q>(2, y)); };
    CHECK(Vector<Q>(b.delta.col(eps)) == Vector<Q>(pure(e, eps) + pure(eps, e)));
    CHECK(Vector<Q>(b.delta.col(e)) == Vector<Q>(pure(e, e) + pure(eps, eps)));
}

TEST_CASE("Hopf axioms and translation map over the corpus")
{
    std::vector<NamedGroupoid> all = connected_corpus();
    for (auto& n : named_fixtures()) all.push_back(n);
    for (const NamedGroupoid& n : all) {
        INFO(n.name);
        const auto h = build_function_hopf_algebroid<Q>(n.groupoid);
        require_passed(verify_bialgebroid(h.bialgebroid));
        require_passed(check_hopf_axioms(h));
        const auto hg = hopf_galois(h.bialgebroid);
        REQUIRE(hg.has_value());
        require_passed(verify_hopf_galois(h.bialgebroid, *hg));
        require_passed(check_translation_map(h, *hg));
    }
}

TEST_CASE("invalid groupoid is rejected with its report")
{
    const FiniteGroupoid broken({"1", "2"}, {{"id1", "1", "1"}, {"id2", "2", "2"}, {"a", "1", "2"}},
                                {{"id1", "id1", "id1"}, {"id2", "id2", "id2"}, {"a", "id1", "a"}, {"id2", "a", "a"}});
    try {
        build_function_hopf_algebroid<Q>(broken);
        FAIL("expected InvalidGroupoid");
    }
    catch (const InvalidGroupoid& e) {
        const Check* inv = e.report.find("inverses");
        REQUIRE(inv != nullptr);
        CHECK(inv->witnesses == std::vector<std::string>{"a"});
    }
}

TEST_CASE("classify_ideal on the pair groupoid")
{
    const auto h = fun("pair2");
    const FiniteGroupoid& g = h.groupoid;

    const HopfIdeal<Q> zero = classify_ideal(h, arrow_span(h, {}));
    CHECK(zero.ideal);
    CHECK(zero.hi1);
    CHECK(zero.hi2);
    CHECK(zero.hi3);
    CHECK_FALSE(zero.wide);

    const HopfIdeal<Q> both = classify_ideal(h, arrow_span(h, ids(g, {"a", "ainv"})));
    CHECK(both.hopf());
    CHECK(both.wide);
    CHECK(both.complement_wide == true);

    const HopfIdeal<Q> one = classify_ideal(h, arrow_span(h, ids(g, {"a"})));
    CHECK(one.hi1);
    CHECK(one.hi2);
    CHECK_FALSE(one.hi3);
    CHECK(one.report.find("antipode preserves I")->witnesses == std::vector<std::string>{"a"});

    const HopfIdeal<Q> unit = classify_ideal(h, arrow_span(h, ids(g, {"id1"})));
    CHECK_FALSE(unit.hi1);
}

TEST_CASE("both classification paths agree on every arrow subset")
{
    for (const std::string name : {"pair2", "C2", "S3", "pair2xC2", "C2uC2"}) {
        INFO(name);
        const auto h = fun(name);
        const Index n = h.dim();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<int> s;
            for (int a = 0; a < n; ++a)
                if (mask >> a & 1U) s.push_back(a);
            const auto fast = classify_ideal(h, arrow_span(h, s));
            const auto slow = classify_ideal(h, arrow_span(h, s), true);
            CHECK(fast.path == "arrow-subset");
            CHECK(slow.path == "subspace");
            CHECK(fast.ideal == slow.ideal);
            CHECK(fast.hi1 == slow.hi1);
            CHECK(fast.hi2 == slow.hi2);
            CHECK(fast.hi3 == slow.hi3);
            CHECK(fast.wide == slow.wide);
            if (fast.hopf()) CHECK(fast.complement_wide == true);
        }
    }
}

TEST_CASE("a non-arrow subspace is classified on the subspace path")
{
    const auto h = fun("C2");
    const FiniteGroupoid& g = h.groupoid;
    const Subspace<Q> s = Subspace<Q>::span(2, {arrows_vec<Q>(g, {"e", "eps"})});
    const HopfIdeal<Q> c = classify_ideal(h, s);
    CHECK(c.path == "subspace");
    CHECK_FALSE(c.arrow_set.has_value());
    CHECK_FALSE(c.ideal);
}

TEST_CASE("isotropy quotients")
{
    const std::vector<std::pair<std::string, Index>> dims{{"pair2", 2}, {"pair2xC2", 4}, {"S3", 6}, {"terminal", 1}, {"C2uC2", 4}};
    for (const auto& [name, d] : dims) {
        INFO(name);
        const auto h = fun(name);
        const IsotropyQuotient<Q> q = isotropy_quotient(h);
        CHECK(q.dim() == d);
        require_passed(q.report);
    }
}

TEST_CASE("adjoint coaction on pair2 x C2")
{
    const auto h = fun("pair2xC2");
    const FiniteGroupoid& g = h.groupoid;
    const AdjointCoaction<Q> co = adjoint_coaction(h);
    require_passed(co.report);
    const auto& arrows = co.quotient.arrows;
    auto bar = [&](const std::string& id) {
        const auto pos = std::find(arrows.begin(), arrows.end(), g.arrow_index(id));
        REQUIRE(pos != arrows.end());
        return unit_vector<Q>(co.quotient.dim(), pos - arrows.begin());
    };
    const Index k = std::find(arrows.begin(), arrows.end(), g.arrow_index("eps1")) - arrows.begin();
    const Vector<Q> expected = co.tensor.project_pure(bar("eps1"), arrows_vec<Q>(g, {"id1", "eps1"})) +
                               co.tensor.project_pure(bar("eps2"), arrows_vec<Q>(g, {"ainv", "eps_ainv"}));
    CHECK_FALSE(expected.isZero());
    CHECK(Vector<Q>(co.delta.col(k)) == expected);
    // the pairing with f_a + f_{a eps} dies in the balanced tensor product
    CHECK(co.tensor.project_pure(bar("eps2"), arrows_vec<Q>(g, {"a", "a_eps"})).isZero());
}

TEST_CASE("conjugacy class sums of S3 are coinvariant")
{
    const auto h = fun("S3");
    const FiniteGroupoid& g = h.groupoid;
    const AdjointCoaction<Q> co = adjoint_coaction(h);
    require_passed(co.report);
    for (const std::vector<std::string>& cls : std::vector<std::vector<std::string>>{{"123"}, {"132", "213", "321"}, {"231", "312"}}) {
        const Vector<Q> c = co.quotient.algebra.projection * arrows_vec<Q>(g, cls);
        CHECK(Vector<Q>(co.delta * c) == co.tensor.project_pure(c, h.total().unit()));
    }
    // a single transposition is not
    const Vector<Q> t = co.quotient.algebra.projection * arrows_vec<Q>(g, {"132"});
    CHECK(Vector<Q>(co.delta * t) != co.tensor.project_pure(t, h.total().unit()));
}

TEST_CASE("normality of Hopf ideals")
{
    {
        const auto h = fun("pair2");
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const HopfIdeal<Q> st = classify_ideal(h, co.quotient.ideal, false, &co);
        REQUIRE(st.hopf());
        CHECK(st.ni2 == true);
        const NormalIdealVerdict v = check_normal(h, co, st);
        CHECK(v.normal);
        CHECK(v.groupoid_agrees == true);
    }
    {
        const auto h = fun("pair2xC2");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const HopfIdeal<Q> i = classify_ideal(h, arrow_span(h, ids(g, {"eps1", "eps2", "a", "a_eps", "ainv", "eps_ainv"})), false, &co);
        REQUIRE(i.hopf());
        CHECK(check_normal(h, co, i).normal);
        const HopfIdeal<Q> zero = classify_ideal(h, arrow_span(h, {}));
        const NormalIdealVerdict z = check_normal(h, co, zero);
        CHECK_FALSE(z.normal);
        CHECK_FALSE(z.ni1);
        CHECK(z.witness.rfind("NI1: ", 0) == 0);
    }
    {
        const auto h = fun("S3");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const HopfIdeal<Q> i = classify_ideal(h, arrow_span(h, ids(g, {"213", "231", "312", "321"})), false, &co);
        REQUIRE(i.hopf());
        CHECK(i.ni2 == false);
        const NormalIdealVerdict v = check_normal(h, co, i);
        CHECK_FALSE(v.normal);
        CHECK(v.ni1);
        CHECK(v.witness.rfind("NI2: ", 0) == 0);
        CHECK(v.groupoid_agrees == true);
        CHECK_THROWS_AS(coinvariants(h, co, i), NotNormal);
        const HopfIdeal<Q> bad = classify_ideal(h, arrow_span(h, ids(g, {"213"})));
        CHECK_THROWS_AS(check_normal(h, co, bad), NotCertified);
    }
}

TEST_CASE("coinvariants")
{
    {
        const auto h = fun("pair2");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"a", "ainv"}))));
        require_passed(k.report);
        CHECK(k.subspace.dim() == 4);
    }
    {
        const auto h = fun("pair2xC2");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"a", "a_eps", "ainv", "eps_ainv"}))));
        require_passed(k.report);
        CHECK(k.subspace.dim() == 4);
        CHECK(k.subspace.contains(arrows_vec<Q>(g, {"id1", "eps1"})));
        CHECK(k.subspace.contains(arrows_vec<Q>(g, {"a", "a_eps"})));
        CHECK(k.orbits.size() == 4);
    }
    {
        const auto h = fun("terminal");
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, {})));
        require_passed(k.report);
        CHECK(k.subspace.dim() == 1);
    }
}

TEST_CASE("correspondence sizes and certification")
{
    const std::vector<std::pair<std::string, std::size_t>> sizes{
        {"terminal", 1}, {"pair2", 1}, {"C2", 2}, {"Z4", 3}, {"S3", 3}, {"pair2xC2", 2}, {"C2uC2", 4}};
    for (const auto& [name, count] : sizes) {
        INFO(name);
        const auto h = fun(name);
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const TheoremB<Q> t = theorem_B_bijection(h, co);
        CHECK(t.pairs.size() == count);
        require_passed(t.report);
        for (const auto& p : t.pairs) CHECK(p.coinvariants.dim() == p.quotient.groupoid.arrow_count());
        const Check* scan = t.report.find("normal Hopf ideals are k(G1 \\ N1)");
        REQUIRE(scan != nullptr);
        CHECK(scan->verdict == Verdict::Pass);
        CHECK(scan->detail == std::to_string(count) + " normal Hopf ideals");
    }
}

TEST_CASE("correspondence limit gives a skipped verdict")
{
    const auto h = fun("S3");
    const AdjointCoaction<Q> co = adjoint_coaction(h);
    const TheoremB<Q> t = theorem_B_bijection(h, co, 1);
    CHECK(t.pairs.empty());
    const Check* c = t.report.find("normal subgroupoids enumerated");
    REQUIRE(c != nullptr);
    CHECK(c->verdict == Verdict::Skipped);
}

TEST_CASE("characters and the quotient groupoid")
{
    {
        const auto h = fun("pair2xC2");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"a", "a_eps", "ainv", "eps_ainv"}))));
        const Certification c = characters_and_quotient(h, k.subspace);
        require_passed(c);
        CHECK(c.find("composition in G_K matches G/N")->detail == "|G_H| = 8, |G_{H/I}| = 4, cosets 4, |G_K| = 4");
    }
    {
        const auto h = fun("Z4");
        const FiniteGroupoid& g = h.groupoid;
        const AdjointCoaction<Q> co = adjoint_coaction(h);
        const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"1", "3"}))));
        const Certification c = characters_and_quotient(h, k.subspace);
        require_passed(c);
        CHECK(c.find("|G_K| = number of cosets")->detail == "|G_K| = 2");
    }
    {
        const auto h = fun("S3");
        const Subspace<Q> not_k = arrow_span(h, ids(h.groupoid, {"123"}));
        CHECK_THROWS_AS(characters_and_quotient(h, not_k), NotCertified);
    }
}

TEST_CASE("sub Hopf algebroid of coinvariants")
{
    const auto h = fun("C2uC2");
    const FiniteGroupoid& g = h.groupoid;
    const AdjointCoaction<Q> co = adjoint_coaction(h);
    const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"eps1"}))));
    const SubHopfAlgebroid<Q> sub = sub_hopf_algebroid(h, k.subspace);
    require_passed(sub.report);
    CHECK(sub.bialgebroid.dim() == 3);
}

TEST_CASE("pools over Q and the exhaustive check over F3")
{
    const auto h = fun("pair2");
    const Pool<Q> ideals = arrow_ideal_pool(h);
    const Pool<Q> subrings = block_subring_pool(h);
    CHECK(ideals.scanned == 16);
    CHECK(subrings.scanned == 4);
    CHECK_FALSE(ideals.members.empty());
    CHECK_FALSE(subrings.members.empty());
    const Certification q = exhaustive_subspace_check(h, ideals, subrings, 8);
    CHECK(q.checks().front().verdict == Verdict::Skipped);

    Fp::Scope scope(3);
    for (const std::string name : {"pair2", "C2", "C2uC2"}) {
        INFO(name);
        const auto hp = build_function_hopf_algebroid<Fp>(named_fixture(name).groupoid);
        const Pool<Fp> ip = arrow_ideal_pool(hp);
        const Pool<Fp> sp = block_subring_pool(hp);
        const Certification c = exhaustive_subspace_check(hp, ip, sp, 4);
        require_passed(c);
        for (const Check& ch : c.checks()) CHECK(ch.verdict == Verdict::Pass);
    }
    const auto hp = build_function_hopf_algebroid<Fp>(named_fixture("S3").groupoid);
    const Certification big = exhaustive_subspace_check(hp, arrow_ideal_pool(hp), block_subring_pool(hp), 4);
    CHECK(big.checks().front().verdict == Verdict::Skipped);
}

TEST_CASE("all subspaces of F_2^3 and F_3^2")
{
    bool truncated = false;
    {
        Fp::Scope scope(2);
        CHECK(all_subspaces(3, std::nullopt, truncated).size() == 16);
        CHECK_FALSE(truncated);
        CHECK(all_subspaces(3, 5, truncated).size() == 5);
        CHECK(truncated);
    }
    {
        Fp::Scope scope(3);
        CHECK(all_subspaces(2, std::nullopt, truncated).size() == 6);
    }
}

TEST_CASE("limits truncate the pools")
{
    const auto h = fun("pair2xC2");
    const Pool<Q> p = arrow_ideal_pool(h, 10);
    CHECK(p.truncated);
    CHECK(p.scanned == 10);
    const Pool<Q> b = block_subring_pool(h, std::nullopt);
    CHECK(b.scanned == 225);
    CHECK_FALSE(b.truncated);
}

TEST_CASE("purity agrees with injectivity for coinvariant inclusions")
{
    const auto h = fun("pair2xC2");
    const FiniteGroupoid& g = h.groupoid;
    const AdjointCoaction<Q> co = adjoint_coaction(h);
    const Coinvariants<Q> k = coinvariants(h, co, classify_ideal(h, arrow_span(h, ids(g, {"a", "a_eps", "ainv", "eps_ainv"}))));
    const auto emb = subalgebra(h.total(), k.subspace);
    REQUIRE(emb.has_value());
    const Certification c = purity_agreement(emb->inclusion, 20, 7);
    require_passed(c);
}

TEST_CASE("the whole story over F3")
{
    Fp::Scope scope(3);
    for (const std::string name : {"pair2xC2", "S3", "Z4"}) {
        INFO(name);
        const auto h = build_function_hopf_algebroid<Fp>(named_fixture(name).groupoid);
        require_passed(check_hopf_axioms(h));
        const AdjointCoaction<Fp> co = adjoint_coaction(h);
        require_passed(co.report);
        const TheoremB<Fp> t = theorem_B_bijection(h, co);
        require_passed(t.report);
    }
}
