#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hopfalgd/bialgebroid.hpp"

#include <functional>

using namespace hopfalgd;
using Q = Rational;

namespace {

// Arrows given by source, target and a composition table built from an
// explicit rule; used as an oracle independent of the groupoid module.
struct Arrows {
    Index objects = 0;
    std::vector<Index> src, tgt;
    std::vector<bool> identity;
    std::function<Index(Index, Index)> compose;  // compose(g2, g1) = g2 after g1, or -1
    std::function<Index(Index)> inverse;
};

template <class K> LeftBialgebroid<K> function_bialgebroid(const Arrows& g, bool flip_legs = false)
{
    const Index n = static_cast<Index>(g.src.size()), m = g.objects;
    Matrix<K> s = Matrix<K>::Zero(n, m), t = Matrix<K>::Zero(n, m), eps = Matrix<K>::Zero(m, n);
    for (Index a = 0; a < n; ++a) {
        s(a, g.src[static_cast<std::size_t>(a)]) = K(1);
        t(a, g.tgt[static_cast<std::size_t>(a)]) = K(1);
        if (g.identity[static_cast<std::size_t>(a)]) eps(g.src[static_cast<std::size_t>(a)], a) = K(1);
    }
    auto delta = [&](Index a) {
        Matrix<K> c = Matrix<K>::Zero(n, n);
        for (Index g1 = 0; g1 < n; ++g1)
            for (Index g2 = 0; g2 < n; ++g2)
                if (g.compose(g2, g1) == a) {
                    if (flip_legs) c(g2, g1) += K(1);
                    else c(g1, g2) += K(1);
                }
        return c;
    };
    return make_bialgebroid<K>(FinAlgebra<K>::diagonal(m), FinAlgebra<K>::diagonal(n), s, t, delta, eps);
}

// Pair groupoid on k objects: arrow i*k + j goes from i to j.
Arrows pair_groupoid(Index k)
{
    Arrows g;
    g.objects = k;
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
            g.src.push_back(i);
            g.tgt.push_back(j);
            g.identity.push_back(i == j);
        }
    g.compose = [k](Index g2, Index g1) { return g1 % k == g2 / k ? (g1 / k) * k + g2 % k : Index(-1); };
    g.inverse = [k](Index a) { return (a % k) * k + a / k; };
    return g;
}

// P2 x C2: arrow (i, j, c) has index (i*2 + j)*2 + c.
Arrows pair_times_c2()
{
    Arrows g;
    g.objects = 2;
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index c = 0; c < 2; ++c) {
                g.src.push_back(i);
                g.tgt.push_back(j);
                g.identity.push_back(i == j && c == 0);
            }
    g.compose = [](Index g2, Index g1) {
        const Index i1 = g1 / 4, j1 = (g1 / 2) % 2, c1 = g1 % 2;
        const Index i2 = g2 / 4, j2 = (g2 / 2) % 2, c2 = g2 % 2;
        return j1 == i2 ? (i1 * 2 + j2) * 2 + (c1 + c2) % 2 : Index(-1);
    };
    g.inverse = [](Index a) { return ((a / 2) % 2 * 2 + a / 4) * 2 + a % 2; };
    return g;
}

Arrows terminal()
{
    Arrows g;
    g.objects = 1;
    g.src = {0};
    g.tgt = {0};
    g.identity = {true};
    g.compose = [](Index, Index) { return Index(0); };
    g.inverse = [](Index) { return Index(0); };
    return g;
}

template <class K> Subspace<K> indicator_span(Index n, const std::vector<std::vector<Index>>& blocks)
{
    std::vector<Vector<K>> v;
    for (const auto& blk : blocks) {
        Vector<K> x = Vector<K>::Zero(n);
        for (Index a : blk) x(a) = K(1);
        v.push_back(x);
    }
    return Subspace<K>::span(n, v);
}

bool has_failure_with_anchor(const Certification& c, const std::string& anchor)
{
    for (const Check& ch : c.checks())
        if (ch.verdict == Verdict::Fail && ch.anchor == anchor) return true;
    return false;
}

}  // namespace

TEST_CASE("function algebra of the pair groupoid is a bialgebroid")
{
    const auto b = function_bialgebroid<Q>(pair_groupoid(2));
    CHECK(b.tensor.dim() == 8);  // composable pairs of P2
    const Certification c = verify_bialgebroid(b);
    CHECK(c.passed());
    CHECK(c.find("coassociative") != nullptr);
    CHECK(c.find("coproduct multiplicative") != nullptr);
}

TEST_CASE("pair groupoid over F3 and P3 over Q")
{
    {
        Fp::Scope scope(3);
        CHECK(verify_bialgebroid(function_bialgebroid<Fp>(pair_groupoid(2))).passed());
    }
    const auto b3 = function_bialgebroid<Q>(pair_groupoid(3));
    CHECK(b3.tensor.dim() == 27);
    CHECK(verify_bialgebroid(b3).passed());
}

TEST_CASE("swapping the coproduct legs is detected")
{
    const Certification c = verify_bialgebroid(function_bialgebroid<Q>(pair_groupoid(2), true));
    CHECK_FALSE(c.passed());
    CHECK(has_failure_with_anchor(c, "B4"));
    const Check* unital = c.find("coproduct unital");
    REQUIRE(unital != nullptr);
    CHECK(unital->verdict == Verdict::Fail);
    CHECK(c.find("counital")->verdict == Verdict::Fail);
}

TEST_CASE("broken counit is reported with witnesses")
{
    auto b = function_bialgebroid<Q>(pair_groupoid(2));
    b.counit(0, 0) = Q(2);
    const Certification c = verify_bialgebroid(b);
    CHECK_FALSE(c.passed());
    const Check* cu = c.find("counital");
    REQUIRE(cu != nullptr);
    CHECK(cu->verdict == Verdict::Fail);
}

TEST_CASE("terminal groupoid: beta is the identity")
{
    const auto b = function_bialgebroid<Q>(terminal());
    CHECK(verify_bialgebroid(b).passed());
    const auto hg = hopf_galois(b);
    REQUIRE(hg.has_value());
    CHECK(hg->beta == identity_matrix<Q>(1));
    CHECK(verify_hopf_galois(b, *hg).passed());
}

TEST_CASE("translation map of the pair groupoid matches the antipode formula")
{
    const Arrows g = pair_groupoid(2);
    const auto b = function_bialgebroid<Q>(g);
    const auto hg = hopf_galois(b);
    REQUIRE(hg.has_value());
    CHECK(verify_hopf_galois(b, *hg).passed());
    const Index n = b.dim();
    for (Index a = 0; a < n; ++a) {
        Matrix<Q> c = Matrix<Q>::Zero(n, n);
        for (Index g1 = 0; g1 < n; ++g1)
            for (Index g2 = 0; g2 < n; ++g2)
                if (g.compose(g2, g1) == a) c(g1, g.inverse(g2)) += 1;
        CHECK(Vector<Q>(hg->gamma.col(a)) == hg->op_tensor.project(c));
    }
}

TEST_CASE("monoid bialgebra of {1, z} with z idempotent is not left Hopf")
{
    // basis 1, z; both grouplike
    std::vector<std::vector<Vector<Q>>> c{{unit_vector<Q>(2, 0), unit_vector<Q>(2, 1)},
                                          {unit_vector<Q>(2, 1), unit_vector<Q>(2, 1)}};
    const FinAlgebra<Q> h = FinAlgebra<Q>::from_structure_constants(c, unit_vector<Q>(2, 0));
    const FinAlgebra<Q> k = FinAlgebra<Q>::diagonal(1);
    Matrix<Q> s = Matrix<Q>::Zero(2, 1);
    s(0, 0) = 1;
    Matrix<Q> eps(1, 2);
    eps << 1, 1;
    const auto b = make_bialgebroid<Q>(
        k, h, s, s,
        [](Index i) {
            Matrix<Q> m = Matrix<Q>::Zero(2, 2);
            m(i, i) = 1;
            return m;
        },
        eps);
    CHECK(verify_bialgebroid(b).passed());
    // beta(1(x)1, 1(x)z, z(x)1, z(x)z) = (1(x)1, 1(x)z, z(x)z, z(x)z): determinant 0
    CHECK_FALSE(hopf_galois(b).has_value());
}

TEST_CASE("Psi of the zero ideal is the span of t(A)")
{
    const auto b = function_bialgebroid<Q>(pair_groupoid(2));
    const IdealCoideal<Q> zero = certify_ideal_coideal(b, Subspace<Q>(b.dim()));
    REQUIRE(zero.certified());
    const CoidealSubring<Q> psi = psi_coinvariants(b, zero);
    CHECK(psi.certified());
    CHECK(psi.subspace.dim() == 2);
    CHECK(psi.subspace == image<Q>(b.t));
}

TEST_CASE("Phi(H) is the augmentation ideal and Phi(t(A)) vanishes")
{
    const auto b = function_bialgebroid<Q>(pair_groupoid(2));
    const CoidealSubring<Q> whole = certify_coideal_subring(b, Subspace<Q>::full(b.dim()));
    REQUIRE(whole.certified());
    const IdealCoideal<Q> hplus = phi_ideal(b, whole);
    CHECK(hplus.certified());
    CHECK(hplus.subspace == kernel<Q>(b.counit));
    CHECK(hplus.subspace.dim() == 2);

    const CoidealSubring<Q> ta = certify_coideal_subring(b, image<Q>(b.t));
    REQUIRE(ta.certified());
    CHECK(phi_ideal(b, ta).subspace.dim() == 0);
}

TEST_CASE("certification rejects non-ideals and non-subrings")
{
    const auto b = function_bialgebroid<Q>(pair_groupoid(2));
    // f_{(0,0)} is not killed by the counit
    const IdealCoideal<Q> bad = certify_ideal_coideal(b, indicator_span<Q>(4, {{0}}));
    CHECK(bad.left_ideal);
    CHECK_FALSE(bad.two_sided_coideal);
    CHECK_THROWS_AS(xi_correspondence(b, bad), NotCertified);
    CHECK_THROWS_AS(psi_coinvariants(b, bad), NotCertified);

    // s(A) does not contain t(A)
    const CoidealSubring<Q> sa = certify_coideal_subring(b, image<Q>(b.s));
    CHECK(sa.subalgebra);
    CHECK_FALSE(sa.contains_t);
    CHECK_THROWS_AS(phi_ideal(b, sa), NotCertified);
}

TEST_CASE("P2 x C2: orbit sums of the isotropy subgroupoid")
{
    const auto b = function_bialgebroid<Q>(pair_times_c2());
    REQUIRE(verify_bialgebroid(b).passed());
    const auto hg = hopf_galois(b);
    REQUIRE(hg.has_value());
    REQUIRE(verify_hopf_galois(b, *hg).passed());

    // orbits of the isotropy bundle acting on the left are the fibres over (i, j)
    const Subspace<Q> orbit = indicator_span<Q>(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    const CoidealSubring<Q> bo = certify_coideal_subring(b, orbit);
    CHECK(bo.certified());
    CHECK(bo.subspace.dim() == 4);

    const IdealCoideal<Q> ideal = phi_ideal(b, bo);
    CHECK(ideal.certified());
    // H B^+ is the ideal of functions vanishing on the isotropy arrows
    CHECK(ideal.subspace == indicator_span<Q>(8, {{2}, {3}, {4}, {5}}));
    CHECK(psi_subspace(b, ideal.subspace) == orbit);

    const QuotientCoring<Q> qc = xi_correspondence(b, ideal);
    CHECK(qc.projection.rows() == 4);
    CHECK(kernel<Q>(qc.projection) == ideal.subspace);

    const Certification g = gamma_stability_and_xi(b, *hg, orbit);
    CHECK(g.passed());
    const Check* xi = g.find("xi bijective");
    REQUIRE(xi != nullptr);
    CHECK(xi->detail == "dim 16 -> 16, rank 16");
    const Check* bij = g.find("B = Psi Phi(B)");
    REQUIRE(bij != nullptr);
    CHECK(bij->verdict == Verdict::Pass);
}

TEST_CASE("Galois connection laws on a small pool")
{
    const auto b = function_bialgebroid<Q>(pair_times_c2());
    const Index n = b.dim();
    const Subspace<Q> orbit = indicator_span<Q>(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    std::vector<Subspace<Q>> subrings{image<Q>(b.t), orbit, Subspace<Q>::full(n)};
    std::vector<Subspace<Q>> ideals{Subspace<Q>(n), kernel<Q>(b.counit), phi_subspace(b, orbit)};
    for (const auto& i : ideals) REQUIRE(certify_ideal_coideal(b, i).certified());
    for (const auto& s : subrings) REQUIRE(certify_coideal_subring(b, s).certified());
    const Certification c = galois_connection_check(b, ideals, subrings);
    CHECK(c.passed());
    CHECK(c.find("Phi(B) in I iff B in Psi(I)") != nullptr);
}

TEST_CASE("t(A) is gamma-stable and xi is the Galois map")
{
    const auto b = function_bialgebroid<Q>(pair_groupoid(2));
    const auto hg = hopf_galois(b);
    REQUIRE(hg.has_value());
    const Certification g = gamma_stability_and_xi(b, *hg, image<Q>(b.t));
    CHECK(g.passed());
    const Check* xi = g.find("xi bijective");
    REQUIRE(xi != nullptr);
    CHECK(xi->detail == "dim 8 -> 8, rank 8");
}
