#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hopfalgd/finalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace hopfalgd;
using Q = Rational;

namespace {

// prod(i, j) returns the coordinate vector of e_i e_j.
template <class K>
FinAlgebra<K> algebra_from(Index n, const std::function<Vector<K>(Index, Index)>& prod, Vector<K> unit)
{
    std::vector<std::vector<Vector<K>>> c(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) c[static_cast<std::size_t>(i)].push_back(prod(i, j));
    return FinAlgebra<K>::from_structure_constants(c, std::move(unit));
}

// k[t]/(t^n) in the monomial basis.
template <class K> FinAlgebra<K> truncated(Index n)
{
    return algebra_from<K>(
        n, [n](Index i, Index j) { return i + j < n ? unit_vector<K>(n, i + j) : Vector<K>(Vector<K>::Zero(n)); },
        unit_vector<K>(n, 0));
}

// k[x]/(x^2 - c) in the basis 1, x.
template <class K> FinAlgebra<K> quadratic(long c)
{
    return algebra_from<K>(
        2,
        [c](Index i, Index j) {
            Vector<K> v = Vector<K>::Zero(2);
            if (i + j < 2) v(i + j) = K(1);
            else v(0) = K(c);
            return v;
        },
        unit_vector<K>(2, 0));
}

// Upper triangular 2x2 matrices, basis E11, E12, E22.
FinAlgebra<Q> upper_triangular()
{
    const std::pair<int, int> units[3] = {{0, 0}, {0, 1}, {1, 1}};
    return algebra_from<Q>(
        3,
        [&](Index i, Index j) {
            Vector<Q> v = Vector<Q>::Zero(3);
            if (units[i].second == units[j].first)
                for (Index k = 0; k < 3; ++k)
                    if (units[k].first == units[i].first && units[k].second == units[j].second) v(k) = 1;
            return v;
        },
        Vector<Q>((Vector<Q>(3) << 1, 0, 1).finished()));
}

// k[x,y]/(x,y)^2, basis 1, x, y.
FinAlgebra<Q> square_zero_plane()
{
    return algebra_from<Q>(
        3, [](Index i, Index j) { return i == 0 ? unit_vector<Q>(3, j) : j == 0 ? unit_vector<Q>(3, i) : Vector<Q>(Vector<Q>::Zero(3)); },
        unit_vector<Q>(3, 0));
}

// Associativity failures counted straight from structure constants.
template <class K> std::size_t associativity_defects(const std::vector<std::vector<Vector<K>>>& c)
{
    const std::size_t n = c.size();
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector<K> lhs = Vector<K>::Zero(static_cast<Index>(n)), rhs = lhs;
                for (std::size_t m = 0; m < n; ++m) {
                    lhs += c[i][j](static_cast<Index>(m)) * c[m][k];
                    rhs += c[j][k](static_cast<Index>(m)) * c[i][m];
                }
                if (lhs != rhs) ++bad;
            }
    return bad;
}

// Function algebra on `arrows`, with s, t : k^objects -> k^arrows pulled
// back along source and target.
struct ArrowData {
    Index objects;
    std::vector<std::pair<Index, Index>> arrows;  // (source, target)
};

Matrix<Q> pullback(const ArrowData& d, bool target)
{
    Matrix<Q> m = Matrix<Q>::Zero(static_cast<Index>(d.arrows.size()), d.objects);
    for (std::size_t g = 0; g < d.arrows.size(); ++g)
        m(static_cast<Index>(g), target ? d.arrows[g].second : d.arrows[g].first) = 1;
    return m;
}

std::vector<Matrix<Q>> mult_by_columns(const FinAlgebra<Q>& h, const Matrix<Q>& m)
{
    std::vector<Matrix<Q>> out;
    for (Index a = 0; a < m.cols(); ++a) out.push_back(h.left_multiplication(m.col(a)));
    return out;
}

TensorOverA<Q> arrow_tensor(const ArrowData& d)
{
    const Index n = static_cast<Index>(d.arrows.size());
    const FinAlgebra<Q> h = FinAlgebra<Q>::diagonal(n);
    const FinAlgebra<Q> a = FinAlgebra<Q>::diagonal(d.objects);
    BimoduleStructure<Q> left{a, n, mult_by_columns(h, pullback(d, false)), mult_by_columns(h, pullback(d, true))};
    BimoduleStructure<Q> right{a, n, mult_by_columns(h, pullback(d, false)), mult_by_columns(h, pullback(d, true))};
    return tensor_over_A(left, right);
}

ArrowData random_arrows(std::mt19937& rng, Index objects, Index arrows)
{
    std::uniform_int_distribution<Index> obj(0, objects - 1);
    ArrowData d{objects, {}};
    for (Index g = 0; g < arrows; ++g) d.arrows.emplace_back(obj(rng), obj(rng));
    return d;
}

AlgMorphism<Q> block_inclusion(const std::vector<Index>& block_of, Index blocks)
{
    const Index n = static_cast<Index>(block_of.size());
    Matrix<Q> m = Matrix<Q>::Zero(n, blocks);
    for (Index g = 0; g < n; ++g) m(g, block_of[static_cast<std::size_t>(g)]) = 1;
    return {FinAlgebra<Q>::diagonal(blocks), FinAlgebra<Q>::diagonal(n), m};
}

}  // namespace

TEST_CASE("check_algebra on diagonal and dual-number algebras")
{
    for (Index n : {1, 2, 5}) CHECK(check_algebra(FinAlgebra<Q>::diagonal(n)).passed());
    CHECK(check_algebra(truncated<Q>(2)).passed());
    CHECK(check_algebra(truncated<Q>(4)).passed());
    CHECK(check_algebra(upper_triangular()).passed());
    Fp::Scope scope(3);
    CHECK(check_algebra(FinAlgebra<Fp>::diagonal(3)).passed());
}

TEST_CASE("perturbed structure constants produce associativity witnesses")
{
    std::vector<std::vector<Vector<Q>>> c(2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) c[static_cast<std::size_t>(i)].push_back(truncated<Q>(2).basis_product(i, j));
    c[1][1] = unit_vector<Q>(2, 1);  // x*x = x is still associative
    CHECK(associativity_defects(c) == 0);
    c[1][0](0) = 1;  // x*1 = 1 + x
    const std::size_t expected = associativity_defects(c);
    REQUIRE(expected > 0);
    const Certification cert = check_algebra(FinAlgebra<Q>::from_structure_constants(c, unit_vector<Q>(2, 0)));
    CHECK_FALSE(cert.passed());
    const Check* assoc = cert.find("associativity");
    REQUIRE(assoc != nullptr);
    CHECK(assoc->witness_count == expected);
    CHECK_FALSE(assoc->witnesses.empty());
}

TEST_CASE("morphisms and bimodules")
{
    const FinAlgebra<Q> b = square_zero_plane(), h = truncated<Q>(4);
    Matrix<Q> iota = Matrix<Q>::Zero(4, 3);
    iota(0, 0) = iota(2, 1) = iota(3, 2) = 1;
    CHECK(check_morphism(AlgMorphism<Q>{b, h, iota}).passed());
    Matrix<Q> bad = iota;
    bad(1, 1) = 1;  // x -> t + t^2 does not square to zero
    CHECK_FALSE(check_morphism(AlgMorphism<Q>{b, h, bad}).passed());
    CHECK(check_bimodule(regular_bimodule(upper_triangular())).passed());
    BimoduleStructure<Q> flipped = regular_bimodule(upper_triangular());
    std::swap(flipped.left_action, flipped.right_action);
    CHECK_FALSE(check_bimodule(flipped).passed());
}

TEST_CASE("tensor over A: regular bimodules give A")
{
    for (const FinAlgebra<Q>& a : {truncated<Q>(3), upper_triangular(), FinAlgebra<Q>::diagonal(4), quadratic<Q>(5)}) {
        const BimoduleStructure<Q> r = regular_bimodule(a);
        const TensorOverA<Q> t = tensor_over_A(r, r);
        CHECK(t.dim() == a.dim());
        CHECK(t.dim() == t.ambient_dim() - t.relations().dim());
        CHECK(all_zero<Q>(Matrix<Q>(t.quotient_projection() * t.relations().inclusion())));
    }
}

TEST_CASE("tensor over A: base mismatch")
{
    CHECK_THROWS_AS(tensor_over_A(regular_bimodule(truncated<Q>(2)), regular_bimodule(truncated<Q>(3))), BaseMismatch);
}

TEST_CASE("tensor over objects counts composable pairs")
{
    ArrowData z2{1, {{0, 0}, {0, 0}}};
    CHECK(arrow_tensor(z2).dim() == 4);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ArrowData d = random_arrows(rng, 1 + trial % 4, 2 + trial % 6);
        Index pairs = 0;
        for (const auto& g : d.arrows)
            for (const auto& h : d.arrows)
                if (g.second == h.first) ++pairs;
        CHECK(arrow_tensor(d).dim() == pairs);
    }
}

TEST_CASE("tensor dimension is invariant under basis permutation")
{
    std::mt19937 rng(5);
    const FinAlgebra<Q> a = upper_triangular();
    const BimoduleStructure<Q> r = regular_bimodule(a);
    const Index base = tensor_over_A(r, r).dim();
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Index> perm(3);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix<Q> p = Matrix<Q>::Zero(3, 3);
        for (Index i = 0; i < 3; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1;
        const Matrix<Q> pinv = p.transpose();
        std::vector<Matrix<Q>> left;
        for (Index i = 0; i < 3; ++i) left.push_back(pinv * a.left_multiplication(p.col(i)) * p);
        const FinAlgebra<Q> b(left, pinv * a.unit());
        REQUIRE(check_algebra(b).passed());
        const BimoduleStructure<Q> rb = regular_bimodule(b);
        CHECK(tensor_over_A(rb, rb).dim() == base);
    }
}

TEST_CASE("takeuchi subspace")
{
    SUBCASE("trivial base gives the full tensor space")
    {
        const FinAlgebra<Q> k = FinAlgebra<Q>::diagonal(1);
        const FinAlgebra<Q> h = truncated<Q>(3);
        std::vector<Matrix<Q>> id{identity_matrix<Q>(3)};
        BimoduleStructure<Q> m{k, 3, id, id};
        const TensorOverA<Q> t = tensor_over_A(m, m);
        CHECK(t.dim() == 9);
        CHECK(takeuchi_subspace(t, id, id).dim() == 9);
    }
    SUBCASE("function algebra on arrows: full space")
    {
        const ArrowData d{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
        const TensorOverA<Q> t = arrow_tensor(d);
        const FinAlgebra<Q> h = FinAlgebra<Q>::diagonal(4);
        std::vector<Matrix<Q>> lres, rres;
        for (Index a = 0; a < 2; ++a) {
            lres.push_back(h.right_multiplication(pullback(d, true).col(a)));
            rres.push_back(h.right_multiplication(pullback(d, false).col(a)));
        }
        CHECK(takeuchi_subspace(t, lres, rres).dim() == t.dim());
    }
    SUBCASE("regular bimodule: commutative A gives A (x) 1")
    {
        const FinAlgebra<Q> a = truncated<Q>(2);
        const BimoduleStructure<Q> r = regular_bimodule(a);
        const TensorOverA<Q> t = tensor_over_A(r, r);
        const Subspace<Q> tk = takeuchi_subspace(t, r.right_action, r.right_action);
        std::vector<Vector<Q>> img;
        for (Index i = 0; i < 2; ++i) img.push_back(t.project_pure(unit_vector<Q>(2, i), a.unit()));
        CHECK(tk == Subspace<Q>::span(t.dim(), img));
        CHECK(tk.dim() == 2);
    }
}

TEST_CASE("subalgebras and quotients")
{
    const FinAlgebra<Q> h = truncated<Q>(4);
    const Subspace<Q> even = Subspace<Q>::span(4, {unit_vector<Q>(4, 0), unit_vector<Q>(4, 2)});
    auto sub = subalgebra(h, even);
    REQUIRE(sub.has_value());
    CHECK(check_algebra(sub->algebra).passed());
    CHECK(check_morphism(sub->inclusion).passed());
    CHECK_FALSE(subalgebra(h, Subspace<Q>::span(4, {unit_vector<Q>(4, 0), unit_vector<Q>(4, 1)})).has_value());
    const Subspace<Q> ideal = Subspace<Q>::span(4, {unit_vector<Q>(4, 2), unit_vector<Q>(4, 3)});
    const QuotientAlgebra<Q> quo = quotient_algebra(h, ideal);
    CHECK(quo.algebra.dim() == 2);
    CHECK(check_algebra(quo.algebra).passed());
    CHECK(quo.algebra == truncated<Q>(2));
}

TEST_CASE("purity: identity and diagonal embedding")
{
    const FinAlgebra<Q> h = upper_triangular();
    const PurityVerdict<Q> id = purity_check(AlgMorphism<Q>{h, h, identity_matrix<Q>(3)});
    REQUIRE(id.pure);
    CHECK(*id.retraction == identity_matrix<Q>(3));

    const AlgMorphism<Q> diag{FinAlgebra<Q>::diagonal(1), FinAlgebra<Q>::diagonal(2), Matrix<Q>::Ones(2, 1)};
    const PurityVerdict<Q> d = purity_check(diag);
    REQUIRE(d.pure);
    CHECK(*d.retraction * diag.matrix == identity_matrix<Q>(1));
}

TEST_CASE("purity: block inclusions of function algebras")
{
    const AlgMorphism<Q> iota = block_inclusion({0, 1, 0, 2, 1, 2}, 3);
    REQUIRE(check_morphism(iota).passed());
    const PurityVerdict<Q> v = purity_check(iota);
    REQUIRE(v.pure);
    const Matrix<Q>& r = *v.retraction;
    CHECK(r * iota.matrix == identity_matrix<Q>(3));
    for (Index j = 0; j < 3; ++j)
        CHECK(r * iota.target.right_multiplication(iota.matrix.col(j)) ==
              iota.source.right_multiplication(unit_vector<Q>(3, j)) * r);
    CHECK(faithfully_flat_check(iota));
    for (const LeftModule<Q>& m : module_pool(iota.source, 12, 7)) CHECK(unit_map_injective(iota, m));
    CHECK(extension_equalizer(iota) == image<Q>(iota.matrix));
}

TEST_CASE("purity: a non-pure extension")
{
    const FinAlgebra<Q> b = square_zero_plane(), h = truncated<Q>(4);
    Matrix<Q> m = Matrix<Q>::Zero(4, 3);
    m(0, 0) = m(2, 1) = m(3, 2) = 1;
    const AlgMorphism<Q> iota{b, h, m};
    REQUIRE(check_morphism(iota).passed());
    CHECK_FALSE(purity_check(iota).pure);
    // M = B^2 / B(x e1 - y e2): 1 (x) y e1 = t (t^2 e1 - t^3 e2) vanishes in H (x)_B M.
    Vector<Q> rel = Vector<Q>::Zero(6);
    rel(1) = 1;
    rel(5) = -1;
    const LeftModule<Q> witness = quotient_module<Q>(b, 2, {rel});
    CHECK(witness.dim == 5);
    CHECK_FALSE(unit_map_injective(iota, witness));
    CHECK_THROWS_AS(faithfully_flat_check(iota), UnsupportedBase);
}

TEST_CASE("purity: non-injective map")
{
    Matrix<Q> proj(1, 2);
    proj << 1, 0;
    const AlgMorphism<Q> p{FinAlgebra<Q>::diagonal(2), FinAlgebra<Q>::diagonal(1), proj};
    REQUIRE(check_morphism(p).passed());
    CHECK_THROWS_AS(purity_check(p), NotMono);
    CHECK_FALSE(faithfully_flat_check(p));
    const FinAlgebra<Q> h = FinAlgebra<Q>::diagonal(3);
    CHECK(faithfully_flat_check(AlgMorphism<Q>{h, h, identity_matrix<Q>(3)}));
}

TEST_CASE("primitive idempotents and characters")
{
    auto d = primitive_idempotents(FinAlgebra<Q>::diagonal(3));
    REQUIRE(d.has_value());
    for (Index i = 0; i < 3; ++i) CHECK((*d)[static_cast<std::size_t>(i)] == unit_vector<Q>(3, i));

    CHECK_FALSE(primitive_idempotents(truncated<Q>(2)).has_value());
    CHECK_FALSE(primitive_idempotents(quadratic<Q>(2)).has_value());
    CHECK_FALSE(primitive_idempotents(upper_triangular()).has_value());

    auto split = primitive_idempotents(quadratic<Q>(1));
    REQUIRE(split.has_value());
    REQUIRE(split->size() == 2);
    const FinAlgebra<Q> a = quadratic<Q>(1);
    for (const Vector<Q>& e : *split) {
        CHECK(a.multiply(e, e) == e);
        CHECK(abs(e(0)) == make_rational(1, 2));
    }
    const auto chars = characters(a);
    REQUIRE(chars.size() == 2);
    for (const Vector<Q>& chi : chars) {
        CHECK(chi(0) == 1);
        CHECK(chi(1) * chi(1) == 1);
    }
    CHECK_THROWS_AS(characters(truncated<Q>(2)), UnsupportedBase);

    // x^2 - 4 splits over Q with roots 2, -2
    auto four = primitive_idempotents(quadratic<Q>(4));
    CHECK(four.has_value());
}

TEST_CASE("primitive idempotents over prime fields")
{
    {
        Fp::Scope scope(3);
        CHECK(primitive_idempotents(quadratic<Fp>(1)).has_value());
        CHECK_FALSE(primitive_idempotents(quadratic<Fp>(2)).has_value());  // 2 is not a square mod 3
    }
    {
        Fp::Scope scope(2);
        CHECK_FALSE(primitive_idempotents(quadratic<Fp>(1)).has_value());  // (x+1)^2
    }
    {
        Fp::Scope scope(7);
        CHECK(primitive_idempotents(quadratic<Fp>(2)).has_value());  // 3^2 = 2 mod 7
        CHECK(characters(quadratic<Fp>(2)).size() == 2);
    }
}

TEST_CASE("equalizer of k -> k x k and module pool determinism")
{
    const AlgMorphism<Q> diag{FinAlgebra<Q>::diagonal(1), FinAlgebra<Q>::diagonal(2), Matrix<Q>::Ones(2, 1)};
    CHECK(extension_equalizer(diag) == image<Q>(diag.matrix));
    const FinAlgebra<Q> b = square_zero_plane();
    const auto p1 = module_pool(b, 10, 42), p2 = module_pool(b, 10, 42);
    REQUIRE(p1.size() == p2.size());
    CHECK(p1.size() == 10);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].dim == p2[i].dim);
        CHECK(p1[i].action == p2[i].action);
    }
}
