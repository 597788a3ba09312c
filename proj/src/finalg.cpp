#include "hopfalgd/finalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <type_traits>

namespace hopfalgd {

namespace {

std::string triple(Index i, Index j, Index k)
{
    std::ostringstream os;
    os << '(' << i << ',' << j << ',' << k << ')';
    return os.str();
}

std::string pair(Index i, Index j)
{
    std::ostringstream os;
    os << '(' << i << ',' << j << ')';
    return os.str();
}

template <class K> using ColumnEntries = std::vector<std::vector<std::pair<Index, K>>>;

template <class K> ColumnEntries<K> column_entries(const Matrix<K>& m)
{
    ColumnEntries<K> cols(static_cast<std::size_t>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) cols[static_cast<std::size_t>(j)].emplace_back(i, m(i, j));
    return cols;
}

// Monic minimal polynomial, coefficients from degree 0 upwards.
template <class K> std::vector<K> minimal_polynomial(const Matrix<K>& m)
{
    const Index d = m.rows();
    std::vector<Matrix<K>> powers{identity_matrix<K>(d)};
    for (Index k = 1; k <= d; ++k) {
        powers.push_back(m * powers.back());
        Matrix<K> sys(d * d, k);
        Vector<K> rhs(d * d);
        for (Index c = 0; c < k; ++c)
            for (Index i = 0; i < d; ++i)
                for (Index j = 0; j < d; ++j) sys(i * d + j, c) = powers[static_cast<std::size_t>(c)](i, j);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) rhs(i * d + j) = powers.back()(i, j);
        if (auto c = solve<K>(sys, rhs)) {
            std::vector<K> poly;
            for (Index i = 0; i < k; ++i) poly.push_back(-(*c)(i));
            poly.push_back(K(1));
            return poly;
        }
    }
    throw std::logic_error("minimal polynomial not found");
}

template <class K> K evaluate(const std::vector<K>& poly, const K& x)
{
    K acc(0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<long long> divisors(long long n)
{
    if (n > 1000000000000LL) throw UnsupportedBase("root search: coefficient too large");
    std::vector<long long> d;
    for (long long q = 1; q * q <= n; ++q) {
        if (n % q) continue;
        d.push_back(q);
        if (q != n / q) d.push_back(n / q);
    }
    return d;
}

long long to_int64(const boost::multiprecision::mpz_int& z)
{
    if (boost::multiprecision::abs(z) > boost::multiprecision::mpz_int(1000000000000LL))
        throw UnsupportedBase("root search: coefficient too large");
    return z.convert_to<long long>();
}

// Distinct roots of a polynomial in the ground field.
template <class K> std::vector<K> field_roots(std::vector<K> poly)
{
    std::vector<K> roots;
    if constexpr (std::is_same_v<K, Fp>) {
        const std::uint64_t p = Fp::current_modulus();
        if (p > (1u << 20)) throw UnsupportedBase("root search: prime field too large");
        for (std::uint64_t x = 0; x < p; ++x)
            if (is_zero(evaluate(poly, Fp(x, p)))) roots.push_back(Fp(x, p));
    }
    else {
        std::vector<K> work = poly;
        if (is_zero(work.front())) {
            roots.push_back(K(0));
            while (work.size() > 1 && is_zero(work.front())) work.erase(work.begin());
        }
        if (work.size() > 1) {
            long long scale = 1;
            for (const K& c : work) {
                const long long den = to_int64(boost::multiprecision::denominator(c));
                scale = std::lcm(scale, den);
                if (scale > 1000000000000LL) throw UnsupportedBase("root search: coefficient too large");
            }
            const long long a0 = to_int64(boost::multiprecision::numerator(work.front() * K(scale)));
            const long long an = to_int64(boost::multiprecision::numerator(work.back() * K(scale)));
            std::set<K> found;
            for (long long u : divisors(a0 < 0 ? -a0 : a0))
                for (long long v : divisors(an < 0 ? -an : an))
                    for (long long sgn : {1LL, -1LL}) {
                        const K x = make_rational(sgn * u, v);
                        if (is_zero(evaluate(work, x))) found.insert(x);
                    }
            roots.insert(roots.end(), found.begin(), found.end());
        }
    }
    return roots;
}

template <class K> Index first_nonzero(const Vector<K>& v)
{
    for (Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return i;
    return v.size();
}

}  // namespace

// ------------------------------------------------------------- FinAlgebra

template <class K>
FinAlgebra<K>::FinAlgebra(std::vector<Matrix<K>> left_mult, Vector<K> unit) : left_(std::move(left_mult)), unit_(std::move(unit))
{
    const Index n = dim();
    if (unit_.size() != n) throw std::invalid_argument("FinAlgebra: unit length");
    for (const Matrix<K>& m : left_)
        if (m.rows() != n || m.cols() != n) throw std::invalid_argument("FinAlgebra: structure constant shape");
}

template <class K>
FinAlgebra<K> FinAlgebra<K>::from_structure_constants(const std::vector<std::vector<Vector<K>>>& c, Vector<K> unit)
{
    const Index n = static_cast<Index>(c.size());
    std::vector<Matrix<K>> left;
    for (Index i = 0; i < n; ++i) {
        Matrix<K> l(n, n);
        if (static_cast<Index>(c[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("FinAlgebra: structure constant shape");
        for (Index j = 0; j < n; ++j) l.col(j) = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        left.push_back(std::move(l));
    }
    return FinAlgebra(std::move(left), std::move(unit));
}

template <class K> FinAlgebra<K> FinAlgebra<K>::diagonal(Index n)
{
    std::vector<Matrix<K>> left;
    for (Index i = 0; i < n; ++i) {
        Matrix<K> l = Matrix<K>::Zero(n, n);
        l(i, i) = K(1);
        left.push_back(std::move(l));
    }
    return FinAlgebra(std::move(left), Vector<K>::Constant(n, K(1)));
}

template <class K> Matrix<K> FinAlgebra<K>::left_multiplication(const Vector<K>& x) const
{
    Matrix<K> m = Matrix<K>::Zero(dim(), dim());
    for (Index i = 0; i < dim(); ++i)
        if (!is_zero(x(i))) m += x(i) * left_basis(i);
    return m;
}

template <class K> Matrix<K> FinAlgebra<K>::right_multiplication(const Vector<K>& y) const
{
    Matrix<K> m(dim(), dim());
    for (Index j = 0; j < dim(); ++j) m.col(j) = left_basis(j) * y;
    return m;
}

template <class K> Vector<K> FinAlgebra<K>::multiply(const Vector<K>& x, const Vector<K>& y) const
{
    return left_multiplication(x) * y;
}

template <class K> bool FinAlgebra<K>::is_commutative() const
{
    for (Index i = 0; i < dim(); ++i)
        for (Index j = i + 1; j < dim(); ++j)
            if (basis_product(i, j) != basis_product(j, i)) return false;
    return true;
}

template <class K> FinAlgebra<K> FinAlgebra<K>::opposite() const
{
    std::vector<Matrix<K>> left;
    for (Index i = 0; i < dim(); ++i) {
        Matrix<K> l(dim(), dim());
        for (Index j = 0; j < dim(); ++j) l.col(j) = basis_product(j, i);
        left.push_back(std::move(l));
    }
    return FinAlgebra(std::move(left), unit_);
}

// ---------------------------------------------------------- certification

template <class K> Certification check_algebra(const FinAlgebra<K>& alg)
{
    Certification cert;
    const Index n = alg.dim();
    Check& assoc = cert.open("associativity", "algebra");
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const Matrix<K> lhs = alg.left_multiplication(alg.basis_product(i, j));
            const Matrix<K> rhs = alg.left_basis(i) * alg.left_basis(j);
            for (Index k = 0; k < n; ++k)
                if (lhs.col(k) != rhs.col(k)) cert.fail(assoc, triple(i, j, k));
        }
    Check& unit = cert.open("unit", "algebra");
    const Matrix<K> lu = alg.left_multiplication(alg.unit());
    const Matrix<K> ru = alg.right_multiplication(alg.unit());
    for (Index k = 0; k < n; ++k)
        if (lu.col(k) != unit_vector<K>(n, k) || ru.col(k) != unit_vector<K>(n, k))
            cert.fail(unit, std::to_string(k));
    return cert;
}

template <class K> Certification check_morphism(const AlgMorphism<K>& f)
{
    Certification cert;
    Check& mult = cert.open("multiplicative", "morphism");
    const Index n = f.source.dim();
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (f(f.source.basis_product(i, j)) != f.target.multiply(f.matrix.col(i), f.matrix.col(j)))
                cert.fail(mult, pair(i, j));
    cert.add("unital", "morphism", f(f.source.unit()) == f.target.unit());
    return cert;
}

template <class K> Certification check_bimodule(const BimoduleStructure<K>& m)
{
    Certification cert;
    const FinAlgebra<K>& a = m.algebra;
    auto combine = [&](const std::vector<Matrix<K>>& act, const Vector<K>& x) {
        Matrix<K> r = Matrix<K>::Zero(m.carrier_dim, m.carrier_dim);
        for (Index i = 0; i < a.dim(); ++i)
            if (!is_zero(x(i))) r += x(i) * act[static_cast<std::size_t>(i)];
        return r;
    };
    const Matrix<K> id = identity_matrix<K>(m.carrier_dim);
    cert.add("left unital", "bimodule", combine(m.left_action, a.unit()) == id);
    cert.add("right unital", "bimodule", combine(m.right_action, a.unit()) == id);
    Check& la = cert.open("left associative", "bimodule");
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            if (combine(m.left_action, a.basis_product(i, j)) !=
                m.left_action[static_cast<std::size_t>(i)] * m.left_action[static_cast<std::size_t>(j)])
                cert.fail(la, pair(i, j));
    Check& ra = cert.open("right associative", "bimodule");
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            if (combine(m.right_action, a.basis_product(i, j)) !=
                m.right_action[static_cast<std::size_t>(j)] * m.right_action[static_cast<std::size_t>(i)])
                cert.fail(ra, pair(i, j));
    Check& cm = cert.open("actions commute", "bimodule");
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            if (m.left_action[static_cast<std::size_t>(i)] * m.right_action[static_cast<std::size_t>(j)] !=
                m.right_action[static_cast<std::size_t>(j)] * m.left_action[static_cast<std::size_t>(i)])
                cert.fail(cm, pair(i, j));
    return cert;
}

// ----------------------------------------------------------------- tensors

template <class K>
RelationQuotient<K> balanced_quotient(const std::vector<Index>& dims, const std::vector<Balance<K>>& balances)
{
    Index total = 1;
    for (Index d : dims) total *= d;
    std::vector<Index> stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) stride[k - 1] = stride[k] * dims[k];

    SparseEchelon<K> rel(total);
    for (const Balance<K>& b : balances) {
        if (b.position + 1 >= dims.size()) throw std::invalid_argument("balance position out of range");
        if (b.right_on_left.size() != b.left_on_right.size()) throw BaseMismatch("balance generator counts differ");
        const std::size_t p = b.position;
        for (std::size_t a = 0; a < b.right_on_left.size(); ++a) {
            const ColumnEntries<K> rc = column_entries(b.right_on_left[a]);
            const ColumnEntries<K> lc = column_entries(b.left_on_right[a]);
            for (Index idx = 0; idx < total; ++idx) {
                const Index ip = (idx / stride[p]) % dims[p];
                const Index iq = (idx / stride[p + 1]) % dims[p + 1];
                const Index base_p = idx - ip * stride[p];
                const Index base_q = idx - iq * stride[p + 1];
                SparseVector<K> v;
                for (const auto& [r, c] : rc[static_cast<std::size_t>(ip)]) v.emplace_back(base_p + r * stride[p], c);
                for (const auto& [r, c] : lc[static_cast<std::size_t>(iq)]) v.emplace_back(base_q + r * stride[p + 1], -c);
                if (!v.empty()) rel.insert(std::move(v));
            }
        }
    }
    return RelationQuotient<K>(std::move(rel));
}

template <class K> BimoduleStructure<K> regular_bimodule(const FinAlgebra<K>& a)
{
    BimoduleStructure<K> m{a, a.dim(), {}, {}};
    for (Index i = 0; i < a.dim(); ++i) {
        m.left_action.push_back(a.left_basis(i));
        m.right_action.push_back(a.right_multiplication(unit_vector<K>(a.dim(), i)));
    }
    return m;
}

template <class K> TensorOverA<K> tensor_over_A(const BimoduleStructure<K>& mL, const BimoduleStructure<K>& mR)
{
    if (!(mL.algebra == mR.algebra)) throw BaseMismatch("tensor_over_A: acting algebras differ");
    TensorOverA<K> t{mL, mR, {}};
    t.quotient = balanced_quotient<K>({mL.carrier_dim, mR.carrier_dim}, {Balance<K>{0, mL.right_action, mR.left_action}});
    return t;
}

template <class K> Vector<K> TensorOverA<K>::project(const Matrix<K>& c) const
{
    SparseVector<K> v;
    for (Index i = 0; i < c.rows(); ++i)
        for (Index j = 0; j < c.cols(); ++j)
            if (!is_zero(c(i, j))) v.emplace_back(i * right_dim() + j, c(i, j));
    return quotient.project(v);
}

template <class K> Vector<K> TensorOverA<K>::project_pure(const Vector<K>& x, const Vector<K>& y) const
{
    return project(Matrix<K>(x * y.transpose()));
}

template <class K> Vector<K> TensorOverA<K>::project_basis(Index i, Index j) const
{
    return quotient.project(SparseVector<K>{{i * right_dim() + j, K(1)}});
}

template <class K> Matrix<K> TensorOverA<K>::lift(const Vector<K>& q) const
{
    Matrix<K> c = Matrix<K>::Zero(left_dim(), right_dim());
    for (const auto& [idx, x] : quotient.lift_sparse(q)) c(idx / right_dim(), idx % right_dim()) = x;
    return c;
}

template <class K>
Subspace<K> takeuchi_subspace(const TensorOverA<K>& t, const std::vector<Matrix<K>>& left_residual,
                              const std::vector<Matrix<K>>& right_residual)
{
    if (left_residual.size() != right_residual.size()) throw BaseMismatch("takeuchi: residual action counts differ");
    const Index n = t.dim();
    const Index g = static_cast<Index>(left_residual.size());
    if (g == 0 || n == 0) return Subspace<K>::full(n);
    Matrix<K> map(g * n, n);
    for (Index k = 0; k < n; ++k) {
        const Matrix<K> c = t.lift(unit_vector<K>(n, k));
        for (Index a = 0; a < g; ++a) {
            const Matrix<K> d = left_residual[static_cast<std::size_t>(a)] * c -
                                c * right_residual[static_cast<std::size_t>(a)].transpose();
            map.block(a * n, k, n, 1) = t.project(d);
        }
    }
    return kernel(map);
}

// ------------------------------------------------------ sub- and quotients

template <class K> std::optional<SubalgebraEmbedding<K>> subalgebra(const FinAlgebra<K>& h, const Subspace<K>& b)
{
    if (b.ambient_dim() != h.dim()) throw AmbientMismatch("subalgebra: ambient");
    if (!b.contains(h.unit())) return std::nullopt;
    const Index m = b.dim();
    std::vector<std::vector<Vector<K>>> c(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) {
            const Vector<K> p = h.multiply(b.vector(i), b.vector(j));
            if (!b.contains(p)) return std::nullopt;
            c[static_cast<std::size_t>(i)].push_back(b.coordinates(p));
        }
    FinAlgebra<K> alg = FinAlgebra<K>::from_structure_constants(c, b.coordinates(h.unit()));
    AlgMorphism<K> inc{alg, h, b.inclusion()};
    return SubalgebraEmbedding<K>{std::move(alg), std::move(inc)};
}

template <class K> QuotientAlgebra<K> quotient_algebra(const FinAlgebra<K>& h, const Subspace<K>& ideal)
{
    const Matrix<K> q = ideal.projection();
    const Matrix<K> s = ideal.section();
    std::vector<Matrix<K>> left;
    for (Index i = 0; i < q.rows(); ++i) left.push_back(q * h.left_multiplication(s.col(i)) * s);
    return QuotientAlgebra<K>{FinAlgebra<K>(std::move(left), q * h.unit()), q, s};
}

// ------------------------------------------------------------------ purity

template <class K> PurityVerdict<K> purity_check(const AlgMorphism<K>& iota)
{
    const Index m = iota.source.dim(), n = iota.target.dim();
    if (rank<K>(iota.matrix) < m) throw NotMono("purity_check: iota is not injective");
    // unknown r(i,k) at index i*n + k
    const Index unknowns = m * n;
    std::vector<std::pair<SparseVector<K>, K>> rows;
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) {
            SparseVector<K> eq;
            for (Index k = 0; k < n; ++k)
                if (!is_zero(iota.matrix(k, j))) eq.emplace_back(i * n + k, iota.matrix(k, j));
            rows.emplace_back(std::move(eq), K(i == j ? 1 : 0));
        }
    for (Index j = 0; j < m; ++j) {
        const Matrix<K> mh = iota.target.right_multiplication(iota.matrix.col(j));
        const Matrix<K> mb = iota.source.right_multiplication(unit_vector<K>(m, j));
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < n; ++k) {
                SparseVector<K> eq;
                for (Index l = 0; l < n; ++l)
                    if (!is_zero(mh(l, k))) eq.emplace_back(i * n + l, mh(l, k));
                for (Index l = 0; l < m; ++l)
                    if (!is_zero(mb(i, l))) eq.emplace_back(l * n + k, -mb(i, l));
                if (!eq.empty()) rows.emplace_back(std::move(eq), K(0));
            }
    }
    Matrix<K> sys = Matrix<K>::Zero(static_cast<Index>(rows.size()), unknowns);
    Vector<K> rhs(static_cast<Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, x] : rows[r].first) sys(static_cast<Index>(r), c) += x;
        rhs(static_cast<Index>(r)) = rows[r].second;
    }
    PurityVerdict<K> out;
    if (auto x = solve<K>(sys, rhs)) {
        Matrix<K> ret(m, n);
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < n; ++k) ret(i, k) = (*x)(i * n + k);
        out.pure = true;
        out.retraction = std::move(ret);
    }
    return out;
}

template <class K> std::optional<std::vector<Vector<K>>> primitive_idempotents(const FinAlgebra<K>& b)
{
    if (!b.is_commutative()) return std::nullopt;
    std::vector<Vector<K>> idem{b.unit()};
    for (Index j = 0; j < b.dim(); ++j) {
        std::vector<Vector<K>> next;
        for (const Vector<K>& e : idem) {
            const Subspace<K> piece = image<K>(b.left_multiplication(e));
            if (piece.dim() == 1) {
                next.push_back(e);
                continue;
            }
            const Index d = piece.dim();
            Matrix<K> op(d, d);
            for (Index i = 0; i < d; ++i) op.col(i) = piece.coordinates(b.left_basis(j) * piece.vector(i));
            const std::vector<K> poly = minimal_polynomial(op);
            const std::vector<K> roots = field_roots(poly);
            if (roots.size() + 1 != poly.size()) return std::nullopt;
            if (roots.size() == 1) {
                next.push_back(e);
                continue;
            }
            for (const K& r : roots) {
                Vector<K> w = e;
                for (const K& s : roots) {
                    if (s == r) continue;
                    w = (b.left_basis(j) * w - s * w) * FieldTraits<K>::inverse(r - s);
                }
                next.push_back(std::move(w));
            }
        }
        idem = std::move(next);
    }
    for (const Vector<K>& e : idem)
        if (image<K>(b.left_multiplication(e)).dim() != 1) return std::nullopt;
    std::stable_sort(idem.begin(), idem.end(), [](const Vector<K>& x, const Vector<K>& y) {
        return first_nonzero(x) < first_nonzero(y);
    });
    return idem;
}

template <class K> std::vector<Vector<K>> characters(const FinAlgebra<K>& h)
{
    auto idem = primitive_idempotents(h);
    if (!idem) throw UnsupportedBase("characters: algebra is not split semisimple commutative");
    std::vector<Vector<K>> chars;
    for (const Vector<K>& e : *idem) {
        const Index k = first_nonzero(e);
        const K inv = FieldTraits<K>::inverse(e(k));
        Vector<K> chi(h.dim());
        for (Index j = 0; j < h.dim(); ++j) chi(j) = (h.left_basis(j) * e)(k) * inv;
        chars.push_back(std::move(chi));
    }
    return chars;
}

template <class K> bool faithfully_flat_check(const AlgMorphism<K>& iota)
{
    auto idem = primitive_idempotents(iota.source);
    if (!idem) throw UnsupportedBase("faithfully_flat_check: base is not split semisimple commutative");
    for (const Vector<K>& e : *idem)
        if (all_zero<K>(iota.target.left_multiplication(iota(e)))) return false;
    return true;
}

template <class K> LeftModule<K> quotient_module(const FinAlgebra<K>& b, Index rank, const std::vector<Vector<K>>& relations)
{
    const Index m = b.dim(), n = m * rank;
    std::vector<Matrix<K>> free_action;
    for (Index a = 0; a < m; ++a) {
        Matrix<K> act = Matrix<K>::Zero(n, n);
        for (Index r = 0; r < rank; ++r) act.block(r * m, r * m, m, m) = b.left_basis(a);
        free_action.push_back(std::move(act));
    }
    std::vector<Vector<K>> gens;
    for (const Vector<K>& w : relations)
        for (const Matrix<K>& act : free_action) gens.push_back(act * w);
    const Subspace<K> sub = Subspace<K>::span(n, gens);
    const Matrix<K> q = sub.projection(), s = sub.section();
    LeftModule<K> out{sub.codim(), {}};
    for (const Matrix<K>& act : free_action) out.action.push_back(q * act * s);
    return out;
}

template <class K> std::vector<LeftModule<K>> module_pool(const FinAlgebra<K>& b, std::size_t count, std::uint64_t seed)
{
    std::vector<LeftModule<K>> pool;
    const Index m = b.dim();
    pool.push_back(quotient_module<K>(b, 1, {}));
    for (Index i = 0; i < m && pool.size() < count; ++i) {
        LeftModule<K> c = quotient_module<K>(b, 1, {unit_vector<K>(m, i)});
        if (c.dim > 0) pool.push_back(std::move(c));
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2), rank_d(1, 2), rel_d(0, 2);
    std::size_t attempts = 0;
    while (pool.size() < count && attempts++ < 50 * count) {
        const Index rank = rank_d(rng);
        const int nrel = rel_d(rng);
        std::vector<Vector<K>> rels;
        for (int r = 0; r < nrel; ++r) {
            Vector<K> w(m * rank);
            for (Index i = 0; i < w.size(); ++i) w(i) = K(coeff(rng));
            rels.push_back(std::move(w));
        }
        LeftModule<K> mod = quotient_module<K>(b, rank, rels);
        if (mod.dim > 0) pool.push_back(std::move(mod));
    }
    return pool;
}

template <class K> bool unit_map_injective(const AlgMorphism<K>& iota, const LeftModule<K>& m)
{
    const Index n = iota.target.dim();
    std::vector<Matrix<K>> right_h;
    for (Index a = 0; a < iota.source.dim(); ++a) right_h.push_back(iota.target.right_multiplication(iota.matrix.col(a)));
    const RelationQuotient<K> t = balanced_quotient<K>({n, m.dim}, {Balance<K>{0, right_h, m.action}});
    Matrix<K> img(t.dim(), m.dim);
    const Vector<K>& one = iota.target.unit();
    for (Index k = 0; k < m.dim; ++k) {
        SparseVector<K> v;
        for (Index i = 0; i < n; ++i)
            if (!is_zero(one(i))) v.emplace_back(i * m.dim + k, one(i));
        img.col(k) = t.project(v);
    }
    return rank<K>(img) == m.dim;
}

template <class K> Subspace<K> extension_equalizer(const AlgMorphism<K>& iota)
{
    const Index n = iota.target.dim();
    std::vector<Matrix<K>> right_h, left_h;
    for (Index a = 0; a < iota.source.dim(); ++a) {
        right_h.push_back(iota.target.right_multiplication(iota.matrix.col(a)));
        left_h.push_back(iota.target.left_multiplication(iota.matrix.col(a)));
    }
    const RelationQuotient<K> t = balanced_quotient<K>({n, n}, {Balance<K>{0, right_h, left_h}});
    const Vector<K>& one = iota.target.unit();
    Matrix<K> diff(t.dim(), n);
    for (Index x = 0; x < n; ++x) {
        SparseVector<K> v;
        for (Index i = 0; i < n; ++i)
            if (!is_zero(one(i))) {
                v.emplace_back(x * n + i, one(i));
                v.emplace_back(i * n + x, -one(i));
            }
        diff.col(x) = t.project(v);
    }
    return kernel(diff);
}

#define HOPFALGD_INSTANTIATE(K)                                                                                    \
    template class FinAlgebra<K>;                                                                                 \
    template struct TensorOverA<K>;                                                                               \
    template Certification check_algebra<K>(const FinAlgebra<K>&);                                               \
    template Certification check_morphism<K>(const AlgMorphism<K>&);                                             \
    template Certification check_bimodule<K>(const BimoduleStructure<K>&);                                       \
    template RelationQuotient<K> balanced_quotient<K>(const std::vector<Index>&, const std::vector<Balance<K>>&); \
    template BimoduleStructure<K> regular_bimodule<K>(const FinAlgebra<K>&);                                     \
    template TensorOverA<K> tensor_over_A<K>(const BimoduleStructure<K>&, const BimoduleStructure<K>&);          \
    template Subspace<K> takeuchi_subspace<K>(const TensorOverA<K>&, const std::vector<Matrix<K>>&,              \
                                              const std::vector<Matrix<K>>&);                                    \
    template std::optional<SubalgebraEmbedding<K>> subalgebra<K>(const FinAlgebra<K>&, const Subspace<K>&);      \
    template QuotientAlgebra<K> quotient_algebra<K>(const FinAlgebra<K>&, const Subspace<K>&);                   \
    template PurityVerdict<K> purity_check<K>(const AlgMorphism<K>&);                                            \
    template bool faithfully_flat_check<K>(const AlgMorphism<K>&);                                               \
    template std::optional<std::vector<Vector<K>>> primitive_idempotents<K>(const FinAlgebra<K>&);               \
    template std::vector<Vector<K>> characters<K>(const FinAlgebra<K>&);                                         \
    template LeftModule<K> quotient_module<K>(const FinAlgebra<K>&, Index, const std::vector<Vector<K>>&);       \
    template std::vector<LeftModule<K>> module_pool<K>(const FinAlgebra<K>&, std::size_t, std::uint64_t);        \
    template bool unit_map_injective<K>(const AlgMorphism<K>&, const LeftModule<K>&);                            \
    template Subspace<K> extension_equalizer<K>(const AlgMorphism<K>&);

HOPFALGD_INSTANTIATE(Rational)
HOPFALGD_INSTANTIATE(Fp)

}  // namespace hopfalgd
