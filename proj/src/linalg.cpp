#include "hopfalgd/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace hopfalgd {

namespace {

template <class K> void require_same(Index a, Index b, const char* what)
{
    if (a != b)
        throw AmbientMismatch(std::string(what) + ": ambient " + std::to_string(a) + " vs " + std::to_string(b));
}

template <class K> Matrix<K> stack(const Matrix<K>& a, const Matrix<K>& b)
{
    Matrix<K> s(a.rows() + b.rows(), a.cols());
    if (a.rows()) s.topRows(a.rows()) = a;
    if (b.rows()) s.bottomRows(b.rows()) = b;
    return s;
}

}  // namespace

template <class K> Rref<K> rref(const Matrix<K>& m)
{
    Rref<K> out{m, {}};
    Matrix<K>& r = out.reduced;
    const Index rows = r.rows(), cols = r.cols();
    Index row = 0;
    std::vector<Index> nz;
    for (Index col = 0; col < cols && row < rows; ++col) {
        Index p = row;
        while (p < rows && is_zero(r(p, col))) ++p;
        if (p == rows) continue;
        if (p != row) r.row(p).swap(r.row(row));
        const K inv = FieldTraits<K>::inverse(r(row, col));
        nz.clear();
        for (Index j = col; j < cols; ++j) {
            if (!is_zero(r(row, j))) {
                r(row, j) *= inv;
                nz.push_back(j);
            }
        }
        for (Index i = 0; i < rows; ++i) {
            if (i == row || is_zero(r(i, col))) continue;
            const K c = r(i, col);
            for (Index j : nz) r(i, j) -= c * r(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <class K> Index rank(const Matrix<K>& m) { return static_cast<Index>(rref(m).pivots.size()); }

template <class K> std::optional<Vector<K>> solve(const Matrix<K>& m, const Vector<K>& b)
{
    if (b.size() != m.rows()) throw AmbientMismatch("solve: right-hand side length");
    Matrix<K> aug(m.rows(), m.cols() + 1);
    if (m.cols()) aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    Rref<K> r = rref(aug);
    Vector<K> x = Vector<K>::Zero(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;
        x(r.pivots[i]) = r.reduced(static_cast<Index>(i), m.cols());
    }
    return x;
}

template <class K> Vector<K> unit_vector(Index n, Index i)
{
    Vector<K> v = Vector<K>::Zero(n);
    v(i) = K(1);
    return v;
}

template <class K> Matrix<K> zero_matrix(Index rows, Index cols) { return Matrix<K>::Zero(rows, cols); }

template <class K> Matrix<K> identity_matrix(Index n) { return Matrix<K>::Identity(n, n); }

template <class K> bool all_zero(const Matrix<K>& m)
{
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class K> bool all_zero(const Vector<K>& v)
{
    for (Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

template <class K> SparseVector<K> sparse(const Vector<K>& v)
{
    SparseVector<K> s;
    for (Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) s.emplace_back(i, v(i));
    return s;
}

template <class K> Vector<K> dense(Index n, const SparseVector<K>& v)
{
    Vector<K> d = Vector<K>::Zero(n);
    for (const auto& [i, c] : v) d(i) += c;
    return d;
}

template <class K> std::string format_vector(const Vector<K>& v)
{
    std::ostringstream os;
    os << '[';
    for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v(i));
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- Subspace

template <class K> Subspace<K>::Subspace(Index ambient) : ambient_(ambient), basis_(0, ambient) {}

template <class K> Subspace<K> Subspace<K>::span(const Matrix<K>& rows)
{
    Subspace s(rows.cols());
    Rref<K> r = rref(rows);
    s.pivots_ = r.pivots;
    s.basis_ = r.reduced.topRows(static_cast<Index>(r.pivots.size()));
    return s;
}

template <class K> Subspace<K> Subspace<K>::span(Index ambient, const std::vector<Vector<K>>& vectors)
{
    Matrix<K> rows(static_cast<Index>(vectors.size()), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require_same<K>(vectors[i].size(), ambient, "span");
        rows.row(static_cast<Index>(i)) = vectors[i].transpose();
    }
    return span(rows);
}

template <class K> Subspace<K> Subspace<K>::full(Index ambient) { return span(identity_matrix<K>(ambient)); }

template <class K> std::vector<Index> Subspace<K>::free_coordinates() const
{
    std::vector<Index> f;
    std::size_t k = 0;
    for (Index j = 0; j < ambient_; ++j) {
        if (k < pivots_.size() && pivots_[k] == j)
            ++k;
        else
            f.push_back(j);
    }
    return f;
}

template <class K> Vector<K> Subspace<K>::reduce(const Vector<K>& v) const
{
    require_same<K>(v.size(), ambient_, "reduce");
    Vector<K> r = v;
    for (Index i = 0; i < basis_.rows(); ++i) {
        const K c = r(pivots_[i]);
        if (is_zero(c)) continue;
        for (Index j = pivots_[i]; j < ambient_; ++j)
            if (!is_zero(basis_(i, j))) r(j) -= c * basis_(i, j);
    }
    return r;
}

template <class K> bool Subspace<K>::contains(const Vector<K>& v) const { return all_zero(reduce(v)); }

template <class K> bool Subspace<K>::contains(const Subspace& u) const
{
    require_same<K>(u.ambient_, ambient_, "contains");
    for (Index i = 0; i < u.dim(); ++i)
        if (!contains(u.vector(i))) return false;
    return true;
}

template <class K> Vector<K> Subspace<K>::coordinates(const Vector<K>& v) const
{
    Vector<K> c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[i]);
    return c;
}

template <class K> Matrix<K> Subspace<K>::projection() const
{
    const std::vector<Index> f = free_coordinates();
    Matrix<K> q = Matrix<K>::Zero(static_cast<Index>(f.size()), ambient_);
    for (std::size_t k = 0; k < f.size(); ++k) {
        q(static_cast<Index>(k), f[k]) = K(1);
        for (Index i = 0; i < dim(); ++i) q(static_cast<Index>(k), pivots_[i]) = -basis_(i, f[k]);
    }
    return q;
}

template <class K> Matrix<K> Subspace<K>::section() const
{
    const std::vector<Index> f = free_coordinates();
    Matrix<K> s = Matrix<K>::Zero(ambient_, static_cast<Index>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) s(f[k], static_cast<Index>(k)) = K(1);
    return s;
}

template <class K> Vector<K> Subspace<K>::project(const Vector<K>& v) const
{
    const Vector<K> r = reduce(v);
    const std::vector<Index> f = free_coordinates();
    Vector<K> q(static_cast<Index>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) q(static_cast<Index>(k)) = r(f[k]);
    return q;
}

template <class K> Subspace<K> kernel(const Matrix<K>& m)
{
    Rref<K> r = rref(m);
    const Index n = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vector<K>> gens;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vector<K> v = unit_vector<K>(n, f);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v(r.pivots[i]) = -r.reduced(static_cast<Index>(i), f);
        gens.push_back(std::move(v));
    }
    return Subspace<K>::span(n, gens);
}

template <class K> Subspace<K> image(const Matrix<K>& m) { return Subspace<K>::span(Matrix<K>(m.transpose())); }

template <class K> Subspace<K> operator+(const Subspace<K>& u, const Subspace<K>& v)
{
    require_same<K>(u.ambient_dim(), v.ambient_dim(), "sum");
    return Subspace<K>::span(stack(u.basis(), v.basis()));
}

template <class K> Subspace<K> annihilator(const Subspace<K>& u)
{
    if (u.dim() == 0) return Subspace<K>::full(u.ambient_dim());
    return kernel(u.basis());
}

template <class K> Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& v)
{
    require_same<K>(u.ambient_dim(), v.ambient_dim(), "intersect");
    const Matrix<K> system = stack(annihilator(u).basis(), annihilator(v).basis());
    if (system.rows() == 0) return Subspace<K>::full(u.ambient_dim());
    return kernel(system);
}

template <class K> Subspace<K> map_image(const Matrix<K>& f, const Subspace<K>& u)
{
    require_same<K>(f.cols(), u.ambient_dim(), "map_image");
    if (u.dim() == 0) return Subspace<K>(f.rows());
    return image(Matrix<K>(f * u.inclusion()));
}

template <class K> Subspace<K> preimage(const Matrix<K>& f, const Subspace<K>& w)
{
    require_same<K>(f.rows(), w.ambient_dim(), "preimage");
    const Subspace<K> ann = annihilator(w);
    if (ann.dim() == 0) return Subspace<K>::full(f.cols());
    return kernel(Matrix<K>(ann.basis() * f));
}

// ---------------------------------------------------------- SparseEchelon

template <class K> SparseVector<K> SparseEchelon<K>::reduce(const SparseVector<K>& v) const
{
    std::map<Index, K> acc;
    for (const auto& [i, c] : v) {
        if (i < 0 || i >= n_) throw AmbientMismatch("sparse index out of range");
        auto [it, fresh] = acc.emplace(i, c);
        if (!fresh) it->second += c;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (is_zero(it->second)) {
            it = acc.erase(it);
            continue;
        }
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        const K c = it->second;
        for (const auto& [j, x] : row->second) {
            auto [jt, fresh] = acc.emplace(j, -c * x);
            if (!fresh) jt->second -= c * x;
        }
        it = acc.erase(it);
    }
    SparseVector<K> out;
    for (auto& [i, c] : acc)
        if (!is_zero(c)) out.emplace_back(i, c);
    return out;
}

template <class K> bool SparseEchelon<K>::insert(SparseVector<K> v)
{
    SparseVector<K> r = reduce(v);
    if (r.empty()) return false;
    const K inv = FieldTraits<K>::inverse(r.front().second);
    for (auto& e : r) e.second *= inv;
    rows_.emplace(r.front().first, std::move(r));
    return true;
}

template <class K> std::vector<Index> SparseEchelon<K>::pivots() const
{
    std::vector<Index> p;
    for (const auto& kv : rows_) p.push_back(kv.first);
    return p;
}

template <class K> Subspace<K> SparseEchelon<K>::subspace() const
{
    Matrix<K> rows = Matrix<K>::Zero(rank(), n_);
    Index i = 0;
    for (const auto& kv : rows_) {
        for (const auto& [j, c] : kv.second) rows(i, j) = c;
        ++i;
    }
    return Subspace<K>::span(rows);
}

// ------------------------------------------------------- RelationQuotient

template <class K>
RelationQuotient<K>::RelationQuotient(SparseEchelon<K> relations)
    : relations_(std::move(relations)), position_(static_cast<std::size_t>(relations_.ambient_dim()), -1)
{
    const std::vector<Index> piv = relations_.pivots();
    std::size_t k = 0;
    for (Index j = 0; j < relations_.ambient_dim(); ++j) {
        if (k < piv.size() && piv[k] == j) {
            ++k;
            continue;
        }
        position_[static_cast<std::size_t>(j)] = static_cast<Index>(free_.size());
        free_.push_back(j);
    }
}

template <class K> Vector<K> RelationQuotient<K>::project(const SparseVector<K>& v) const
{
    Vector<K> q = Vector<K>::Zero(dim());
    for (const auto& [i, c] : relations_.reduce(v)) q(position_[static_cast<std::size_t>(i)]) = c;
    return q;
}

template <class K> Vector<K> RelationQuotient<K>::lift(const Vector<K>& q) const
{
    return dense<K>(ambient_dim(), lift_sparse(q));
}

template <class K> SparseVector<K> RelationQuotient<K>::lift_sparse(const Vector<K>& q) const
{
    if (q.size() != dim()) throw AmbientMismatch("lift: quotient coordinate length");
    SparseVector<K> v;
    for (Index k = 0; k < dim(); ++k)
        if (!is_zero(q(k))) v.emplace_back(free_[static_cast<std::size_t>(k)], q(k));
    return v;
}

template <class K> Matrix<K> RelationQuotient<K>::projection_matrix() const
{
    Matrix<K> p(dim(), ambient_dim());
    for (Index j = 0; j < ambient_dim(); ++j) p.col(j) = project(SparseVector<K>{{j, K(1)}});
    return p;
}

template <class K> Matrix<K> RelationQuotient<K>::section_matrix() const
{
    Matrix<K> s = Matrix<K>::Zero(ambient_dim(), dim());
    for (Index k = 0; k < dim(); ++k) s(free_[static_cast<std::size_t>(k)], k) = K(1);
    return s;
}

#define HOPFALGD_INSTANTIATE(K)                                                           \
    template Rref<K> rref<K>(const Matrix<K>&);                                          \
    template Index rank<K>(const Matrix<K>&);                                            \
    template std::optional<Vector<K>> solve<K>(const Matrix<K>&, const Vector<K>&);      \
    template Vector<K> unit_vector<K>(Index, Index);                                     \
    template Matrix<K> zero_matrix<K>(Index, Index);                                     \
    template Matrix<K> identity_matrix<K>(Index);                                        \
    template bool all_zero<K>(const Matrix<K>&);                                         \
    template bool all_zero<K>(const Vector<K>&);                                         \
    template SparseVector<K> sparse<K>(const Vector<K>&);                                \
    template Vector<K> dense<K>(Index, const SparseVector<K>&);                          \
    template std::string format_vector<K>(const Vector<K>&);                             \
    template class Subspace<K>;                                                          \
    template Subspace<K> kernel<K>(const Matrix<K>&);                                    \
    template Subspace<K> image<K>(const Matrix<K>&);                                     \
    template Subspace<K> operator+ <K>(const Subspace<K>&, const Subspace<K>&);          \
    template Subspace<K> intersect<K>(const Subspace<K>&, const Subspace<K>&);           \
    template Subspace<K> annihilator<K>(const Subspace<K>&);                             \
    template Subspace<K> map_image<K>(const Matrix<K>&, const Subspace<K>&);             \
    template Subspace<K> preimage<K>(const Matrix<K>&, const Subspace<K>&);              \
    template class SparseEchelon<K>;                                                     \
    template class RelationQuotient<K>;

HOPFALGD_INSTANTIATE(Rational)
HOPFALGD_INSTANTIATE(Fp)

}  // namespace hopfalgd
