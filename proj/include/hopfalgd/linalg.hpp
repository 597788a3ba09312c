#ifndef HOPFALGD_LINALG_HPP
#define HOPFALGD_LINALG_HPP

#include "hopfalgd/scalar.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfalgd {

using Index = Eigen::Index;

template <class K> using Matrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class K> using Vector = Eigen::Matrix<K, Eigen::Dynamic, 1>;
template <class K> using SparseVector = std::vector<std::pair<Index, K>>;

struct AmbientMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class K> struct Rref {
    Matrix<K> reduced;
    std::vector<Index> pivots;
};

template <class K> Rref<K> rref(const Matrix<K>& m);
template <class K> Index rank(const Matrix<K>& m);
template <class K> std::optional<Vector<K>> solve(const Matrix<K>& m, const Vector<K>& b);

template <class K> Vector<K> unit_vector(Index n, Index i);
template <class K> Matrix<K> zero_matrix(Index rows, Index cols);
template <class K> Matrix<K> identity_matrix(Index n);
template <class K> bool all_zero(const Matrix<K>& m);
template <class K> bool all_zero(const Vector<K>& v);
template <class K> SparseVector<K> sparse(const Vector<K>& v);
template <class K> Vector<K> dense(Index n, const SparseVector<K>& v);
template <class K> std::string format_vector(const Vector<K>& v);

// Canonical subspace: basis rows in reduced row echelon form.
template <class K> class Subspace {
public:
    explicit Subspace(Index ambient = 0);

    static Subspace span(const Matrix<K>& rows);
    static Subspace span(Index ambient, const std::vector<Vector<K>>& vectors);
    static Subspace full(Index ambient);

    Index ambient_dim() const { return ambient_; }
    Index dim() const { return basis_.rows(); }
    Index codim() const { return ambient_ - basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }
    const std::vector<Index>& pivots() const { return pivots_; }
    std::vector<Index> free_coordinates() const;
    Vector<K> vector(Index i) const { return basis_.row(i).transpose(); }

    Vector<K> reduce(const Vector<K>& v) const;
    bool contains(const Vector<K>& v) const;
    bool contains(const Subspace& u) const;
    Vector<K> coordinates(const Vector<K>& v) const;

    Matrix<K> inclusion() const { return basis_.transpose(); }
    Matrix<K> projection() const;
    Matrix<K> section() const;
    Vector<K> project(const Vector<K>& v) const;

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Index ambient_;
    Matrix<K> basis_;
    std::vector<Index> pivots_;
};

template <class K> Subspace<K> kernel(const Matrix<K>& m);
template <class K> Subspace<K> image(const Matrix<K>& m);
template <class K> Subspace<K> operator+(const Subspace<K>& u, const Subspace<K>& v);
template <class K> Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& v);
template <class K> Subspace<K> annihilator(const Subspace<K>& u);
template <class K> Subspace<K> map_image(const Matrix<K>& f, const Subspace<K>& u);
template <class K> Subspace<K> preimage(const Matrix<K>& f, const Subspace<K>& w);

// Row echelon data kept sparse: relation spaces of tensor products are
// spanned by very short vectors and can be large.
template <class K> class SparseEchelon {
public:
    explicit SparseEchelon(Index ambient = 0) : n_(ambient) {}

    Index ambient_dim() const { return n_; }
    Index rank() const { return static_cast<Index>(rows_.size()); }
    bool insert(SparseVector<K> v);
    SparseVector<K> reduce(const SparseVector<K>& v) const;
    std::vector<Index> pivots() const;
    Subspace<K> subspace() const;

private:
    Index n_;
    std::map<Index, SparseVector<K>> rows_;
};

// Ambient space modulo a relation subspace.  Quotient coordinates are the
// non-pivot ambient coordinates; the section puts a vector back on them.
template <class K> class RelationQuotient {
public:
    RelationQuotient() = default;
    explicit RelationQuotient(SparseEchelon<K> relations);

    Index ambient_dim() const { return relations_.ambient_dim(); }
    Index dim() const { return static_cast<Index>(free_.size()); }
    const std::vector<Index>& free_coordinates() const { return free_; }
    Index coordinate_of(Index ambient_index) const { return position_[ambient_index]; }
    const SparseEchelon<K>& echelon() const { return relations_; }

    Vector<K> project(const SparseVector<K>& v) const;
    Vector<K> project(const Vector<K>& v) const { return project(sparse(v)); }
    bool is_relation(const SparseVector<K>& v) const { return relations_.reduce(v).empty(); }
    Vector<K> lift(const Vector<K>& q) const;
    SparseVector<K> lift_sparse(const Vector<K>& q) const;

    Subspace<K> relations() const { return relations_.subspace(); }
    Matrix<K> projection_matrix() const;
    Matrix<K> section_matrix() const;

private:
    SparseEchelon<K> relations_;
    std::vector<Index> free_;
    std::vector<Index> position_;
};

}  // namespace hopfalgd

#endif
