#ifndef HOPFALGD_FINALG_HPP
#define HOPFALGD_FINALG_HPP

#include "hopfalgd/linalg.hpp"
#include "hopfalgd/report.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace hopfalgd {

struct BaseMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotMono : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedBase : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Associative unital algebra by structure constants.  left_mult[i] is the
// matrix of y -> e_i y, so column j of it holds the coordinates of e_i e_j.
template <class K> class FinAlgebra {
public:
    FinAlgebra() = default;
    FinAlgebra(std::vector<Matrix<K>> left_mult, Vector<K> unit);

    static FinAlgebra from_structure_constants(const std::vector<std::vector<Vector<K>>>& c, Vector<K> unit);
    static FinAlgebra diagonal(Index n);

    Index dim() const { return static_cast<Index>(left_.size()); }
    const Vector<K>& unit() const { return unit_; }
    const Matrix<K>& left_basis(Index i) const { return left_[static_cast<std::size_t>(i)]; }
    Vector<K> basis_product(Index i, Index j) const { return left_basis(i).col(j); }

    Vector<K> multiply(const Vector<K>& x, const Vector<K>& y) const;
    Matrix<K> left_multiplication(const Vector<K>& x) const;
    Matrix<K> right_multiplication(const Vector<K>& y) const;
    bool is_commutative() const;
    FinAlgebra opposite() const;

    friend bool operator==(const FinAlgebra& a, const FinAlgebra& b)
    {
        return a.left_ == b.left_ && a.unit_ == b.unit_;
    }

private:
    std::vector<Matrix<K>> left_;
    Vector<K> unit_;
};

template <class K> struct AlgMorphism {
    FinAlgebra<K> source;
    FinAlgebra<K> target;
    Matrix<K> matrix;  // dim target x dim source

    Vector<K> operator()(const Vector<K>& x) const { return matrix * x; }
};

template <class K> struct BimoduleStructure {
    FinAlgebra<K> algebra;
    Index carrier_dim = 0;
    std::vector<Matrix<K>> left_action;   // m -> e_a . m
    std::vector<Matrix<K>> right_action;  // m -> m . e_a
};

template <class K> struct LeftModule {
    Index dim = 0;
    std::vector<Matrix<K>> action;
};

// Balanced tensor product M (x)_A N as a quotient of M (x) N.  Elements of the
// ambient space are written as dim M x dim N coefficient matrices.
template <class K> struct TensorOverA {
    BimoduleStructure<K> left;
    BimoduleStructure<K> right;
    RelationQuotient<K> quotient;

    Index left_dim() const { return left.carrier_dim; }
    Index right_dim() const { return right.carrier_dim; }
    Index ambient_dim() const { return left_dim() * right_dim(); }
    Index dim() const { return quotient.dim(); }
    Subspace<K> relations() const { return quotient.relations(); }
    Matrix<K> quotient_projection() const { return quotient.projection_matrix(); }

    Vector<K> project(const Matrix<K>& coefficients) const;
    Vector<K> project_pure(const Vector<K>& x, const Vector<K>& y) const;
    Vector<K> project_basis(Index i, Index j) const;
    Matrix<K> lift(const Vector<K>& q) const;
};

// Relation data for iterated tensor products: at leg `position`, generator a
// contributes (right_on_left[a] on that leg) - (left_on_right[a] on the next).
template <class K> struct Balance {
    std::size_t position = 0;
    std::vector<Matrix<K>> right_on_left;
    std::vector<Matrix<K>> left_on_right;
};

template <class K> RelationQuotient<K> balanced_quotient(const std::vector<Index>& dims, const std::vector<Balance<K>>& balances);

template <class K> struct SubalgebraEmbedding {
    FinAlgebra<K> algebra;
    AlgMorphism<K> inclusion;
};

template <class K> struct QuotientAlgebra {
    FinAlgebra<K> algebra;
    Matrix<K> projection;
    Matrix<K> section;
};

template <class K> struct PurityVerdict {
    bool pure = false;
    std::optional<Matrix<K>> retraction;  // dim B x dim H
};

template <class K> Certification check_algebra(const FinAlgebra<K>& alg);
template <class K> Certification check_morphism(const AlgMorphism<K>& f);
template <class K> Certification check_bimodule(const BimoduleStructure<K>& m);

template <class K> BimoduleStructure<K> regular_bimodule(const FinAlgebra<K>& a);
template <class K> TensorOverA<K> tensor_over_A(const BimoduleStructure<K>& mL, const BimoduleStructure<K>& mR);
template <class K>
Subspace<K> takeuchi_subspace(const TensorOverA<K>& t, const std::vector<Matrix<K>>& left_residual,
                              const std::vector<Matrix<K>>& right_residual);

template <class K> std::optional<SubalgebraEmbedding<K>> subalgebra(const FinAlgebra<K>& h, const Subspace<K>& b);
template <class K> QuotientAlgebra<K> quotient_algebra(const FinAlgebra<K>& h, const Subspace<K>& ideal);

template <class K> PurityVerdict<K> purity_check(const AlgMorphism<K>& iota);
template <class K> bool faithfully_flat_check(const AlgMorphism<K>& iota);
template <class K> std::optional<std::vector<Vector<K>>> primitive_idempotents(const FinAlgebra<K>& b);
template <class K> std::vector<Vector<K>> characters(const FinAlgebra<K>& h);

// B^rank modulo the submodule generated by `relations`.
template <class K> LeftModule<K> quotient_module(const FinAlgebra<K>& b, Index rank, const std::vector<Vector<K>>& relations);
template <class K> std::vector<LeftModule<K>> module_pool(const FinAlgebra<K>& b, std::size_t count, std::uint64_t seed);
template <class K> bool unit_map_injective(const AlgMorphism<K>& iota, const LeftModule<K>& m);
template <class K> Subspace<K> extension_equalizer(const AlgMorphism<K>& iota);

}  // namespace hopfalgd

#endif
