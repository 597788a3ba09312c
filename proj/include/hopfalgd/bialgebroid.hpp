#ifndef HOPFALGD_BIALGEBROID_HPP
#define HOPFALGD_BIALGEBROID_HPP

#include "hopfalgd/finalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hopfalgd {

struct NotCertified : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Left bialgebroid (A, H).  s : A -> H and t : A^op -> H are given as
// matrices on the bases of A and H.  Delta is stored in coordinates of
// H (x)_A H, built from the bimodule structure s-left, t-right.
template <class K> struct LeftBialgebroid {
    FinAlgebra<K> base;
    FinAlgebra<K> total;
    Matrix<K> s;       // dim H x dim A
    Matrix<K> t;       // dim H x dim A
    TensorOverA<K> tensor;
    Matrix<K> delta;   // dim tensor x dim H
    Matrix<K> counit;  // dim A x dim H
    std::vector<std::string> labels;

    Index dim() const { return total.dim(); }
    std::string label(Index i) const;
    // Coefficient matrix of a representative of Delta(x).
    Matrix<K> delta_lift(const Vector<K>& x) const { return tensor.lift(delta * x); }
};

// The bimodule of H with s acting on the left and t on the right, both by
// left multiplication.
template <class K>
BimoduleStructure<K> triangle_bimodule(const FinAlgebra<K>& a, const FinAlgebra<K>& h, const Matrix<K>& s, const Matrix<K>& t);

// delta_coefficients(i) is a dim H x dim H coefficient matrix of Delta(e_i).
template <class K>
LeftBialgebroid<K> make_bialgebroid(FinAlgebra<K> base, FinAlgebra<K> total, Matrix<K> s, Matrix<K> t,
                                    const std::function<Matrix<K>(Index)>& delta_coefficients, Matrix<K> counit,
                                    std::vector<std::string> labels = {});

// H (x)_A H (x)_A H with the same balancing at both joints.
template <class K> RelationQuotient<K> triple_tensor(const LeftBialgebroid<K>& b);

template <class K> Certification verify_bialgebroid(const LeftBialgebroid<K>& b);

template <class K> struct HopfGaloisData {
    TensorOverA<K> op_tensor;  // H (x)_{A^op} H
    Matrix<K> beta;            // op_tensor -> tensor
    Matrix<K> beta_inverse;
    Matrix<K> gamma;           // H -> op_tensor
};

// Product on H (x)_{A^op} H: (x (x) y)(u (x) v) = xu (x) vy, on lifted coefficients.
template <class K> Matrix<K> op_product(const FinAlgebra<K>& h, const Matrix<K>& c1, const Matrix<K>& c2);

// nullopt when beta is singular (not a left Hopf algebroid).
template <class K> std::optional<HopfGaloisData<K>> hopf_galois(const LeftBialgebroid<K>& b);
template <class K> Certification verify_hopf_galois(const LeftBialgebroid<K>& b, const HopfGaloisData<K>& hg);

template <class K> struct IdealCoideal {
    Subspace<K> subspace;
    bool left_ideal = false;
    bool two_sided_coideal = false;
    Certification report;
    bool certified() const { return left_ideal && two_sided_coideal; }
};

template <class K> struct CoidealSubring {
    Subspace<K> subspace;
    bool subalgebra = false;
    bool contains_t = false;
    bool comodule = false;
    Certification report;
    bool certified() const { return subalgebra && contains_t && comodule; }
};

template <class K> IdealCoideal<K> certify_ideal_coideal(const LeftBialgebroid<K>& b, const Subspace<K>& i);
template <class K> CoidealSubring<K> certify_coideal_subring(const LeftBialgebroid<K>& b, const Subspace<K>& sub);

// H / I with the inherited coring structure.
template <class K> struct QuotientCoring {
    Subspace<K> ideal;
    Matrix<K> projection;  // codim x dim H
    Matrix<K> section;     // dim H x codim
    TensorOverA<K> tensor;
    Matrix<K> delta;
    Matrix<K> counit;
};

template <class K> QuotientCoring<K> xi_correspondence(const LeftBialgebroid<K>& b, const IdealCoideal<K>& i);

// Coinvariants {x : (pi (x) H) Delta(x) = pi(1) (x) x} of H/I.
template <class K> Subspace<K> psi_subspace(const LeftBialgebroid<K>& b, const Subspace<K>& i);
template <class K> CoidealSubring<K> psi_coinvariants(const LeftBialgebroid<K>& b, const IdealCoideal<K>& i);
// H B^+ with B^+ = B meet ker(counit).
template <class K> Subspace<K> phi_subspace(const LeftBialgebroid<K>& b, const Subspace<K>& sub);
template <class K> IdealCoideal<K> phi_ideal(const LeftBialgebroid<K>& b, const CoidealSubring<K>& sub);

template <class K>
Certification galois_connection_check(const LeftBialgebroid<K>& b, const std::vector<Subspace<K>>& ideals,
                                      const std::vector<Subspace<K>>& subrings);

// gamma(B) inside B (x)_{A^op} H, purity of B -> H, the xi isomorphism and B = Psi Phi(B).
template <class K>
Certification gamma_stability_and_xi(const LeftBialgebroid<K>& b, const HopfGaloisData<K>& hg, const Subspace<K>& sub);

}  // namespace hopfalgd

#endif
