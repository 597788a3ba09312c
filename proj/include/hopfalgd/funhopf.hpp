#ifndef HOPFALGD_FUNHOPF_HPP
#define HOPFALGD_FUNHOPF_HPP

#include "hopfalgd/bialgebroid.hpp"
#include "hopfalgd/groupoid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hopfalgd {

struct InvalidGroupoid : std::invalid_argument {
    InvalidGroupoid(Certification report, const std::string& what) : std::invalid_argument(what), report(std::move(report)) {}
    Certification report;
};

// (k(G0), k(G1)) in the arrow and object indicator bases.  Labels of the
// bialgebroid are the arrow ids.
template <class K> struct FunctionHopfAlgebroid {
    FiniteGroupoid groupoid;
    LeftBialgebroid<K> bialgebroid;
    Matrix<K> antipode;  // S(f_g) = f_{g^-1}

    Index dim() const { return bialgebroid.dim(); }
    const FinAlgebra<K>& base() const { return bialgebroid.base; }
    const FinAlgebra<K>& total() const { return bialgebroid.total; }
};

// Throws InvalidGroupoid carrying the validation report.
template <class K> FunctionHopfAlgebroid<K> build_function_hopf_algebroid(const FiniteGroupoid& g);

// CH1 commutativity and multiplicative counit, CH2 antipode against s and t,
// CH3 the two antipode contractions.
template <class K> Certification check_hopf_axioms(const FunctionHopfAlgebroid<K>& h);
// gamma(u) = sum u1 (x) S(u2) in H (x)_{A^op} H.
template <class K> Certification check_translation_map(const FunctionHopfAlgebroid<K>& h, const HopfGaloisData<K>& hg);

template <class K> struct AdjointCoaction;

template <class K> struct HopfIdeal {
    Subspace<K> subspace;
    std::optional<std::vector<int>> arrow_set;  // S1 when the subspace is spanned by arrows
    bool ideal = false;
    bool hi1 = false;  // counit vanishes
    bool hi2 = false;  // coideal
    bool hi3 = false;  // antipode stable
    bool wide = false;                   // <s - t> inside I
    std::optional<bool> ni2;             // only decided for wide Hopf ideals
    std::optional<bool> complement_wide;  // (G0, G1 \ S1) is a wide subgroupoid
    std::string path;                    // "arrow-subset" or "subspace"
    Certification report;

    bool hopf() const { return ideal && hi1 && hi2 && hi3; }
};

// Arrow-spanned subspaces are classified by set conditions unless
// force_subspace_path is set.  With a coaction, NI2 is decided for wide Hopf ideals.
template <class K>
HopfIdeal<K> classify_ideal(const FunctionHopfAlgebroid<K>& h, const Subspace<K>& i, bool force_subspace_path = false,
                            const AdjointCoaction<K>* co = nullptr);
template <class K> Subspace<K> arrow_span(const FunctionHopfAlgebroid<K>& h, const std::vector<int>& arrows);

// H / <s - t>, identified with functions on the isotropy arrows.
template <class K> struct IsotropyQuotient {
    Subspace<K> ideal;
    QuotientAlgebra<K> algebra;
    QuotientCoring<K> coring;
    std::vector<int> arrows;  // quotient basis vector k is f_{arrows[k]}
    Matrix<K> base_map;       // common image of s and t
    Matrix<K> antipode;
    Certification report;

    Index dim() const { return algebra.algebra.dim(); }
};

template <class K> IsotropyQuotient<K> isotropy_quotient(const FunctionHopfAlgebroid<K>& h);

// delta(h) = h2 (x) S(h1) h3 from H-bar to H-bar (x)_A H.
template <class K> struct AdjointCoaction {
    IsotropyQuotient<K> quotient;
    TensorOverA<K> tensor;
    Matrix<K> delta;
    Certification report;
};

template <class K> AdjointCoaction<K> adjoint_coaction(const FunctionHopfAlgebroid<K>& h);

struct NormalIdealVerdict {
    bool normal = false;
    bool ni1 = false;
    bool ni2 = false;
    std::string witness;
    std::optional<bool> groupoid_agrees;  // is_normal on the complement, when arrow-spanned
};

// Throws NotCertified unless HI1-HI3 hold.
template <class K>
NormalIdealVerdict check_normal(const FunctionHopfAlgebroid<K>& h, const AdjointCoaction<K>& co, const HopfIdeal<K>& i);

template <class K> struct Coinvariants {
    Subspace<K> subspace;
    WideSubgroupoid normal;
    std::vector<std::vector<int>> orbits;  // N-orbits, sorted by smallest arrow
    Certification report;
};

// Throws NotNormal when the ideal is not a normal Hopf ideal.
template <class K>
Coinvariants<K> coinvariants(const FunctionHopfAlgebroid<K>& h, const AdjointCoaction<K>& co, const HopfIdeal<K>& i);

// K as a bialgebroid over A in its own right, delta solved back through K (x)_A K -> H (x)_A H.
template <class K> struct SubHopfAlgebroid {
    Subspace<K> subspace;
    LeftBialgebroid<K> bialgebroid;
    Matrix<K> inclusion;  // dim H x dim K
    Matrix<K> antipode;
    Certification report;
};

// Throws NotCertified when K is not closed under the structure maps.
template <class K> SubHopfAlgebroid<K> sub_hopf_algebroid(const FunctionHopfAlgebroid<K>& h, const Subspace<K>& k);

template <class K> struct CorrespondencePair {
    WideSubgroupoid normal;
    std::vector<int> ideal_arrows;  // S1 = G1 \ N1
    Subspace<K> ideal;
    Subspace<K> coinvariants;
    QuotientGroupoid quotient;
};

template <class K> struct TheoremB {
    std::vector<CorrespondencePair<K>> pairs;
    Certification report;
};

// `limit` caps both the normal subgroupoid search and the arrow-subset scan.
template <class K>
TheoremB<K> theorem_B_bijection(const FunctionHopfAlgebroid<K>& h, const AdjointCoaction<K>& co,
                                std::optional<std::size_t> limit = std::nullopt);

// Characters of H, H/I and K, the coset bijection and the composition tables.
// Throws NotCertified when K is not the coinvariants of a normal Hopf ideal.
template <class K> Certification characters_and_quotient(const FunctionHopfAlgebroid<K>& h, const Subspace<K>& k);

template <class K> struct Pool {
    std::vector<Subspace<K>> members;
    std::size_t scanned = 0;
    bool truncated = false;
};

// Arrow subsets certified as left ideal two-sided coideals.
template <class K> Pool<K> arrow_ideal_pool(const FunctionHopfAlgebroid<K>& h, std::optional<std::size_t> limit = std::nullopt);
// Block indicator spans of partitions refining the target fibres, certified as comodule subrings.
template <class K> Pool<K> block_subring_pool(const FunctionHopfAlgebroid<K>& h, std::optional<std::size_t> limit = std::nullopt);

// Over F_p with dim H <= max_dim: every subspace of H is certified both ways
// and the certified ones must already lie in the pools.  Over Q: skipped.
template <class K>
Certification exhaustive_subspace_check(const FunctionHopfAlgebroid<K>& h, const Pool<K>& ideals, const Pool<K>& subrings,
                                        Index max_dim, std::optional<std::size_t> limit = std::nullopt);

// Every subspace of F_p^n, in reduced row echelon form.
std::vector<Subspace<Fp>> all_subspaces(Index n, std::optional<std::size_t> limit, bool& truncated);

// Purity verdict against injectivity of M -> H (x)_B M over a random module
// pool, and faithful flatness implying purity.
template <class K> Certification purity_agreement(const AlgMorphism<K>& iota, std::size_t pool_size, std::uint64_t seed);

}  // namespace hopfalgd

#endif
