#pragma once

#include "qpengine/fin_algebra.hpp"
#include "qpengine/linalg.hpp"

namespace qp {

/* Raw Hochschild chains over an l-adapted basis. Algebra case: slots
 * a_1 (x) ... (x) a_p; coefficients case: an extra m slot in front. */
struct HChain {
    int m = -1;  // -1 for the algebra case
    std::vector<int> slots;

    int p() const { return (int)slots.size(); }
    auto operator<=>(const HChain&) const = default;
};

using HElement = std::map<HChain, Scalar>;

void hel_add(HElement& into, const HChain& c, const Scalar& v);
void hel_add_scaled(HElement& into, const HElement& v, const Scalar& c);

/* The paper's operators, on raw chains. Signs are implemented verbatim. */
HElement bar_internal(const FinGradedAlgebra& a, const HChain& c);  // termwise d(a_i)
HElement bar_bprime(const FinGradedAlgebra& a, const HChain& c);
HElement hoch_b(const FinGradedAlgebra& a, const HChain& c);        // algebra case
HElement connes_tau(const FinGradedAlgebra& a, const HChain& c);
HElement connes_norm(const FinGradedAlgebra& a, const HChain& c);   // sum tau^i

/* Coefficients case with M = A as a bimodule (m slot in front). */
HElement coeff_internal(const FinGradedAlgebra& a, const HChain& c);
HElement coeff_b(const FinGradedAlgebra& a, const HChain& c);

int chain_internal_degree(const FinGradedAlgebra& a, const HChain& c);
bool chain_cyclic(const FinGradedAlgebra& a, const HChain& c);

/* Basis of the l-coinvariant space of cyclically composable p-chains of
 * internal degree s, with the reduction map onto the chosen basis. */
class CoinvariantChains {
public:
    CoinvariantChains() = default;
    CoinvariantChains(const FinGradedAlgebra& a, int p, int s, bool with_m);

    const std::vector<HChain>& raw() const { return raw_; }
    int reduced_dim() const { return (int)reduced_.size(); }
    const HChain& reduced_rep(int i) const { return raw_[reduced_[i]]; }
    std::vector<Scalar> reduce(const HElement& v) const;

private:
    std::vector<HChain> raw_;
    std::map<HChain, int> index_;
    std::vector<std::vector<Scalar>> rel_rows_;
    std::vector<int> reduced_;
};

/* Block-labelled window of a totalized complex. */
struct PartKey {
    char kind;  // 'C', 'B' (mixed-complex parts) or 'M' (coefficients)
    int p;
    int column;  // tower column for HC/HN, else 0
    auto operator<=>(const PartKey&) const = default;
};

struct LabelledWindow {
    int first_degree = 0;
    std::vector<std::map<PartKey, std::pair<int, int>>> layout;  // key -> (offset, dim)
    ComplexWindow window;

    int dim(int degree) const { return window.dim_at(degree); }
};

/* The mixed complex M(A) = cone(1 - tau: B+(A)_l -> C(A)) truncated at
 * tensor length p_max, over the degree interval [lo, hi], together with
 * the t operator M^n -> M^{n-1}. */
struct MixedWindow {
    LabelledWindow lw;
    std::vector<SliceMatrix> t_maps;  // index i: t at degree lo+1+i
};
MixedWindow mixed_complex(const FinGradedAlgebra& a, int p_max, int lo, int hi);

struct TruncatedDim {
    int dim = 0;
    bool truncation_insufficient = false;
};

/* Homology dimensions of the truncated realizations (HH_n = H^{-n}).
 * hh_dims uses the underlying complex of M(A); hh_coeff_dims the
 * (M (x) A^{(x)p})_l model with M = A. */
TruncatedDim hh_dims(const FinGradedAlgebra& a, int n, int p_max);
TruncatedDim hh_coeff_dims(const FinGradedAlgebra& a, int n, int p_max);
/* HC via M(A) <- Sigma^2 M(A) <- ... glued by t; HN via the dual tower. */
TruncatedDim hc_dims(const FinGradedAlgebra& a, int n, int p_max, int column_cap);
TruncatedDim hn_dims(const FinGradedAlgebra& a, int n, int p_max, int column_cap);

/* Ext_A(l, l) dimensions through the length-truncated dual bar complex on
 * the augmentation ideal. Throws NoAugmentation. */
TruncatedDim koszul_ext(const FinGradedAlgebra& a, int n, int p_max);

struct SmoothnessReport {
    std::vector<int> ext_dims;  // n = 0 .. degree_cap
    bool proper_up_to_cap = false;
    bool any_truncation_flag = false;
};
SmoothnessReport smoothness_probe(const FinGradedAlgebra& a, int degree_cap, int p_max);

}  // namespace qp
