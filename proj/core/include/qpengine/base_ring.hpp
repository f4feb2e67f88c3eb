#pragma once

#include "qpengine/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qp {

/* An element of one base component, as coordinates over its k-basis. */
using CompElt = std::vector<Scalar>;

/* One commutative field-extension component of the semisimple base ring.
 * Basis element 0 is required to be the unit. */
struct BaseComponent {
    std::string name;
    std::vector<std::string> basis_names;             // size = dim
    std::vector<std::vector<CompElt>> mult;           // mult[i][j] = e_i * e_j
    std::vector<Scalar> trace_weights;                // Tr(e_i)

    int dim() const { return (int)basis_names.size(); }

    CompElt unit() const
    {
        CompElt u(dim(), Scalar(0));
        u[0] = 1;
        return u;
    }

    CompElt multiply(const CompElt& x, const CompElt& y) const;
    Scalar trace(const CompElt& x) const;

    /* Unital at basis 0, commutative, associative: enumerated check. */
    void validate() const;
};

struct BaseRing {
    std::vector<BaseComponent> components;
    std::set<int> frozen;   // indices of the l_F components, possibly empty

    int component_index(const std::string& name) const;
    int total_dim() const;
    void validate() const;
};

/* Dual-basis pairs (e_k, e^k) for one component's trace form. */
struct CasimirComponent {
    std::vector<CompElt> left;    // e_k
    std::vector<CompElt> right;   // e^k
};

struct Casimir {
    std::vector<CasimirComponent> per_component;

    /* Sum of the left legs, one element per component ("evaluated" sigma'). */
    CompElt theta(const BaseComponent& c, int comp_index) const;
};

/* Inverts the trace Gram matrix per component. Throws SingularTrace. */
Casimir make_casimir(const BaseRing& l);

/* Dual-basis identity: sum_k Tr(x e_k) e^k == x for every basis x. */
bool casimir_dual_basis_identity(const BaseRing& l, const Casimir& sigma);

}  // namespace qp
