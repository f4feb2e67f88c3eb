#pragma once

#include "qpengine/base_ring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qp {

/* Finite-dimensional graded algebra over a separable base l, with an
 * l-adapted homogeneous k-basis. Basis element i carries source/target
 * components; products follow the word convention (x y: y acts first).
 * unit_slot maps (component, component-basis) to the algebra basis element
 * realising it, so l sits inside the basis. */
class FinGradedAlgebra {
public:
    struct BasisElt {
        std::string name;
        int source = 0;
        int target = 0;
        int degree = 0;
    };

    BaseRing base;
    std::vector<BasisElt> basis;
    std::map<std::pair<int, int>, int> unit_slot;
    std::vector<std::vector<std::map<int, Scalar>>> mult;  // mult[i][j] = b_i b_j
    std::vector<std::map<int, Scalar>> diff;               // d(b_i)
    bool augmented = false;  // the non-unit basis spans a two-sided ideal

    int dim() const { return (int)basis.size(); }
    bool is_unit_elt(int i) const;
    std::vector<int> ideal_elements() const;

    std::map<int, Scalar> product(int i, int j) const { return mult[i][j]; }
    std::map<int, Scalar> product(const std::map<int, Scalar>& x,
                                  const std::map<int, Scalar>& y) const;

    /* associativity, unit, degree bookkeeping, Leibniz, d^2 = 0,
     * and the augmentation splitting if claimed */
    void validate() const;
};

/* Common small constructions used by fixtures and tests. */
FinGradedAlgebra dual_numbers();                   // k[x]/(x^2), |x| = 0
FinGradedAlgebra dual_numbers_graded(int xdeg);    // k[x]/(x^2), |x| = xdeg
FinGradedAlgebra path_algebra_a2();                // k-quiver 1 --a--> 2
FinGradedAlgebra truncated_polynomial(int n);      // k[x]/(x^n), |x| = 0
FinGradedAlgebra base_only(const BaseRing& l);     // A = l

}  // namespace qp
