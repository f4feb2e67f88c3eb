#pragma once

#include "qpengine/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace qp {

/* Finite Z-graded category with a trace family psi_X on Hom^d(X, X). */
struct GradedCatData {
    struct Mor {
        std::string name;
        int src = 0, dst = 0, degree = 0;
    };
    std::vector<std::string> objects;
    std::vector<Mor> mors;
    std::vector<int> identity_of;                              // per object
    std::map<std::pair<int, int>, std::map<int, Scalar>> comp; // (f, g) -> f o g
    std::map<int, Scalar> psi;                                 // on degree-d endos

    std::map<int, Scalar> compose(int f, int g) const;
    std::map<int, Scalar> compose(const std::map<int, Scalar>& f,
                                  const std::map<int, Scalar>& g) const;
    void validate(int d) const;
    std::vector<int> hom_basis(int x, int y, int degree) const;
};

/* <f, g> = psi_X(g o f) for f in Hom^m(X, Y), g in Hom^{d-m}(Y, X). */
SliceMatrix pairing_matrix(const GradedCatData& data, int x, int y, int m, int d);

struct CYReport {
    bool symmetric = true;
    bool nondegenerate = true;
    std::vector<std::string> failures;
};

/* Trace symmetry psi_X(g f) = (-1)^{|f||g|} psi_Y(f g) on composable basis
 * pairs, and blockwise perfectness of the pairing matrices. */
CYReport check_right_cy(const GradedCatData& data, int d);

/* Conjugates all hom bases by seeded random invertible matrices; the CY
 * verdicts must be invariant. */
GradedCatData random_basis_change(const GradedCatData& data, unsigned seed);

}  // namespace qp
