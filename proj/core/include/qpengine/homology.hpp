#pragma once

#include "qpengine/slices.hpp"

namespace qp {

struct StabilizedDim {
    int value = -1;
    bool stable = false;
    std::pair<int, int> witness_levels = {0, 0};
};

/* Homology dimension of the presented algebra at one degree and truncation.
 * Requires a presentation that passed check_d_squared. */
int h_dim(const DGPresentation& p, int degree, int trunc);

struct JacobianPresentation {
    std::vector<Word> basis;       // degree-0 words spanning H^0 at the truncation
    StabilizedDim dim;
};

/* H^0 = degree-0 words modulo the image of d from degree -1, with a
 * stabilization verdict comparing truncations N and N+1. */
JacobianPresentation jacobian_presentation(const DGPresentation& p, int trunc);

}  // namespace qp
