#pragma once

#include "qpengine/dg.hpp"
#include "qpengine/linalg.hpp"

namespace qp {

/* All canonical words of the given degree and length <= trunc, in canonical
 * order: unit words per component basis (degree 0), then letter words. */
std::vector<Word> word_basis(const GeneratorSystem& gen, int degree, int trunc);

/* Matrix of d on the degree slice: rows = basis at `degree`, columns =
 * basis at `degree + 1`. */
SliceMatrix dga_slice(const DGPresentation& p, int degree);

/* Window of slices covering [lo, hi]; maps for lo..hi-1. */
ComplexWindow dga_window(const DGPresentation& p, int lo, int hi);

}  // namespace qp
