#pragma once

#include "qpengine/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qp {

/* Sparse exact matrix with labelled bases. Rows index the source basis,
 * columns the target basis; entries (r, c) -> coefficient of target c in
 * the image of source r. */
struct SliceMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::map<std::pair<int, int>, Scalar> entries;

    int rows() const { return (int)row_labels.size(); }
    int cols() const { return (int)col_labels.size(); }
    void set(int r, int c, const Scalar& v);
    Scalar get(int r, int c) const;
    SliceMatrix transpose() const;
};

/* Exact rank by fraction-free (Bareiss) elimination on the cleared
 * integer matrix. */
int rank(const SliceMatrix& m);

/* Basis of the right kernel {x : x M = 0 over rows}: vectors over rows. */
std::vector<std::vector<Scalar>> kernel_rows(const SliceMatrix& m);

/* One solution x (over rows) of x M = b, or empty optional.
 * reverse_pivot selects an independent elimination order. */
bool solve_rows(const SliceMatrix& m, const std::vector<Scalar>& b, std::vector<Scalar>& x,
                bool reverse_pivot = false);

/* A window d_n : C^n -> C^{n+1} of a cochain complex over an
 * integer-degree interval. */
struct ComplexWindow {
    int first_degree = 0;
    std::vector<int> dims;                 // dims[i] = dim C^{first_degree + i}
    std::vector<SliceMatrix> maps;         // maps[i] = d : C^{fd+i} -> C^{fd+i+1}

    int degree_count() const { return (int)dims.size(); }
    int dim_at(int degree) const;
    const SliceMatrix* map_at(int degree) const;  // nullptr outside the window
    bool composite_zero() const;                  // d d = 0 on stored pairs
};

/* dim ker d_n - rank d_{n-1}; requires the window to cover n-1, n, n+1.
 * Throws WindowTooNarrow. */
int homology_dim(const ComplexWindow& w, int n);

}  // namespace qp
