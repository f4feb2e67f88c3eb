#pragma once

#include "qpengine/rational.hpp"

#include <optional>
#include <vector>

namespace qp::detail {

using Mat = std::vector<std::vector<Scalar>>;

/* Row-reduce in place; returns pivot columns. */
inline std::vector<int> rref(Mat& m)
{
    std::vector<int> pivots;
    if (m.empty())
        return pivots;
    int rows = (int)m.size(), cols = (int)m[0].size(), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!is_zero(m[i][c])) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[r], m[piv]);
        Scalar inv = 1 / m[r][c];
        for (int j = c; j < cols; ++j)
            m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c]))
                continue;
            Scalar f = m[i][c];
            for (int j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(Mat m) { return (int)rref(m).size(); }

/* One solution of M x = b, or nullopt. */
inline std::optional<std::vector<Scalar>> solve(const Mat& m, const std::vector<Scalar>& b)
{
    int rows = (int)m.size();
    int cols = rows ? (int)m[0].size() : 0;
    Mat aug(rows, std::vector<Scalar>(cols + 1, Scalar(0)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j)
            aug[i][j] = m[i][j];
        aug[i][cols] = b[i];
    }
    auto pivots = rref(aug);
    std::vector<Scalar> x(cols, Scalar(0));
    int r = 0;
    for (int c : pivots) {
        if (c == cols)
            return std::nullopt;  // inconsistent row
        x[c] = aug[r][cols];
        ++r;
    }
    return x;
}

/* Basis of the null space of M (columns = unknowns). Each basis vector has
 * value 1 at its own free column and 0 at the others, so coordinates of a
 * span member can be read off at the free columns. */
inline std::vector<std::vector<Scalar>> null_space(Mat m, std::vector<int>* free_cols = nullptr)
{
    int cols = m.empty() ? 0 : (int)m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[free] = 1;
        for (int r = 0; r < (int)pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
        if (free_cols)
            free_cols->push_back(free);
    }
    return basis;
}

}  // namespace qp::detail
