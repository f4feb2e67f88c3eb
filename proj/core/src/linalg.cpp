#include "qpengine/linalg.hpp"

#include <algorithm>

namespace qp {

void SliceMatrix::set(int r, int c, const Scalar& v)
{
    if (is_zero(v))
        entries.erase({r, c});
    else
        entries[{r, c}] = v;
}

Scalar SliceMatrix::get(int r, int c) const
{
    auto it = entries.find({r, c});
    return it == entries.end() ? Scalar(0) : it->second;
}

SliceMatrix SliceMatrix::transpose() const
{
    SliceMatrix t;
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    for (const auto& [rc, v] : entries)
        t.entries[{rc.second, rc.first}] = v;
    return t;
}

int rank(const SliceMatrix& m)
{
    if (m.entries.empty())
        return 0;
    // clear denominators row-wise, then Bareiss on integers
    std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
    for (int r = 0; r < m.rows(); ++r) {
        mpz_class lcm = 1;
        for (int c = 0; c < m.cols(); ++c) {
            Scalar v = m.get(r, c);
            if (!is_zero(v))
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        }
        for (int c = 0; c < m.cols(); ++c) {
            Scalar v = m.get(r, c) * lcm;
            a[r][c] = v.get_num();
        }
    }
    int rows = m.rows(), cols = m.cols();
    int rk = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols && rk < rows; ++col) {
        int piv = -1;
        for (int r = rk; r < rows; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[rk], a[piv]);
        for (int r = rk + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                a[r][c] = a[rk][col] * a[r][c] - a[r][col] * a[rk][c];
                mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        prev = a[rk][col];
        ++rk;
    }
    return rk;
}

namespace {

/* Dense rational elimination on [M | I]; used for kernels and solving. */
struct RowReduction {
    std::vector<std::vector<Scalar>> mat;   // reduced copy of M (rows x cols)
    std::vector<std::vector<Scalar>> ops;   // row operations applied to I
    std::vector<int> pivot_col_of_row;      // -1 for zero rows

    RowReduction(const SliceMatrix& m, bool reverse_pivot)
        : mat(m.rows(), std::vector<Scalar>(m.cols(), Scalar(0))),
          ops(m.rows(), std::vector<Scalar>(m.rows(), Scalar(0))),
          pivot_col_of_row(m.rows(), -1)
    {
        for (const auto& [rc, v] : m.entries)
            mat[rc.first][rc.second] = v;
        for (int r = 0; r < m.rows(); ++r)
            ops[r][r] = 1;
        int rows = m.rows(), cols = m.cols();
        int r = 0;
        for (int ci = 0; ci < cols && r < rows; ++ci) {
            int col = reverse_pivot ? cols - 1 - ci : ci;
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (!is_zero(mat[i][col])) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            std::swap(mat[r], mat[piv]);
            std::swap(ops[r], ops[piv]);
            Scalar inv = 1 / mat[r][col];
            for (auto& x : mat[r])
                x *= inv;
            for (auto& x : ops[r])
                x *= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || is_zero(mat[i][col]))
                    continue;
                Scalar f = mat[i][col];
                for (int c = 0; c < cols; ++c)
                    mat[i][c] -= f * mat[r][c];
                for (int c = 0; c < rows; ++c)
                    ops[i][c] -= f * ops[r][c];
            }
            pivot_col_of_row[r] = col;
            ++r;
        }
    }
};

}  // namespace

std::vector<std::vector<Scalar>> kernel_rows(const SliceMatrix& m)
{
    RowReduction rr(m, false);
    std::vector<std::vector<Scalar>> out;
    for (int r = 0; r < m.rows(); ++r)
        if (rr.pivot_col_of_row[r] < 0)
            out.push_back(rr.ops[r]);
    return out;
}

bool solve_rows(const SliceMatrix& m, const std::vector<Scalar>& b, std::vector<Scalar>& x,
                bool reverse_pivot)
{
    RowReduction rr(m, reverse_pivot);
    std::vector<Scalar> residual = b;
    x.assign(m.rows(), Scalar(0));
    for (int r = 0; r < m.rows(); ++r) {
        int pc = rr.pivot_col_of_row[r];
        if (pc < 0)
            continue;
        Scalar coeff = residual[pc] / rr.mat[r][pc];
        if (is_zero(coeff))
            continue;
        for (int c = 0; c < m.cols(); ++c)
            residual[c] -= coeff * rr.mat[r][c];
        for (int c = 0; c < m.rows(); ++c)
            x[c] += coeff * rr.ops[r][c];
    }
    for (const auto& v : residual)
        if (!is_zero(v))
            return false;
    return true;
}

int ComplexWindow::dim_at(int degree) const
{
    int i = degree - first_degree;
    return (i < 0 || i >= (int)dims.size()) ? 0 : dims[i];
}

const SliceMatrix* ComplexWindow::map_at(int degree) const
{
    int i = degree - first_degree;
    return (i < 0 || i >= (int)maps.size()) ? nullptr : &maps[i];
}

bool ComplexWindow::composite_zero() const
{
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        const SliceMatrix& a = maps[i];
        const SliceMatrix& b = maps[i + 1];
        // (a then b): for each row r of a, image composed with b must vanish
        std::map<std::pair<int, int>, Scalar> prod;
        for (const auto& [rc, v] : a.entries)
            for (const auto& [cd, w] : b.entries) {
                if (cd.first != rc.second)
                    continue;
                auto key = std::make_pair(rc.first, cd.second);
                Scalar s = prod[key] + v * w;
                if (is_zero(s))
                    prod.erase(key);
                else
                    prod[key] = s;
            }
        if (!prod.empty())
            return false;
    }
    return true;
}

int homology_dim(const ComplexWindow& w, int n)
{
    // the window must cover n-1, n, n+1
    int i = n - w.first_degree;
    if (i < 1 || i + 1 >= (int)w.dims.size())
        throw EngineError("WindowTooNarrow",
                          "window does not cover degrees around " + std::to_string(n));
    const SliceMatrix* dn = w.map_at(n);
    const SliceMatrix* dp = w.map_at(n - 1);
    return w.dims[i] - (dn ? rank(*dn) : 0) - (dp ? rank(*dp) : 0);
}

}  // namespace qp
