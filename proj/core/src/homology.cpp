#include "qpengine/homology.hpp"

namespace qp {

namespace {

DGPresentation at_truncation(const DGPresentation& p, int trunc)
{
    DGPresentation q = p;
    q.trunc = trunc;
    for (auto& [id, v] : q.diff) {
        (void)id;
        v = project_to(v, trunc);
    }
    return q;
}

int h0_dim(const DGPresentation& p)
{
    std::vector<Word> deg0 = word_basis(p.gen, 0, p.trunc);
    SliceMatrix d_from_minus1 = dga_slice(p, -1);
    // nothing maps out of degree 0 beyond the window edge: generators sit in
    // degrees <= 0, so d raises degree-0 words out of the algebra => ker = all
    return (int)deg0.size() - rank(d_from_minus1);
}

}  // namespace

int h_dim(const DGPresentation& p, int degree, int trunc)
{
    DGPresentation q = at_truncation(p, trunc);
    ComplexWindow w = dga_window(q, degree - 1, degree + 1);
    return homology_dim(w, degree);
}

JacobianPresentation jacobian_presentation(const DGPresentation& p, int trunc)
{
    JacobianPresentation out;
    DGPresentation q = at_truncation(p, trunc);

    std::vector<Word> deg0 = word_basis(q.gen, 0, q.trunc);
    SliceMatrix d1 = dga_slice(q, -1);
    // complement of the image of d inside the degree-0 slice: eliminate the
    // image rows and keep the non-pivot basis words
    std::vector<std::vector<Scalar>> image;
    {
        std::vector<std::vector<Scalar>> rowsv(d1.rows(),
                                               std::vector<Scalar>(d1.cols(), Scalar(0)));
        for (const auto& [rc, v] : d1.entries)
            rowsv[rc.first][rc.second] = v;
        image = std::move(rowsv);
    }
    // row reduce, collect pivot columns
    std::vector<int> pivots;
    {
        int rows = (int)image.size(), cols = rows ? (int)image[0].size() : (int)deg0.size();
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (!is_zero(image[i][c])) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            std::swap(image[r], image[piv]);
            Scalar inv = 1 / image[r][c];
            for (auto& x : image[r])
                x *= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || is_zero(image[i][c]))
                    continue;
                Scalar f = image[i][c];
                for (int j = 0; j < cols; ++j)
                    image[i][j] -= f * image[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
    }
    std::set<int> pivot_set(pivots.begin(), pivots.end());
    for (int j = 0; j < (int)deg0.size(); ++j)
        if (!pivot_set.count(j))
            out.basis.push_back(deg0[j]);

    int dim_n = (int)out.basis.size();
    DGPresentation q1 = at_truncation(p, trunc + 1);
    int dim_n1 = h0_dim(q1);
    out.dim.value = dim_n;
    out.dim.stable = (dim_n == dim_n1);
    out.dim.witness_levels = {trunc, trunc + 1};
    return out;
}

}  // namespace qp
