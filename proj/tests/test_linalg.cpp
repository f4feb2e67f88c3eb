#include <doctest.h>

#include "qpengine/linalg.hpp"

#include <random>

using namespace qp;

namespace {

SliceMatrix make(int rows, int cols, std::vector<std::vector<int>> vals)
{
    SliceMatrix m;
    m.row_labels.assign(rows, "");
    m.col_labels.assign(cols, "");
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (vals[r][c] != 0)
                m.set(r, c, Scalar(vals[r][c]));
    return m;
}

}  // namespace

TEST_CASE("rank basics")
{
    CHECK(rank(make(3, 3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})) == 0);
    CHECK(rank(make(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(rank(make(2, 2, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("rank with fractional entries")
{
    SliceMatrix m;
    m.row_labels.assign(2, "");
    m.col_labels.assign(2, "");
    m.set(0, 0, Scalar(1) / 2);
    m.set(0, 1, Scalar(1) / 3);
    m.set(1, 0, Scalar(3) / 2);
    m.set(1, 1, Scalar(1));
    CHECK(rank(m) == 1);
}

TEST_CASE("rank equals rank of the transpose on random sparse matrices")
{
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 1 + (int)(rng() % 7), cols = 1 + (int)(rng() % 7);
        SliceMatrix m;
        m.row_labels.assign(rows, "");
        m.col_labels.assign(cols, "");
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() % 3 == 0)
                    m.set(r, c, Scalar((long)(rng() % 9) - 4));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("homology of tiny complexes")
{
    // 0 -> k -> 0
    ComplexWindow w;
    w.first_degree = -1;
    w.dims = {0, 1, 0};
    w.maps = {make(0, 1, {}), make(1, 0, {{}})};
    CHECK(homology_dim(w, 0) == 1);

    // k --id--> k
    ComplexWindow w2;
    w2.first_degree = -1;
    w2.dims = {0, 1, 1, 0};
    w2.maps = {make(0, 1, {}), make(1, 1, {{1}}), make(1, 0, {{}})};
    CHECK(homology_dim(w2, 0) == 0);
    CHECK(homology_dim(w2, 1) == 0);

    // k --0--> k
    ComplexWindow w3 = w2;
    w3.maps[1] = make(1, 1, {{0}});
    CHECK(homology_dim(w3, 0) == 1);
    CHECK(homology_dim(w3, 1) == 1);
}

TEST_CASE("window too narrow is reported")
{
    ComplexWindow w;
    w.first_degree = 0;
    w.dims = {1, 1};
    w.maps = {make(1, 1, {{0}})};
    CHECK_THROWS_WITH_AS(homology_dim(w, 0), doctest::Contains("WindowTooNarrow"),
                         EngineError);
}

TEST_CASE("homology is invariant under basis permutation")
{
    SliceMatrix d0 = make(2, 2, {{1, 1}, {0, 0}});
    ComplexWindow w;
    w.first_degree = -1;
    w.dims = {0, 2, 2, 0};
    w.maps = {make(0, 2, {}), d0, make(2, 0, {{}, {}})};
    int h = homology_dim(w, 0);
    // permute rows and columns
    SliceMatrix d0p = make(2, 2, {{0, 0}, {1, 1}});
    ComplexWindow wp = w;
    wp.maps[1] = d0p;
    CHECK(homology_dim(wp, 0) == h);
}

TEST_CASE("solve_rows finds exact solutions under both pivot orders")
{
    SliceMatrix m = make(3, 2, {{1, 2}, {0, 1}, {1, 0}});
    std::vector<Scalar> target = {Scalar(2), Scalar(3)};
    for (bool rev : {false, true}) {
        std::vector<Scalar> x;
        REQUIRE(solve_rows(m, target, x, rev));
        std::vector<Scalar> img(2, Scalar(0));
        for (const auto& [rc, v] : m.entries)
            img[rc.second] += x[rc.first] * v;
        CHECK(img == target);
    }
    std::vector<Scalar> impossible = {Scalar(0), Scalar(0)};
    SliceMatrix zero = make(1, 2, {{0, 0}});
    std::vector<Scalar> x;
    CHECK(solve_rows(zero, {Scalar(1), Scalar(0)}, x) == false);
}

TEST_CASE("kernel_rows spans the left kernel")
{
    SliceMatrix m = make(3, 2, {{1, 0}, {0, 1}, {1, 1}});
    auto ker = kernel_rows(m);
    REQUIRE(ker.size() == 1);
    for (int c = 0; c < 2; ++c) {
        Scalar s(0);
        for (int r = 0; r < 3; ++r)
            s += ker[0][r] * m.get(r, c);
        CHECK(is_zero(s));
    }
}

TEST_CASE("composite-zero detection")
{
    ComplexWindow w;
    w.first_degree = 0;
    w.dims = {1, 1, 1};
    w.maps = {make(1, 1, {{1}}), make(1, 1, {{1}})};
    CHECK(!w.composite_zero());
    w.maps[1] = make(1, 1, {{0}});
    CHECK(w.composite_zero());
}
