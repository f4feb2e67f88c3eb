#include <doctest.h>

#include "qpengine/cy.hpp"

#include <set>

using namespace qp;

namespace {

/* one object, End = span{1 (deg 0), u (deg d)}, u^2 = 0 */
GradedCatData one_u_fixture(int d, const Scalar& psi_u)
{
    GradedCatData g;
    g.objects = {"X"};
    g.mors = {{"1", 0, 0, 0}, {"u", 0, 0, d}};
    g.identity_of = {0};
    g.comp[{0, 0}] = {{0, Scalar(1)}};
    g.comp[{0, 1}] = {{1, Scalar(1)}};
    g.comp[{1, 0}] = {{1, Scalar(1)}};
    if (!is_zero(psi_u))
        g.psi[1] = psi_u;
    return g;
}

/* two objects with 2-dimensional cross homs in degrees 0 and d */
GradedCatData two_object_fixture(int d, bool degenerate)
{
    GradedCatData g;
    g.objects = {"X", "Y"};
    g.mors = {{"1X", 0, 0, 0}, {"1Y", 1, 1, 0}};
    g.identity_of = {0, 1};
    // f1, f2: X -> Y degree 0; g1, g2: Y -> X degree d
    g.mors.push_back({"f1", 0, 1, 0});
    g.mors.push_back({"f2", 0, 1, 0});
    g.mors.push_back({"g1", 1, 0, d});
    g.mors.push_back({"g2", 1, 0, d});
    // top classes uX: X -> X deg d, uY: Y -> Y deg d
    g.mors.push_back({"uX", 0, 0, d});
    g.mors.push_back({"uY", 1, 1, d});
    int f1 = 2, f2 = 3, g1 = 4, g2 = 5, ux = 6, uy = 7;
    for (int f = 0; f < (int)g.mors.size(); ++f) {
        g.comp[{g.identity_of[g.mors[f].dst], f}] = {{f, Scalar(1)}};
        if (f != g.identity_of[g.mors[f].src] || g.mors[f].src != g.mors[f].dst)
            g.comp[{f, g.identity_of[g.mors[f].src]}] = {{f, Scalar(1)}};
    }
    // pairing g_j o f_i in End^d(X), f_i o g_j in End^d(Y)
    g.comp[{g1, f1}] = {{ux, Scalar(1)}};
    g.comp[{f1, g1}] = {{uy, Scalar(1)}};
    if (!degenerate) {
        g.comp[{g2, f2}] = {{ux, Scalar(1)}};
        g.comp[{f2, g2}] = {{uy, Scalar(1)}};
    }
    g.psi[ux] = Scalar(1);
    g.psi[uy] = Scalar(1);
    return g;
}

}  // namespace

TEST_CASE("pairing matrix rows realize psi against the identity")
{
    GradedCatData g = one_u_fixture(3, Scalar(1));
    SliceMatrix m = pairing_matrix(g, 0, 0, 0, 3);
    // bases: Hom^0 = {1}, Hom^3 = {u}; <1, u> = psi(u o 1) = 1
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(m.get(0, 0) == Scalar(1));
}

TEST_CASE("right CY verdicts on the (1, u) fixture")
{
    CYReport ok = check_right_cy(one_u_fixture(3, Scalar(1)), 3);
    CHECK(ok.symmetric);
    CHECK(ok.nondegenerate);

    CYReport bad = check_right_cy(one_u_fixture(3, Scalar(0)), 3);
    CHECK(!bad.nondegenerate);
    CHECK(!bad.failures.empty());
}

TEST_CASE("rescaling psi by a global unit preserves the verdicts")
{
    GradedCatData g = one_u_fixture(3, Scalar(7) / 3);
    CYReport r = check_right_cy(g, 3);
    CHECK(r.symmetric);
    CHECK(r.nondegenerate);
}

TEST_CASE("a rank-deficient cross pairing is pinpointed")
{
    GradedCatData g = two_object_fixture(2, true);
    CYReport r = check_right_cy(g, 2);
    CHECK(!r.nondegenerate);
    bool found = false;
    for (const auto& f : r.failures)
        found = found || f.find("(X, Y, degree 0)") != std::string::npos;
    CHECK(found);

    GradedCatData good = two_object_fixture(2, false);
    CYReport r2 = check_right_cy(good, 2);
    CHECK(r2.symmetric);
    CHECK(r2.nondegenerate);
}

TEST_CASE("nondegeneracy forces the dimension symmetry")
{
    GradedCatData g = two_object_fixture(2, false);
    CYReport r = check_right_cy(g, 2);
    REQUIRE(r.nondegenerate);
    std::set<int> degs;
    for (const auto& m : g.mors)
        degs.insert(m.degree);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int m : degs)
                CHECK(g.hom_basis(x, y, m).size() == g.hom_basis(y, x, 2 - m).size());
}

TEST_CASE("verdicts are invariant under seeded random basis changes")
{
    GradedCatData good = two_object_fixture(2, false);
    GradedCatData bad = two_object_fixture(2, true);
    for (unsigned seed = 1; seed <= 10; ++seed) {
        GradedCatData g2 = random_basis_change(good, seed);
        CYReport r = check_right_cy(g2, 2);
        CHECK(r.symmetric);
        CHECK(r.nondegenerate);
        GradedCatData b2 = random_basis_change(bad, seed);
        CHECK(!check_right_cy(b2, 2).nondegenerate);
    }
}
