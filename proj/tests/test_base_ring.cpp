#include <doctest.h>

#include "fixtures.hpp"

using namespace qp;

TEST_CASE("casimir of a single rational component is (1, 1)")
{
    BaseRing l = fixtures::rational_components(1);
    Casimir s = make_casimir(l);
    REQUIRE(s.per_component[0].left.size() == 1);
    CHECK(s.per_component[0].left[0] == CompElt{Scalar(1)});
    CHECK(s.per_component[0].right[0] == CompElt{Scalar(1)});
    CHECK(casimir_dual_basis_identity(l, s));
}

TEST_CASE("casimir of the gauss component under the real-part trace")
{
    BaseRing l;
    l.components.push_back(fixtures::gauss_component("C"));
    Casimir s = make_casimir(l);
    // dual pairs (1, 1) and (u, -u) from the Gram matrix [[1,0],[0,-1]]
    REQUIRE(s.per_component[0].left.size() == 2);
    CHECK(s.per_component[0].left[0] == CompElt{Scalar(1), Scalar(0)});
    CHECK(s.per_component[0].right[0] == CompElt{Scalar(1), Scalar(0)});
    CHECK(s.per_component[0].left[1] == CompElt{Scalar(0), Scalar(1)});
    CHECK(s.per_component[0].right[1] == CompElt{Scalar(0), Scalar(-1)});
    CHECK(casimir_dual_basis_identity(l, s));
}

TEST_CASE("casimir of the example 6.3 base")
{
    auto f = fixtures::example63();
    Casimir s = make_casimir(f.gen.base());
    CHECK(s.per_component.size() == 3);
    CHECK(s.per_component[2].left[1] == CompElt{Scalar(0), Scalar(1)});
    CHECK(s.per_component[2].right[1] == CompElt{Scalar(0), Scalar(-1)});
    CHECK(casimir_dual_basis_identity(f.gen.base(), s));
}

TEST_CASE("singular trace is rejected")
{
    BaseRing l = fixtures::rational_components(1);
    l.components[0].trace_weights = {Scalar(0)};
    CHECK_THROWS_WITH_AS(make_casimir(l), doctest::Contains("SingularTrace"), EngineError);
}

TEST_CASE("component validation catches a broken unit")
{
    BaseComponent c;
    c.name = "bad";
    c.basis_names = {"1"};
    c.mult = {{{Scalar(2)}}};  // 1 * 1 = 2
    c.trace_weights = {Scalar(1)};
    CHECK_THROWS_AS(c.validate(), EngineError);
}

TEST_CASE("scalar parsing and printing")
{
    CHECK(scalar_str(parse_scalar("2/4")) == "1/2");
    CHECK(scalar_str(parse_scalar("-6/3")) == "-2");
    CHECK_THROWS_AS(parse_scalar("x"), EngineError);
}
