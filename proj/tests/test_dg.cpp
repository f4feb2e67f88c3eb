#include <doctest.h>

#include "fixtures.hpp"

#include "qpengine/homology.hpp"

using namespace qp;

namespace {

TensorElement word_te(const GeneratorSystem& g, std::vector<int> seq, Scalar c, int trunc)
{
    return normalize_sequence(g, seq, c, trunc);
}

}  // namespace

TEST_CASE("example 6.3: z-differentials reproduce the printed table")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 8);

    // t letters come after the ten generators: t1, t2, t3, t3i
    int t1 = p.gen.letter_index("t1");
    int t2 = p.gen.letter_index("t2");
    int t3 = p.gen.letter_index("t3");

    TensorElement want_t1 = te_zero(8);
    te_add(want_t1, word_te(p.gen, {f.b, f.bs}, Scalar(1), 8));
    te_add(want_t1, word_te(p.gen, {f.bi, f.bs}, Scalar(1), 8));
    te_add(want_t1, word_te(p.gen, {f.as, f.a}, Scalar(-1), 8));
    CHECK(p.diff.at(t1) == want_t1);

    TensorElement want_t2 = te_zero(8);
    te_add(want_t2, word_te(p.gen, {f.a, f.as}, Scalar(1), 8));
    te_add(want_t2, word_te(p.gen, {f.cs, f.c}, Scalar(-1), 8));
    te_add(want_t2, word_te(p.gen, {f.cs, f.ic}, Scalar(-1), 8));
    CHECK(p.diff.at(t2) == want_t2);

    // (1+i)(cc* - b*b) + (1-i)(cc* - b*b)i, expanded into basis words
    TensorElement want_t3 = te_zero(8);
    te_add(want_t3, word_te(p.gen, {f.c, f.cs}, Scalar(1), 8));
    te_add(want_t3, word_te(p.gen, {f.ic, f.cs}, Scalar(1), 8));
    te_add(want_t3, word_te(p.gen, {f.c, f.csi}, Scalar(1), 8));
    te_add(want_t3, word_te(p.gen, {f.ic, f.csi}, Scalar(-1), 8));
    te_add(want_t3, word_te(p.gen, {f.bs, f.b}, Scalar(-1), 8));
    te_add(want_t3, word_te(p.gen, {f.ibs, f.b}, Scalar(-1), 8));
    te_add(want_t3, word_te(p.gen, {f.bs, f.bi}, Scalar(-1), 8));
    te_add(want_t3, word_te(p.gen, {f.ibs, f.bi}, Scalar(1), 8));
    CHECK(p.diff.at(t3) == want_t3);
}

TEST_CASE("example 6.3: starred differentials")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 8);

    // d(b*) = -ca and d(c*) = -ab as printed
    TensorElement want_bs = word_te(p.gen, {f.c, f.a}, Scalar(-1), 8);
    CHECK(p.diff.at(f.bs) == want_bs);
    TensorElement want_cs = word_te(p.gen, {f.a, f.b}, Scalar(-1), 8);
    CHECK(p.diff.at(f.cs) == want_cs);

    // d(a*) = -b(1+i)c: the d^2-consistent completion of the printed -bc
    TensorElement want_as = te_zero(8);
    te_add(want_as, word_te(p.gen, {f.b, f.c}, Scalar(-1), 8));
    te_add(want_as, word_te(p.gen, {f.bi, f.c}, Scalar(-1), 8));
    CHECK(p.diff.at(f.as) == want_as);

    // l-bilinearity: d(ib*) = i d(b*), d(c*i) = d(c*) i
    TensorElement want_ibs = word_te(p.gen, {f.ic, f.a}, Scalar(-1), 8);
    CHECK(p.diff.at(f.ibs) == want_ibs);
    TensorElement want_csi = word_te(p.gen, {f.a, f.bi}, Scalar(-1), 8);
    CHECK(p.diff.at(f.csi) == want_csi);

    // plain letters are cycles
    CHECK(p.diff.at(f.a).is_zero());
    CHECK(p.diff.at(f.b).is_zero());
    CHECK(p.diff.at(f.ic).is_zero());
}

TEST_CASE("example 6.3: d squared vanishes at N = 8")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 8);
    DSquaredReport r = check_d_squared(p);
    CHECK(r.ok);
}

TEST_CASE("example 6.3: flipped sign breaks d squared with a witness")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 8);
    p.diff[f.as] = te_scale(p.diff[f.as], Scalar(-1));
    DSquaredReport r = check_d_squared(p);
    CHECK(!r.ok);
    CHECK(!r.remainder.is_zero());
    // the failure shows up at a t letter
    CHECK(p.gen.letter(r.witness_letter).name.substr(0, 1) == "t");
}

TEST_CASE("A2 quiver with zero potential")
{
    auto f = fixtures::a2_quiver();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    CHECK(p.diff.at(f.x).is_zero());
    CHECK(p.diff.at(f.xs).is_zero());
    int t1 = p.gen.letter_index("t1");
    int t2 = p.gen.letter_index("t2");
    CHECK(p.diff.at(t1) == word_te(p.gen, {f.xs, f.x}, Scalar(-1), 6));
    CHECK(p.diff.at(t2) == word_te(p.gen, {f.x, f.xs}, Scalar(1), 6));
    CHECK(check_d_squared(p).ok);
}

TEST_CASE("one loop with cubic potential")
{
    auto f = fixtures::one_loop();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    // d(x*) = -x^2 from the cyclic derivative of (1/3) x^3
    CHECK(p.diff.at(f.xs) == word_te(p.gen, {f.x, f.x}, Scalar(-1), 6));
    CHECK(check_d_squared(p).ok);
}

TEST_CASE("empty generator system builds the polynomial-like algebra on z")
{
    GeneratorSystem gen(fixtures::rational_components(2), {});
    DGPresentation p = build_preprojective(gen, {}, {}, 4, 5);
    CHECK(p.gen.size() == 2);  // just t1, t2 of degree 1 - 4
    for (const auto& [id, v] : p.diff) {
        (void)id;
        CHECK(v.is_zero());
    }
    CHECK(check_d_squared(p).ok);
}

TEST_CASE("graded Leibniz rule on random word pairs")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    std::vector<Word> basis0;
    for (int deg = -2; deg <= 0; ++deg) {
        // small pool of canonical words
        for (int id = 0; id < p.gen.size(); ++id)
            if (p.gen.letter(id).degree == deg)
                basis0.push_back(Word::of({id}));
    }
    int checked = 0;
    for (const auto& u : basis0)
        for (const auto& v : basis0) {
            if (word_source(p.gen, u) != word_target(p.gen, v))
                continue;
            TensorElement ue = te_word(p.gen, u, Scalar(1), 6);
            TensorElement ve = te_word(p.gen, v, Scalar(1), 6);
            TensorElement uv = multiply(p.gen, ue, ve);
            TensorElement lhs = apply_diff(p, uv);
            TensorElement rhs = multiply(p.gen, apply_diff(p, ue), ve);
            Scalar sign = (word_degree(p.gen, u) % 2) ? Scalar(-1) : Scalar(1);
            te_add(rhs, multiply(p.gen, ue, apply_diff(p, ve)), sign);
            CHECK(lhs == rhs);
            ++checked;
        }
    CHECK(checked > 20);
}

TEST_CASE("differentials raise degree by one")
{
    auto f = fixtures::example63();
    DGPresentation p = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    for (const auto& [id, v] : p.diff) {
        if (v.is_zero())
            continue;
        int deg = 0;
        CHECK(homogeneous_degree(p.gen, v, deg));
        CHECK(deg == p.gen.letter(id).degree + 1);
    }
}

TEST_CASE("truncation coherence of the construction")
{
    auto f = fixtures::example63();
    DGPresentation p8 = build_preprojective(f.gen, f.eta, f.w, 3, 8);
    DGPresentation p6 = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    for (const auto& [id, v] : p6.diff)
        CHECK(project_to(p8.diff.at(id), 6) == v);
    // products computed at N then projected agree with products at M < N
    TensorElement u = word_te(p8.gen, {f.b, f.c}, Scalar(1), 8);
    TensorElement w2 = word_te(p8.gen, {f.a, f.b, f.c}, Scalar(1), 8);
    TensorElement prod = multiply(p8.gen, u, multiply(p8.gen, w2, w2));
    TensorElement u6 = project_to(u, 6), w6 = project_to(w2, 6);
    CHECK(project_to(prod, 6) == multiply(p6.gen, u6, multiply(p6.gen, w6, w6)));
}

TEST_CASE("eta outside symplectic-pair form is refused")
{
    auto f = fixtures::one_loop();
    // pair the loop with itself: no generator pair of distinct letters exists
    std::vector<EtaEntry> bad = {{f.x, f.x, Scalar(1)}};
    CHECK_THROWS_WITH_AS(ham_differential(f.gen, bad, make_casimir(f.gen.base()), f.w, 4),
                         doctest::Contains("EtaNotSymplecticBasis"), EngineError);
}

TEST_CASE("gl morphism with empty frozen part reduces to the absolute case")
{
    auto f = fixtures::one_loop();
    // no frozen components at all
    GLMorphism m = build_gl_morphism(f.gen, {}, f.eta, f.w, {}, 3, 6);
    CHECK(m.source.gen.size() == 0);
    DGPresentation abs = build_preprojective(f.gen, f.eta, f.w, 3, 6);
    // target differential agrees with the absolute construction on letters
    for (int id = 0; id < f.gen.size(); ++id)
        CHECK(m.target.diff.at(id) == abs.diff.at(id));
}

TEST_CASE("gl morphism on a frozen vertex plus an unfrozen symplectic pair")
{
    // components: k1 frozen, k2 unfrozen; N = a loop pair at k2; F empty
    BaseRing l = fixtures::rational_components(2);
    l.frozen = {0};
    std::vector<Letter> ls = {fixtures::plain_letter("x", 1, 1, 0),
                              fixtures::plain_letter("x*", 1, 1, -1)};
    for (int id = 0; id < 2; ++id) {
        ls[id].left_action = {{{id, Scalar(1)}}};
        ls[id].right_action = {{{id, Scalar(1)}}};
    }
    GeneratorSystem gen(l, ls);
    std::vector<EtaEntry> eta = {{0, 1, Scalar(1)}, {1, 0, Scalar(-1)}};
    Potential w;
    pot_add(gen, w, Word::of({0, 0, 0}), Scalar(1) / 3);

    GLMorphism m = build_gl_morphism(gen, {}, eta, w, {}, 3, 6);
    // source is T_{l_F}(z_F l_F): one z letter of degree 2 - 3 = -1
    REQUIRE(m.source.gen.size() == 1);
    CHECK(m.source.gen.letter(0).degree == -1);
    CHECK(m.source.diff.at(0).is_zero());  // eta_F = 0
    // gamma(z_F) = sigma_F' eta sigma_F'' = 0: eta lives on the unfrozen vertex
    CHECK(m.gamma.at(m.source.z_letters[0]).is_zero());
    // target z letters only over the unfrozen component
    CHECK((int)m.target.z_letters.size() == 1);
    CHECK(check_d_squared(m.target).ok);
}

TEST_CASE("gl morphism with a genuine frozen letter is a chain map")
{
    // k1 frozen with a loop f (degree 0), k2 with a symplectic pair; d = 3:
    // R = Sigma^{0} DF gives the dual letter f^ of degree 0
    BaseRing l = fixtures::rational_components(2);
    l.frozen = {0};
    std::vector<Letter> ls = {fixtures::plain_letter("f", 0, 0, 0),
                              fixtures::plain_letter("x", 1, 1, 0),
                              fixtures::plain_letter("x*", 1, 1, -1)};
    for (int id = 0; id < 3; ++id) {
        ls[id].left_action = {{{id, Scalar(1)}}};
        ls[id].right_action = {{{id, Scalar(1)}}};
    }
    GeneratorSystem gen(l, ls);
    std::vector<EtaEntry> eta = {{1, 2, Scalar(1)}, {2, 1, Scalar(-1)}};
    Potential w;  // w in Tr T(F (+) N), no mixed terms possible across vertices
    pot_add(gen, w, Word::of({1, 1, 1}), Scalar(1) / 3);
    // w_F of degree 4 - d = 1 must be zero (letters sit in degree <= 0)
    GLMorphism m = build_gl_morphism(gen, {"f"}, eta, w, {}, 3, 6);
    CHECK(m.gamma.at(0) == te_word(m.target.gen, Word::of({0}), Scalar(1), 6));
    // gamma commutes with d (verified inside the builder; re-check here)
    for (int id = 0; id < m.source.gen.size(); ++id) {
        TensorElement lhs = apply_gl(m, m.source.diff.at(id));
        TensorElement rhs = apply_diff(m.target, m.gamma.at(id));
        CHECK(lhs == rhs);
    }
}
