#pragma once

#include "qpengine/dg.hpp"

namespace qp::fixtures {

inline BaseRing rational_components(int n)
{
    BaseRing l;
    for (int i = 0; i < n; ++i) {
        BaseComponent c;
        c.name = "k" + std::to_string(i + 1);
        c.basis_names = {"1"};
        c.mult = {{{Scalar(1)}}};
        c.trace_weights = {Scalar(1)};
        l.components.push_back(std::move(c));
    }
    return l;
}

inline BaseComponent gauss_component(const std::string& name)
{
    // Q adjoined a square root of -1, trace = real part
    BaseComponent c;
    c.name = name;
    c.basis_names = {"1", "i"};
    c.mult.assign(2, std::vector<CompElt>(2, CompElt(2, Scalar(0))));
    c.mult[0][0] = {Scalar(1), Scalar(0)};
    c.mult[0][1] = {Scalar(0), Scalar(1)};
    c.mult[1][0] = {Scalar(0), Scalar(1)};
    c.mult[1][1] = {Scalar(-1), Scalar(0)};
    c.trace_weights = {Scalar(1), Scalar(0)};
    return c;
}

inline Letter plain_letter(const std::string& name, int src, int tgt, int deg)
{
    Letter l;
    l.name = name;
    l.source = src;
    l.target = tgt;
    l.degree = deg;
    return l;
}

struct Example63 {
    GeneratorSystem gen;
    std::vector<EtaEntry> eta;
    Potential w;
    // letter ids
    int a, b, bi, c, ic, as, bs, ibs, cs, csi;
};

/* The three-vertex species with base R x R x C, the double's ten letters,
 * eta pinned by the printed t-differentials, and W = abc. */
inline Example63 example63()
{
    BaseRing l = rational_components(2);
    l.components.push_back(gauss_component("C"));

    std::vector<Letter> ls;
    auto add = [&](const std::string& n, int s, int t, int d) {
        ls.push_back(plain_letter(n, s, t, d));
        return (int)ls.size() - 1;
    };
    Example63 f{GeneratorSystem{}, {}, {}, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    f.a = add("a", 0, 1, 0);
    f.b = add("b", 2, 0, 0);
    f.bi = add("bi", 2, 0, 0);
    f.c = add("c", 1, 2, 0);
    f.ic = add("ic", 1, 2, 0);
    f.as = add("a*", 1, 0, -1);
    f.bs = add("b*", 0, 2, -1);
    f.ibs = add("ib*", 0, 2, -1);
    f.cs = add("c*", 2, 1, -1);
    f.csi = add("c*i", 2, 1, -1);

    // default unit actions
    for (auto& lt : ls) {
        lt.left_action.assign(l.components[lt.target].dim(), {});
        lt.right_action.assign(l.components[lt.source].dim(), {});
    }
    for (int id = 0; id < (int)ls.size(); ++id) {
        ls[id].left_action[0] = {{id, Scalar(1)}};
        ls[id].right_action[0] = {{id, Scalar(1)}};
    }
    // i-actions on the C-sided letters
    ls[f.b].right_action[1] = {{f.bi, Scalar(1)}};
    ls[f.bi].right_action[1] = {{f.b, Scalar(-1)}};
    ls[f.c].left_action[1] = {{f.ic, Scalar(1)}};
    ls[f.ic].left_action[1] = {{f.c, Scalar(-1)}};
    ls[f.bs].left_action[1] = {{f.ibs, Scalar(1)}};
    ls[f.ibs].left_action[1] = {{f.bs, Scalar(-1)}};
    ls[f.cs].right_action[1] = {{f.csi, Scalar(1)}};
    ls[f.csi].right_action[1] = {{f.cs, Scalar(-1)}};

    f.gen = GeneratorSystem(std::move(l), std::move(ls));
    f.eta = {
        {f.a, f.as, Scalar(1)},   {f.b, f.bs, Scalar(1)},   {f.bi, f.bs, Scalar(1)},
        {f.c, f.cs, Scalar(1)},   {f.ic, f.cs, Scalar(1)},  {f.as, f.a, Scalar(-1)},
        {f.bs, f.b, Scalar(-1)},  {f.ibs, f.b, Scalar(-1)}, {f.cs, f.c, Scalar(-1)},
        {f.cs, f.ic, Scalar(-1)},
    };
    pot_add(f.gen, f.w, Word::of({f.a, f.b, f.c}), Scalar(1));
    return f;
}

struct QuiverFixture {
    GeneratorSystem gen;
    std::vector<EtaEntry> eta;
    Potential w;
    int x, xs;  // the (first) symplectic pair
};

/* A2 quiver a: 1 -> 2 with W = 0 at d = 3. */
inline QuiverFixture a2_quiver()
{
    BaseRing l = rational_components(2);
    std::vector<Letter> ls = {plain_letter("a", 0, 1, 0), plain_letter("a*", 1, 0, -1)};
    for (int id = 0; id < 2; ++id) {
        ls[id].left_action = {{{id, Scalar(1)}}};
        ls[id].right_action = {{{id, Scalar(1)}}};
    }
    QuiverFixture f{GeneratorSystem(std::move(l), std::move(ls)), {}, {}, 0, 1};
    f.eta = {{0, 1, Scalar(1)}, {1, 0, Scalar(-1)}};
    return f;
}

/* One loop x with W = (1/3) x^3 at d = 3. */
inline QuiverFixture one_loop()
{
    BaseRing l = rational_components(1);
    std::vector<Letter> ls = {plain_letter("x", 0, 0, 0), plain_letter("x*", 0, 0, -1)};
    for (int id = 0; id < 2; ++id) {
        ls[id].left_action = {{{id, Scalar(1)}}};
        ls[id].right_action = {{{id, Scalar(1)}}};
    }
    QuiverFixture f{GeneratorSystem(std::move(l), std::move(ls)), {}, {}, 0, 1};
    f.eta = {{0, 1, Scalar(1)}, {1, 0, Scalar(-1)}};
    pot_add(f.gen, f.w, Word::of({0, 0, 0}), Scalar(1) / 3);
    return f;
}

}  // namespace qp::fixtures
