#include "qpengine/dg.hpp"

#include <algorithm>

namespace qp {

namespace {

int parity(long long n) { return (int)(((n % 2) + 2) % 2); }

/* z.e_b letters for the chosen components, named t<i>, t<i><basis>. */
std::vector<int> add_z_letters(GeneratorSystem& gen, const std::vector<int>& components,
                               int degree)
{
    std::vector<Letter> pending;
    int base_id = gen.size();
    std::map<std::pair<int, int>, int> id_of;  // (comp, basis) -> letter id
    for (int ci : components) {
        const BaseComponent& c = gen.base().components[ci];
        for (int b = 0; b < c.dim(); ++b) {
            Letter t;
            t.name = "t" + std::to_string(ci + 1) + (b ? c.basis_names[b] : "");
            t.source = ci;
            t.target = ci;
            t.degree = degree;
            pending.push_back(std::move(t));
            id_of[{ci, b}] = base_id + (int)pending.size() - 1;
        }
    }
    // z is l-central: both actions are component multiplication
    int idx = 0;
    for (int ci : components) {
        const BaseComponent& c = gen.base().components[ci];
        for (int b = 0; b < c.dim(); ++b, ++idx) {
            Letter& t = pending[idx];
            t.left_action.assign(c.dim(), {});
            t.right_action.assign(c.dim(), {});
            for (int a = 0; a < c.dim(); ++a) {
                const CompElt& prod = c.mult[a][b];
                for (int m = 0; m < c.dim(); ++m)
                    if (!is_zero(prod[m])) {
                        t.left_action[a][id_of.at({ci, m})] = prod[m];
                        t.right_action[a][id_of.at({ci, m})] = prod[m];
                    }
            }
        }
    }
    std::vector<int> ids;
    for (auto& t : pending)
        ids.push_back(gen.add_letter(std::move(t)));
    return ids;
}

}  // namespace

TensorElement apply_diff_word(const DGPresentation& p, const Word& w, const Scalar& c)
{
    TensorElement out = te_zero(p.trunc);
    if (w.is_unit())
        return out;
    long long deg_prefix = 0;
    for (int j = 0; j < w.length(); ++j) {
        int id = w.letters[j];
        auto it = p.diff.find(id);
        const TensorElement* dv = it == p.diff.end() ? nullptr : &it->second;
        if (dv && !dv->is_zero()) {
            Scalar sign = parity(deg_prefix) ? Scalar(-1) : Scalar(1);
            TensorElement term = *dv;
            if (j > 0) {
                std::vector<int> pre(w.letters.begin(), w.letters.begin() + j);
                term = multiply(p.gen, normalize_sequence(p.gen, pre, Scalar(1), p.trunc), term);
            }
            if (j + 1 < w.length()) {
                std::vector<int> post(w.letters.begin() + j + 1, w.letters.end());
                term = multiply(p.gen, term, normalize_sequence(p.gen, post, Scalar(1), p.trunc));
            }
            te_add(out, term, c * sign);
        }
        deg_prefix += p.gen.letter(id).degree;
    }
    return out;
}

TensorElement apply_diff(const DGPresentation& p, const TensorElement& x)
{
    TensorElement out = te_zero(p.trunc);
    for (const auto& [w, c] : x.terms)
        te_add(out, apply_diff_word(p, w, c));
    return out;
}

std::map<int, TensorElement> ham_differential(const GeneratorSystem& gen,
                                              const std::vector<EtaEntry>& eta,
                                              const Casimir& sigma, const Potential& w,
                                              int trunc)
{
    validate_eta(gen, eta);
    std::map<int, TensorElement> diff;
    for (int id = 0; id < gen.size(); ++id)
        diff[id] = te_zero(trunc);

    // Group by ordered block pair; the second block receives the values.
    std::map<std::pair<BlockKey, BlockKey>, std::vector<EtaEntry>> grouped;
    for (const auto& e : eta)
        grouped[{gen.block_of(e.first), gen.block_of(e.second)}].push_back(e);

    for (const auto& [keys, entries] : grouped) {
        // Designate generator pairs in input order until the whole second
        // block is covered by their orbits. Each pair (x, x#, c) defines
        // d(x#) = -(-1)^{|x|} (1/c) . sigma-derivative of w at x, extended
        // l-bilinearly over the orbit of x#.
        std::set<int> remaining(gen.block_letters(std::get<1>(keys)).begin(),
                                gen.block_letters(std::get<1>(keys)).end());
        for (const auto& e : entries) {
            if (remaining.empty())
                break;
            if (e.first == e.second || is_zero(e.coeff))
                continue;
            if (!remaining.count(e.second))
                continue;
            if (!gen.orbit_free(e.first) || !gen.orbit_free(e.second))
                throw EngineError("EtaNotSymplecticBasis",
                                  "entry " + gen.letter(e.first).name + " (x) " +
                                      gen.letter(e.second).name +
                                      " does not span a free orbit");
            int x = e.first, xs = e.second;
            Scalar sign = parity(gen.letter(x).degree) ? Scalar(1) : Scalar(-1);
            TensorElement dxs = te_scale(sigma_derivative(gen, sigma, w, x, trunc),
                                         sign / e.coeff);
            const Letter& lxs = gen.letter(xs);
            for (auto it = remaining.begin(); it != remaining.end();) {
                auto dec = gen.decompose_over(xs, *it);
                if (!dec) {
                    ++it;
                    continue;
                }
                TensorElement dy = te_zero(trunc);
                for (const auto& [lam, mu] : *dec) {
                    TensorElement t = right_mult_base(gen, dxs, lxs.source, mu);
                    t = left_mult_base(gen, lxs.target, lam, t);
                    te_add(dy, t);
                }
                te_add(diff[*it], dy);
                it = remaining.erase(it);
            }
        }
        if (!remaining.empty())
            throw EngineError("EtaNotSymplecticBasis",
                              "letter " + gen.letter(*remaining.begin()).name +
                                  " is not covered by any symplectic generator pair");
    }
    return diff;
}

ZDifferential z_differential(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta,
                             const Casimir& sigma, const std::vector<int>& components,
                             int trunc)
{
    validate_eta(gen, eta);
    ZDifferential out;
    out.dz = te_zero(trunc);
    for (int ci : components) {
        const BaseComponent& comp = gen.base().components[ci];
        const CasimirComponent& cc = sigma.per_component[ci];
        for (int b = 0; b < comp.dim(); ++b) {
            CompElt eb(comp.dim(), Scalar(0));
            eb[b] = 1;
            TensorElement val = te_zero(trunc);
            for (const auto& e : eta) {
                if (gen.letter(e.first).target != ci)
                    continue;
                for (size_t k = 0; k < cc.left.size(); ++k) {
                    // (e_k . g) (x) (h . (e^k e_b))
                    TensorElement g = te_word(gen, Word::of({e.first}), e.coeff, trunc);
                    g = left_mult_base(gen, ci, cc.left[k], g);
                    TensorElement h = te_word(gen, Word::of({e.second}), Scalar(1), trunc);
                    h = right_mult_base(gen, h, ci, comp.multiply(cc.right[k], eb));
                    te_add(val, multiply(gen, g, h));
                }
            }
            out.per_letter[{ci, b}] = val;
            // z = sum_i z.1_i, so dz collects the unit slots
            if (b == 0)
                te_add(out.dz, val);
        }
    }
    return out;
}

DGPresentation build_preprojective(const GeneratorSystem& v_letters,
                                   const std::vector<EtaEntry>& eta, const Potential& w,
                                   int d, int trunc)
{
    if (d < 2)
        throw EngineError("AssumptionViolation", "dimension d must be at least 2");
    for (const auto& l : v_letters.letters())
        if (l.degree < 2 - d || l.degree > 0)
            throw EngineError("AssumptionViolation",
                              "a) letter " + l.name + " outside degree window [2-d, 0]");
    EtaReport rep = check_eta(v_letters, eta, d);
    if (!rep.homogeneous_of_degree_2_minus_d)
        throw EngineError("AssumptionViolation", "b) eta is not homogeneous of degree 2-d");
    if (!rep.antisymmetric)
        throw EngineError("AssumptionViolation", "b) eta is not graded anti-symmetric");
    if (!rep.nondegenerate)
        throw EngineError("AssumptionViolation", "b) eta is degenerate");
    validate_potential(v_letters, w, 3 - d);

    DGPresentation p;
    p.gen = v_letters;
    p.sigma = make_casimir(p.gen.base());
    p.trunc = trunc;
    p.dimension = d;

    std::vector<int> comps;
    for (int ci = 0; ci < (int)p.gen.base().components.size(); ++ci)
        comps.push_back(ci);

    auto vdiff = ham_differential(p.gen, eta, p.sigma, w, trunc);
    p.z_letters = add_z_letters(p.gen, comps, 1 - d);
    for (auto& [id, val] : vdiff)
        p.diff[id] = std::move(val);

    auto zd = z_differential(p.gen, eta, p.sigma, comps, trunc);
    int zi = 0;
    for (int ci : comps)
        for (int b = 0; b < p.gen.base().components[ci].dim(); ++b, ++zi)
            p.diff[p.z_letters[zi]] = zd.per_letter.at({ci, b});

    // degree homogeneity: d raises degree by exactly 1
    for (const auto& [id, val] : p.diff) {
        int deg = 0;
        if (!homogeneous_degree(p.gen, val, deg))
            throw EngineError("DegreeError", "inhomogeneous differential of " +
                                                 p.gen.letter(id).name);
        if (!val.is_zero() && deg != p.gen.letter(id).degree + 1)
            throw EngineError("DegreeError",
                              "differential of " + p.gen.letter(id).name +
                                  " does not raise degree by 1");
    }
    return p;
}

DSquaredReport check_d_squared(const DGPresentation& p)
{
    DSquaredReport rep;
    for (const auto& [id, val] : p.diff) {
        TensorElement dd = apply_diff(p, val);
        if (!dd.is_zero()) {
            rep.ok = false;
            rep.witness_letter = id;
            rep.remainder = dd;
            return rep;
        }
    }
    return rep;
}

namespace {

/* Frozen sub-base-ring with re-indexed components. */
BaseRing restrict_base(const BaseRing& l, std::vector<int>& old_to_new)
{
    BaseRing out;
    old_to_new.assign(l.components.size(), -1);
    for (int ci = 0; ci < (int)l.components.size(); ++ci)
        if (l.frozen.count(ci)) {
            old_to_new[ci] = (int)out.components.size();
            out.components.push_back(l.components[ci]);
        }
    return out;
}

}  // namespace

GLMorphism build_gl_morphism(const GeneratorSystem& v_letters,
                             const std::vector<std::string>& frozen_letter_names,
                             const std::vector<EtaEntry>& eta, const Potential& w,
                             const std::vector<std::pair<std::vector<std::string>, Scalar>>& w_F,
                             int d, int trunc)
{
    const BaseRing& l = v_letters.base();
    if (l.frozen.empty() && !frozen_letter_names.empty())
        throw EngineError("AssumptionViolation", "frozen letters without frozen components");

    // split letters into F and N
    std::set<int> f_ids;
    for (const auto& n : frozen_letter_names)
        f_ids.insert(v_letters.letter_index(n));
    for (int id : f_ids) {
        const Letter& lt = v_letters.letter(id);
        if (!l.frozen.count(lt.source) || !l.frozen.count(lt.target))
            throw EngineError("AssumptionViolation",
                              "F letter " + lt.name + " touches an unfrozen component");
        if (2 * lt.degree < 3 - d || lt.degree > 0)
            throw EngineError("AssumptionViolation",
                              "a) F letter " + lt.name + " outside [(3-d)/2, 0]");
    }
    for (int id = 0; id < v_letters.size(); ++id) {
        if (f_ids.count(id))
            continue;
        const Letter& lt = v_letters.letter(id);
        if (lt.degree < 2 - d || lt.degree > 0)
            throw EngineError("AssumptionViolation",
                              "a) N letter " + lt.name + " outside [2-d, 0]");
    }
    for (const auto& e : eta)
        if (f_ids.count(e.first) || f_ids.count(e.second))
            throw EngineError("AssumptionViolation", "b) eta must pair N letters only");

    // --- frozen system over l_F with the F letters -----------------------
    std::vector<int> comp_map;
    BaseRing lf = restrict_base(l, comp_map);
    std::map<int, int> f_old_to_new;
    for (int id = 0; id < v_letters.size(); ++id)
        if (f_ids.count(id))
            f_old_to_new[id] = (int)f_old_to_new.size();
    std::vector<Letter> f_letters;
    for (const auto& [id, nid] : f_old_to_new) {
        (void)nid;
        Letter lt = v_letters.letter(id);
        lt.source = comp_map[lt.source];
        lt.target = comp_map[lt.target];
        auto remap = [&](std::vector<LinComb>& acts) {
            for (auto& a : acts) {
                LinComb na;
                for (const auto& [old_id, c] : a) {
                    auto it = f_old_to_new.find(old_id);
                    if (it == f_old_to_new.end())
                        throw EngineError("AssumptionViolation",
                                          "F letters must be closed under the l-action");
                    na[it->second] = c;
                }
                a = std::move(na);
            }
        };
        remap(lt.left_action);
        remap(lt.right_action);
        f_letters.push_back(std::move(lt));
    }
    GeneratorSystem frozen_sys(lf, std::move(f_letters));
    EtaFResult ef = make_eta_F(frozen_sys, d);

    // potential w_F over F (+) R, named words
    Potential wf;
    for (const auto& [names, c] : w_F) {
        std::vector<int> seq;
        for (const auto& n : names)
            seq.push_back(ef.system.letter_index(n));
        pot_add(ef.system, wf, Word::of(seq), c);
    }

    GLMorphism m;
    m.source = build_preprojective(ef.system, ef.eta_F, wf, d - 1, trunc);

    // --- target over l ----------------------------------------------------
    DGPresentation tgt;
    tgt.gen = v_letters;
    tgt.sigma = make_casimir(l);
    tgt.trunc = trunc;
    tgt.dimension = d;
    validate_potential(v_letters, w, 3 - d);

    // d on N from eta and w
    auto ndiff = ham_differential(v_letters, eta, tgt.sigma, w, trunc);

    // d on F from eta_F and w_F, with the R letters projected away
    DGPresentation aux = m.source;  // differential of T_{l_F}(F (+) R (+) z_F)
    auto project_f = [&](const TensorElement& x) {
        // keep words in F letters only, re-expressed in the target system
        TensorElement out = te_zero(trunc);
        int nf = (int)f_old_to_new.size();
        for (const auto& [word, c] : x.terms) {
            if (word.is_unit()) {
                // unit of a frozen component: map back
                for (int ci = 0; ci < (int)l.components.size(); ++ci)
                    if (comp_map[ci] == word.unit_component)
                        te_add(out,
                               te_word(v_letters, Word::unit(ci, word.unit_basis), c, trunc));
                continue;
            }
            bool pure_f = true;
            std::vector<int> seq;
            for (int id : word.letters) {
                if (id >= nf) {  // an R letter or z_F letter
                    pure_f = false;
                    break;
                }
                for (const auto& [oid, nid] : f_old_to_new)
                    if (nid == id) {
                        seq.push_back(oid);
                        break;
                    }
            }
            if (pure_f)
                te_add(out, normalize_sequence(v_letters, seq, c, trunc));
        }
        return out;
    };

    std::vector<int> unfrozen;
    for (int ci = 0; ci < (int)l.components.size(); ++ci)
        if (!l.frozen.count(ci))
            unfrozen.push_back(ci);

    for (int id = 0; id < v_letters.size(); ++id) {
        if (f_ids.count(id))
            tgt.diff[id] = project_f(aux.diff.at(f_old_to_new.at(id)));
        else
            tgt.diff[id] = ndiff.at(id);
    }
    tgt.z_letters = add_z_letters(tgt.gen, unfrozen, 1 - d);
    auto zd = z_differential(tgt.gen, eta, tgt.sigma, unfrozen, trunc);
    {
        int zi = 0;
        for (int ci : unfrozen)
            for (int b = 0; b < l.components[ci].dim(); ++b, ++zi)
                tgt.diff[tgt.z_letters[zi]] = zd.per_letter.at({ci, b});
    }
    m.target = std::move(tgt);

    // --- gamma -------------------------------------------------------------
    for (const auto& [oid, nid] : f_old_to_new) {
        m.source_to_target_letter[nid] = oid;
        m.gamma[nid] = te_word(m.target.gen, Word::of({oid}), Scalar(1), trunc);
    }
    // gamma on R = -{w, r}_{omega_{eta_F}}: each R letter is the dual "f^" of
    // an F letter, with eta_F entry (f, f^, c1). The Hamiltonian rule gives
    // {w, f^} = -(-1)^{|f|} (1/c1) . sigma-derivative of w at f, so gamma
    // flips the sign. The chain-map check below guards consistency.
    for (const auto& [fnew, rnew] : ef.dual_of) {
        int fold = -1;
        for (const auto& [o, n] : f_old_to_new)
            if (n == fnew)
                fold = o;
        Scalar c1 = parity((long long)(d - 3) * ef.system.letter(fnew).degree) ? Scalar(-1)
                                                                               : Scalar(1);
        Scalar sign = parity(v_letters.letter(fold).degree) ? Scalar(-1) : Scalar(1);
        m.gamma[rnew] =
            te_scale(sigma_derivative(v_letters, tgt.sigma, w, fold, trunc), sign / c1);
    }
    // gamma(z_F . e_b) = sigma_F' eta sigma_F'': frozen Casimir legs on eta
    {
        std::vector<int> frozen_comps(l.frozen.begin(), l.frozen.end());
        auto zf = z_differential(v_letters, eta, m.target.sigma, frozen_comps, trunc);
        int zi = 0;
        for (int ci : frozen_comps)
            for (int b = 0; b < l.components[ci].dim(); ++b, ++zi) {
                // source z letter ids follow the frozen system's component order
                m.gamma[m.source.z_letters[zi]] = zf.per_letter.at({ci, b});
            }
    }

    // chain map check: gamma(d(v)) = d(gamma(v)) for every source letter
    for (int id = 0; id < m.source.gen.size(); ++id) {
        TensorElement lhs = apply_gl(m, m.source.diff.at(id));
        TensorElement rhs = apply_diff(m.target, m.gamma.at(id));
        if (!(lhs == rhs))
            throw EngineError("NotChainMap",
                              "gamma d != d gamma at " + m.source.gen.letter(id).name);
    }
    return m;
}

TensorElement apply_gl(const GLMorphism& m, const TensorElement& x)
{
    const GeneratorSystem& tg = m.target.gen;
    TensorElement out = te_zero(m.target.trunc);
    const BaseRing& lf = m.source.gen.base();
    const BaseRing& l = tg.base();
    // frozen component index -> original index
    std::vector<int> comp_back(lf.components.size(), -1);
    {
        int j = 0;
        for (int ci = 0; ci < (int)l.components.size(); ++ci)
            if (l.frozen.count(ci))
                comp_back[j++] = ci;
    }
    for (const auto& [w, c] : x.terms) {
        if (w.is_unit()) {
            te_add(out, te_word(tg, Word::unit(comp_back[w.unit_component], w.unit_basis), c,
                                m.target.trunc));
            continue;
        }
        TensorElement acc;
        bool started = false;
        for (int id : w.letters) {
            const TensorElement& g = m.gamma.at(id);
            if (!started) {
                acc = g;
                started = true;
            }
            else
                acc = multiply(tg, acc, g);
        }
        te_add(out, acc, c);
    }
    return out;
}

}  // namespace qp
