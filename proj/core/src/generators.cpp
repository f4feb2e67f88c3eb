#include "qpengine/generators.hpp"

#include "qpengine/detail/dense.hpp"

#include <algorithm>

namespace qp {

namespace {

void add_scaled(LinComb& into, const LinComb& v, const Scalar& c)
{
    if (is_zero(c))
        return;
    for (const auto& [id, a] : v) {
        Scalar s = into[id] + c * a;
        if (is_zero(s))
            into.erase(id);
        else
            into[id] = s;
    }
}

}  // namespace

GeneratorSystem::GeneratorSystem(BaseRing base, std::vector<Letter> letters)
    : base_(std::move(base)), letters_(std::move(letters))
{
    base_.validate();
    rebuild_caches();
    validate();
}

int GeneratorSystem::letter_index(const std::string& name) const
{
    for (int i = 0; i < size(); ++i)
        if (letters_[i].name == name)
            return i;
    throw EngineError("UnknownLetter", name);
}

int GeneratorSystem::add_letter(Letter l)
{
    letters_.push_back(std::move(l));
    rebuild_caches();
    return size() - 1;
}

BlockKey GeneratorSystem::block_of(int id) const
{
    const Letter& l = letters_[id];
    return {l.source, l.target, l.degree};
}

const std::vector<int>& GeneratorSystem::block_letters(const BlockKey& k) const
{
    static const std::vector<int> empty;
    auto it = blocks_.find(k);
    return it == blocks_.end() ? empty : it->second;
}

LinComb GeneratorSystem::apply_left(int comp, const CompElt& lambda, int id) const
{
    const Letter& l = letters_[id];
    if (l.target != comp)
        throw EngineError("IncompatibleComponents",
                          "left action on " + l.name + " from wrong component");
    LinComb out;
    for (int b = 0; b < (int)lambda.size(); ++b)
        add_scaled(out, l.left_action[b], lambda[b]);
    return out;
}

LinComb GeneratorSystem::apply_right(int id, int comp, const CompElt& lambda) const
{
    const Letter& l = letters_[id];
    if (l.source != comp)
        throw EngineError("IncompatibleComponents",
                          "right action on " + l.name + " from wrong component");
    LinComb out;
    for (int b = 0; b < (int)lambda.size(); ++b)
        add_scaled(out, l.right_action[b], lambda[b]);
    return out;
}

LinComb GeneratorSystem::apply_left(int comp, const CompElt& lambda, const LinComb& v) const
{
    LinComb out;
    for (const auto& [id, c] : v)
        add_scaled(out, apply_left(comp, lambda, id), c);
    return out;
}

LinComb GeneratorSystem::apply_right(const LinComb& v, int comp, const CompElt& lambda) const
{
    LinComb out;
    for (const auto& [id, c] : v)
        add_scaled(out, apply_right(id, comp, lambda), c);
    return out;
}

void GeneratorSystem::rebuild_caches()
{
    blocks_.clear();
    for (int i = 0; i < size(); ++i)
        blocks_[block_of(i)].push_back(i);

    left_rep_.assign(size(), false);
    left_decomp_.assign(size(), {});

    // Greedy left-orbit basis per block: a letter in the span of e_b . (reps
    // so far) gets a decomposition, otherwise it becomes a representative.
    for (const auto& [key, ids] : blocks_) {
        int tcomp = std::get<1>(key);
        const BaseComponent& ct = base_.components[tcomp];
        std::vector<int> reps;
        for (int id : ids) {
            // columns: e_b . r over current reps
            std::vector<std::pair<int, int>> col_key;  // (rep, basis b)
            detail::Mat m((size_t)size());
            for (auto& row : m)
                row.assign(reps.size() * ct.dim(), Scalar(0));
            for (size_t rj = 0; rj < reps.size(); ++rj)
                for (int b = 0; b < ct.dim(); ++b) {
                    CompElt eb(ct.dim(), Scalar(0));
                    eb[b] = 1;
                    LinComb img = apply_left(tcomp, eb, reps[rj]);
                    int col = (int)(rj * ct.dim() + b);
                    for (const auto& [lid, c] : img)
                        m[lid][col] = c;
                    col_key.push_back({(int)rj, b});
                }
            std::vector<Scalar> target((size_t)size(), Scalar(0));
            target[id] = 1;
            std::optional<std::vector<Scalar>> sol;
            if (!reps.empty())
                sol = detail::solve(m, target);
            if (sol) {
                std::vector<std::pair<CompElt, int>> dec;
                for (size_t rj = 0; rj < reps.size(); ++rj) {
                    CompElt lam(ct.dim(), Scalar(0));
                    bool nz = false;
                    for (int b = 0; b < ct.dim(); ++b) {
                        lam[b] = (*sol)[rj * ct.dim() + b];
                        nz = nz || !is_zero(lam[b]);
                    }
                    if (nz)
                        dec.push_back({lam, reps[rj]});
                }
                left_decomp_[id] = std::move(dec);
                left_rep_[id] = false;
            }
            else {
                reps.push_back(id);
                left_rep_[id] = true;
                left_decomp_[id] = {{ct.unit(), id}};
            }
        }
    }
}

std::optional<std::vector<std::pair<CompElt, CompElt>>> GeneratorSystem::decompose_over(
    int x, int y) const
{
    if (block_of(x) != block_of(y))
        return std::nullopt;
    const Letter& lx = letters_[x];
    const BaseComponent& ct = base_.components[lx.target];
    const BaseComponent& cs = base_.components[lx.source];
    int cols = ct.dim() * cs.dim();
    detail::Mat m((size_t)size());
    for (auto& row : m)
        row.assign(cols, Scalar(0));
    for (int a = 0; a < ct.dim(); ++a)
        for (int b = 0; b < cs.dim(); ++b) {
            CompElt ea(ct.dim(), Scalar(0)), eb(cs.dim(), Scalar(0));
            ea[a] = 1;
            eb[b] = 1;
            LinComb img = apply_right(apply_left(lx.target, ea, x), lx.source, eb);
            for (const auto& [lid, c] : img)
                m[lid][a * cs.dim() + b] = c;
        }
    std::vector<Scalar> target((size_t)size(), Scalar(0));
    target[y] = 1;
    auto sol = detail::solve(m, target);
    if (!sol)
        return std::nullopt;
    std::vector<std::pair<CompElt, CompElt>> dec;
    for (int a = 0; a < ct.dim(); ++a)
        for (int b = 0; b < cs.dim(); ++b) {
            if (is_zero((*sol)[a * cs.dim() + b]))
                continue;
            CompElt ea(ct.dim(), Scalar(0)), eb(cs.dim(), Scalar(0));
            ea[a] = (*sol)[a * cs.dim() + b];
            eb[b] = 1;
            dec.push_back({ea, eb});
        }
    return dec;
}

bool GeneratorSystem::orbit_free(int x) const
{
    const Letter& lx = letters_[x];
    const BaseComponent& ct = base_.components[lx.target];
    const BaseComponent& cs = base_.components[lx.source];
    int cols = ct.dim() * cs.dim();
    detail::Mat m((size_t)size());
    for (auto& row : m)
        row.assign(cols, Scalar(0));
    for (int a = 0; a < ct.dim(); ++a)
        for (int b = 0; b < cs.dim(); ++b) {
            CompElt ea(ct.dim(), Scalar(0)), eb(cs.dim(), Scalar(0));
            ea[a] = 1;
            eb[b] = 1;
            LinComb img = apply_right(apply_left(lx.target, ea, x), lx.source, eb);
            for (const auto& [lid, c] : img)
                m[lid][a * cs.dim() + b] = c;
        }
    return detail::rank(m) == cols;
}

bool GeneratorSystem::freely_generates_block(int x) const
{
    const Letter& lx = letters_[x];
    int cols = base_.components[lx.target].dim() * base_.components[lx.source].dim();
    return (int)block_letters(block_of(x)).size() == cols && orbit_free(x);
}

void GeneratorSystem::validate() const
{
    std::set<std::string> names;
    for (int i = 0; i < size(); ++i) {
        const Letter& l = letters_[i];
        if (!names.insert(l.name).second)
            throw EngineError("BadGenerators", "duplicate letter name " + l.name);
        if (l.source < 0 || l.source >= (int)base_.components.size() || l.target < 0 ||
            l.target >= (int)base_.components.size())
            throw EngineError("BadGenerators", l.name + ": component out of range");
        const BaseComponent& cs = base_.components[l.source];
        const BaseComponent& ct = base_.components[l.target];
        if ((int)l.left_action.size() != ct.dim() || (int)l.right_action.size() != cs.dim())
            throw EngineError("BadGenerators", l.name + ": action table sizes");
        auto check_img = [&](const LinComb& img) {
            for (const auto& [id, c] : img) {
                (void)c;
                if (id < 0 || id >= size())
                    throw EngineError("BadGenerators", l.name + ": action image out of range");
                if (block_of(id) != block_of(i))
                    throw EngineError("BadGenerators", l.name + ": action leaves the block");
            }
        };
        for (const auto& img : l.left_action)
            check_img(img);
        for (const auto& img : l.right_action)
            check_img(img);
        if (l.left_action[0] != LinComb{{i, Scalar(1)}} ||
            l.right_action[0] != LinComb{{i, Scalar(1)}})
            throw EngineError("BadGenerators", l.name + ": unit does not act as identity");
    }
    // bimodule axioms, enumerated over component bases
    for (int i = 0; i < size(); ++i) {
        const Letter& l = letters_[i];
        const BaseComponent& cs = base_.components[l.source];
        const BaseComponent& ct = base_.components[l.target];
        auto basis = [](const BaseComponent& c, int b) {
            CompElt v(c.dim(), Scalar(0));
            v[b] = 1;
            return v;
        };
        for (int a = 0; a < ct.dim(); ++a)
            for (int b = 0; b < cs.dim(); ++b) {
                LinComb lr = apply_right(apply_left(l.target, basis(ct, a), i), l.source,
                                         basis(cs, b));
                LinComb rl = apply_left(l.target, basis(ct, a),
                                        apply_right(i, l.source, basis(cs, b)));
                if (lr != rl)
                    throw EngineError("BadGenerators", l.name + ": actions do not commute");
            }
        for (int a = 0; a < ct.dim(); ++a)
            for (int b = 0; b < ct.dim(); ++b) {
                LinComb two = apply_left(l.target, basis(ct, a),
                                         apply_left(l.target, basis(ct, b), LinComb{{i, Scalar(1)}}));
                LinComb one = apply_left(l.target, ct.mult[a][b], i);
                if (two != one)
                    throw EngineError("BadGenerators", l.name + ": left action not associative");
            }
        for (int a = 0; a < cs.dim(); ++a)
            for (int b = 0; b < cs.dim(); ++b) {
                LinComb two = apply_right(apply_right(i, l.source, basis(cs, a)), l.source,
                                          basis(cs, b));
                LinComb one = apply_right(i, l.source, cs.mult[a][b]);
                if (two != one)
                    throw EngineError("BadGenerators", l.name + ": right action not associative");
            }
    }
}

void validate_eta(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta)
{
    for (const auto& e : eta) {
        const Letter& g = gen.letter(e.first);
        const Letter& h = gen.letter(e.second);
        if (h.target != g.source)
            throw EngineError("IncompatibleComponents",
                              "eta entry " + g.name + " (x) " + h.name + " does not compose");
        if (h.source != g.target)
            throw EngineError("IncompatibleComponents",
                              "eta entry " + g.name + " (x) " + h.name + " is not cyclically closed");
    }
}

namespace {

/* Coinvariant space of composable 2-letter words over one unordered block
 * pair: quotient by (g.lam)(x)h - g(x)(lam.h) and (lam.g)(x)h - g(x)(h.lam).
 * Coordinates are pure pairs (g, h). */
struct PairSpace {
    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> index;
    detail::Mat reduced_relations;  // rref rows over pair coordinates

    std::vector<Scalar> reduce(std::map<std::pair<int, int>, Scalar> v) const
    {
        std::vector<Scalar> x(pairs.size(), Scalar(0));
        for (const auto& [p, c] : v) {
            auto it = index.find(p);
            if (it == index.end())
                throw EngineError("IncompatibleComponents", "pair outside the block span");
            x[it->second] = c;
        }
        // eliminate against the reduced relation rows
        for (const auto& row : reduced_relations) {
            int lead = -1;
            for (int j = 0; j < (int)row.size(); ++j)
                if (!is_zero(row[j])) {
                    lead = j;
                    break;
                }
            if (lead < 0 || is_zero(x[lead]))
                continue;
            Scalar f = x[lead] / row[lead];
            for (int j = 0; j < (int)row.size(); ++j)
                x[j] -= f * row[j];
        }
        return x;
    }
};

PairSpace build_pair_space(const GeneratorSystem& gen, const std::vector<int>& lefts,
                           const std::vector<int>& rights)
{
    PairSpace ps;
    for (int g : lefts)
        for (int h : rights) {
            const Letter& lg = gen.letter(g);
            const Letter& lh = gen.letter(h);
            if (lh.target == lg.source && lh.source == lg.target) {
                ps.index[{g, h}] = (int)ps.pairs.size();
                ps.pairs.push_back({g, h});
            }
        }
    detail::Mat rel;
    auto push_rel = [&](std::map<std::pair<int, int>, Scalar> r) {
        std::vector<Scalar> row(ps.pairs.size(), Scalar(0));
        bool nz = false;
        for (const auto& [p, c] : r) {
            auto it = ps.index.find(p);
            if (it == ps.index.end())
                continue;
            row[it->second] = c;
            nz = nz || !is_zero(c);
        }
        if (nz)
            rel.push_back(std::move(row));
    };
    for (const auto& [g, h] : ps.pairs) {
        const Letter& lg = gen.letter(g);
        const BaseComponent& inner = gen.base().components[lg.source];
        const BaseComponent& outer = gen.base().components[lg.target];
        for (int b = 1; b < inner.dim(); ++b) {
            CompElt eb(inner.dim(), Scalar(0));
            eb[b] = 1;
            std::map<std::pair<int, int>, Scalar> r;
            for (const auto& [gid, c] : gen.apply_right(g, lg.source, eb))
                r[{gid, h}] += c;
            for (const auto& [hid, c] : gen.apply_left(lg.source, eb, h))
                r[{g, hid}] -= c;
            push_rel(std::move(r));
        }
        for (int b = 1; b < outer.dim(); ++b) {
            CompElt eb(outer.dim(), Scalar(0));
            eb[b] = 1;
            std::map<std::pair<int, int>, Scalar> r;
            for (const auto& [gid, c] : gen.apply_left(lg.target, eb, g))
                r[{gid, h}] += c;
            for (const auto& [hid, c] : gen.apply_right(h, lg.target, eb))
                r[{g, hid}] -= c;
            push_rel(std::move(r));
        }
    }
    detail::rref(rel);
    // drop zero rows
    for (auto it = rel.begin(); it != rel.end();) {
        bool nz = false;
        for (const auto& c : *it)
            nz = nz || !is_zero(c);
        it = nz ? std::next(it) : rel.erase(it);
    }
    ps.reduced_relations = std::move(rel);
    return ps;
}

int parity(long long n) { return (int)(((n % 2) + 2) % 2); }

}  // namespace

EtaReport check_eta(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta, int d)
{
    validate_eta(gen, eta);
    EtaReport rep;

    rep.homogeneous_of_degree_2_minus_d = true;
    for (const auto& e : eta)
        if (gen.letter(e.first).degree + gen.letter(e.second).degree != 2 - d)
            rep.homogeneous_of_degree_2_minus_d = false;

    // Group entries by unordered block pair.
    std::map<std::pair<BlockKey, BlockKey>, std::vector<EtaEntry>> grouped;
    for (const auto& e : eta) {
        BlockKey a = gen.block_of(e.first), b = gen.block_of(e.second);
        grouped[{std::min(a, b), std::max(a, b)}].push_back(e);
    }

    // Antisymmetry: eta + swap(eta) vanishes in the coinvariant space.
    rep.antisymmetric = true;
    for (const auto& [bk, entries] : grouped) {
        std::vector<int> involved;
        for (const BlockKey& k : {bk.first, bk.second})
            for (int id : gen.block_letters(k))
                involved.push_back(id);
        std::sort(involved.begin(), involved.end());
        involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
        PairSpace ps = build_pair_space(gen, involved, involved);
        std::map<std::pair<int, int>, Scalar> v;
        for (const auto& e : entries) {
            v[{e.first, e.second}] += e.coeff;
            int s = parity((long long)gen.letter(e.first).degree *
                           gen.letter(e.second).degree);
            v[{e.second, e.first}] += (s ? -e.coeff : e.coeff);
        }
        for (const auto& c : ps.reduce(std::move(v)))
            if (!is_zero(c))
                rep.antisymmetric = false;
    }

    // Non-degeneracy, blockwise: alpha |-> (1 (x) alpha)(eta_12) must be a
    // bijection Hom_E(B2, E) -> B1 for E = C_t (x) C_s.
    rep.nondegenerate = true;
    std::set<BlockKey> seen;
    for (const auto& [bk, entries] : grouped)
        for (const BlockKey& k : {bk.first, bk.second})
            seen.insert(k);
    // every letter must sit in some eta-covered block
    for (int id = 0; id < gen.size(); ++id)
        if (!seen.count(gen.block_of(id)))
            rep.nondegenerate = false;

    for (const auto& [bk, entries] : grouped) {
        // orient: directed entries from block A to block B and from B to A
        for (const BlockKey& first_key : {bk.first, bk.second}) {
            BlockKey second_key = (first_key == bk.first) ? bk.second : bk.first;
            std::vector<EtaEntry> dir;
            for (const auto& e : entries)
                if (gen.block_of(e.first) == first_key && gen.block_of(e.second) == second_key)
                    dir.push_back(e);
            const auto& b1 = gen.block_letters(first_key);
            const auto& b2 = gen.block_letters(second_key);
            if (b1.empty() && b2.empty())
                continue;
            if (dir.empty()) {
                rep.nondegenerate = false;
                continue;
            }
            int s = std::get<0>(first_key), t = std::get<1>(first_key);
            const BaseComponent& cs = gen.base().components[s];
            const BaseComponent& ct = gen.base().components[t];
            int dimE = cs.dim() * ct.dim();
            // Hom_E(B2, E): maps B2 -> E, E-linear. Unknowns: f[h][a*cs+b].
            int nb2 = (int)b2.size();
            std::map<int, int> pos2;
            for (int j = 0; j < nb2; ++j)
                pos2[b2[j]] = j;
            detail::Mat constraints;
            auto var = [&](int hj, int a, int b) { return hj * dimE + a * cs.dim() + b; };
            // f((beta (x) gamma) . h) = (beta (x) gamma) f(h): enumerate basis actions.
            // E acts on B2 (letters t -> s) by gamma . h . beta.
            for (int hj = 0; hj < nb2; ++hj)
                for (int a = 0; a < ct.dim(); ++a)
                    for (int b = 0; b < cs.dim(); ++b) {
                        if (a == 0 && b == 0)
                            continue;
                        CompElt ea(ct.dim(), Scalar(0)), eb(cs.dim(), Scalar(0));
                        ea[a] = 1;
                        eb[b] = 1;
                        LinComb img = gen.apply_right(gen.apply_left(s, eb, b2[hj]), t, ea);
                        // rows: one per E-coordinate (a', b')
                        for (int a2 = 0; a2 < ct.dim(); ++a2)
                            for (int b2c = 0; b2c < cs.dim(); ++b2c) {
                                std::vector<Scalar> row(nb2 * dimE, Scalar(0));
                                for (const auto& [hid, c] : img) {
                                    auto it = pos2.find(hid);
                                    if (it == pos2.end())
                                        throw EngineError("IncompatibleComponents",
                                                          "action leaves block");
                                    row[var(it->second, a2, b2c)] += c;
                                }
                                // minus (e_a (x) e_b) * f(h): E-mult on coordinates
                                for (int a1 = 0; a1 < ct.dim(); ++a1)
                                    for (int b1c = 0; b1c < cs.dim(); ++b1c) {
                                        Scalar coef = ct.mult[a][a1][a2] * cs.mult[b][b1c][b2c];
                                        row[var(hj, a1, b1c)] -= coef;
                                    }
                                bool nz = false;
                                for (const auto& c : row)
                                    nz = nz || !is_zero(c);
                                if (nz)
                                    constraints.push_back(std::move(row));
                            }
                    }
            std::vector<std::vector<Scalar>> homs;
            if (constraints.empty())
                for (int v = 0; v < nb2 * dimE; ++v) {
                    std::vector<Scalar> f(nb2 * dimE, Scalar(0));
                    f[v] = 1;
                    homs.push_back(std::move(f));
                }
            else
                homs = detail::null_space(constraints);
            if ((int)homs.size() != (int)b1.size()) {
                rep.nondegenerate = false;
                continue;
            }
            // contraction matrix: for each hom alpha, v = sum c_e alpha(h_e) . g_e in B1
            detail::Mat contraction((size_t)gen.size());
            for (auto& row : contraction)
                row.assign(homs.size(), Scalar(0));
            for (size_t fa = 0; fa < homs.size(); ++fa) {
                for (const auto& e : dir) {
                    int hj = pos2.at(e.second);
                    // alpha(h_e) = sum_{a,b} f[hj][a,b] (e_a (x) e_b), acting on g_e
                    for (int a = 0; a < ct.dim(); ++a)
                        for (int b = 0; b < cs.dim(); ++b) {
                            Scalar c = homs[fa][var(hj, a, b)];
                            if (is_zero(c))
                                continue;
                            CompElt ea(ct.dim(), Scalar(0)), eb(cs.dim(), Scalar(0));
                            ea[a] = 1;
                            eb[b] = 1;
                            LinComb img = gen.apply_right(gen.apply_left(t, ea, e.first), s, eb);
                            for (const auto& [gid, cc] : img)
                                contraction[gid][fa] += e.coeff * c * cc;
                        }
                }
            }
            if (detail::rank(contraction) != (int)b1.size())
                rep.nondegenerate = false;
        }
    }
    return rep;
}

std::vector<std::pair<int, int>> tensor_over_base(const GeneratorSystem& gen,
                                                  const std::vector<int>& left,
                                                  const std::vector<int>& right)
{
    std::vector<std::pair<int, int>> basis;
    for (int g : left)
        for (int h : right) {
            if (gen.letter(h).target != gen.letter(g).source)
                continue;
            if (gen.is_left_rep(h))
                basis.push_back({g, h});
        }
    return basis;
}

std::map<std::pair<int, int>, Scalar> tensor_rewrite(const GeneratorSystem& gen, int g, int h)
{
    if (gen.letter(h).target != gen.letter(g).source)
        throw EngineError("IncompatibleComponents",
                          gen.letter(g).name + " (x) " + gen.letter(h).name);
    std::map<std::pair<int, int>, Scalar> out;
    const Letter& lg = gen.letter(g);
    for (const auto& [lam, rep] : gen.left_decomposition(h)) {
        LinComb gl = gen.apply_right(g, lg.source, lam);
        for (const auto& [gid, c] : gl) {
            Scalar s = out[{gid, rep}] + c;
            if (is_zero(s))
                out.erase({gid, rep});
            else
                out[{gid, rep}] = s;
        }
    }
    return out;
}

EtaFResult make_eta_F(const GeneratorSystem& frozen, int d)
{
    for (const auto& l : frozen.letters())
        if (2 * l.degree < 3 - d || l.degree > 0)
            throw EngineError("DegreeWindowViolation",
                              l.name + " outside [(3-d)/2, 0] for d = " + std::to_string(d));

    EtaFResult out;
    std::vector<Letter> letters = frozen.letters();
    int nf = (int)letters.size();
    for (int f = 0; f < nf; ++f) {
        const Letter& lf = frozen.letter(f);
        Letter dual;
        dual.name = lf.name + "^";
        dual.source = lf.target;
        dual.target = lf.source;
        dual.degree = -lf.degree - (d - 3);
        const BaseComponent& cs = frozen.base().components[lf.source];
        const BaseComponent& ct = frozen.base().components[lf.target];
        // (beta . f^)(g) = f^(g . beta); (f^ . beta)(g) = f^(beta . g)
        dual.left_action.assign(cs.dim(), {});
        dual.right_action.assign(ct.dim(), {});
        for (int b = 0; b < cs.dim(); ++b) {
            CompElt eb(cs.dim(), Scalar(0));
            eb[b] = 1;
            for (int g = 0; g < nf; ++g) {
                if (frozen.block_of(g) != frozen.block_of(f))
                    continue;
                LinComb img = frozen.apply_right(g, lf.source, eb);
                auto it = img.find(f);
                if (it != img.end() && !is_zero(it->second))
                    dual.left_action[b][nf + g] = it->second;
            }
        }
        for (int b = 0; b < ct.dim(); ++b) {
            CompElt eb(ct.dim(), Scalar(0));
            eb[b] = 1;
            for (int g = 0; g < nf; ++g) {
                if (frozen.block_of(g) != frozen.block_of(f))
                    continue;
                LinComb img = frozen.apply_left(lf.target, eb, g);
                auto it = img.find(f);
                if (it != img.end() && !is_zero(it->second))
                    dual.right_action[b][nf + g] = it->second;
            }
        }
        letters.push_back(std::move(dual));
        out.dual_of[f] = nf + f;
    }
    out.system = GeneratorSystem(frozen.base(), std::move(letters));
    for (int f = 0; f < nf; ++f) {
        int deg = frozen.letter(f).degree;
        Scalar c1 = parity((long long)(d - 3) * deg) ? Scalar(-1) : Scalar(1);
        Scalar c2 = parity(deg) ? Scalar(1) : Scalar(-1);
        out.eta_F.push_back({f, nf + f, c1});
        out.eta_F.push_back({nf + f, f, c2});
    }
    return out;
}

}  // namespace qp
