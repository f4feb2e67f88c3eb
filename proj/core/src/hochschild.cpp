#include "qpengine/hochschild.hpp"

#include "qpengine/detail/dense.hpp"

#include <algorithm>
#include <functional>

namespace qp {

namespace {

int parity(long long n) { return (int)(((n % 2) + 2) % 2); }
Scalar psign(long long n) { return parity(n) ? Scalar(-1) : Scalar(1); }

}  // namespace

void hel_add(HElement& into, const HChain& c, const Scalar& v)
{
    if (is_zero(v))
        return;
    Scalar s = into[c] + v;
    if (is_zero(s))
        into.erase(c);
    else
        into[c] = s;
}

void hel_add_scaled(HElement& into, const HElement& v, const Scalar& c)
{
    for (const auto& [ch, a] : v)
        hel_add(into, ch, c * a);
}

int chain_internal_degree(const FinGradedAlgebra& a, const HChain& c)
{
    int s = c.m >= 0 ? a.basis[c.m].degree : 0;
    for (int i : c.slots)
        s += a.basis[i].degree;
    return s;
}

bool chain_cyclic(const FinGradedAlgebra& a, const HChain& c)
{
    std::vector<int> all;
    if (c.m >= 0)
        all.push_back(c.m);
    all.insert(all.end(), c.slots.begin(), c.slots.end());
    if (all.empty())
        return false;
    for (size_t i = 0; i + 1 < all.size(); ++i)
        if (a.basis[all[i]].source != a.basis[all[i + 1]].target)
            return false;
    return a.basis[all.back()].source == a.basis[all.front()].target;
}

HElement bar_internal(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out;
    long long pre = 0;
    for (int i = 0; i < c.p(); ++i) {
        // (-1)^{i-1+|a_1|+...+|a_{i-1}|}, 1-based i
        Scalar s = psign((i + 1) - 1 + pre);
        for (const auto& [k, v] : a.diff[c.slots[i]]) {
            HChain t = c;
            t.slots[i] = k;
            hel_add(out, t, s * v);
        }
        pre += a.basis[c.slots[i]].degree;
    }
    return out;
}

HElement bar_bprime(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out;
    long long degs = 0;
    for (int i = 0; i + 1 < c.p(); ++i) {
        degs += a.basis[c.slots[i]].degree;
        // (-1)^{i-1+|a_1|+...+|a_i|}, 1-based i
        Scalar s = psign((i + 1) - 1 + degs);
        for (const auto& [k, v] : a.mult[c.slots[i]][c.slots[i + 1]]) {
            HChain t;
            t.m = c.m;
            t.slots.assign(c.slots.begin(), c.slots.begin() + i);
            t.slots.push_back(k);
            t.slots.insert(t.slots.end(), c.slots.begin() + i + 2, c.slots.end());
            hel_add(out, t, s * v);
        }
    }
    return out;
}

HElement hoch_b(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out = bar_bprime(a, c);
    int p = c.p();
    if (p >= 2) {
        long long degs = 0;
        for (int i = 0; i + 1 < p; ++i)
            degs += a.basis[c.slots[i]].degree;
        long long ap = a.basis[c.slots[p - 1]].degree;
        Scalar s = psign((ap + 1) * (p + degs) - 1);
        for (const auto& [k, v] : a.mult[c.slots[p - 1]][c.slots[0]]) {
            HChain t;
            t.slots.push_back(k);
            t.slots.insert(t.slots.end(), c.slots.begin() + 1, c.slots.end() - 1);
            hel_add(out, t, s * v);
        }
    }
    return out;
}

HElement connes_tau(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out;
    int p = c.p();
    if (p == 0)
        return out;
    long long degs = 0;
    for (int i = 0; i + 1 < p; ++i)
        degs += a.basis[c.slots[i]].degree;
    long long ap = a.basis[c.slots[p - 1]].degree;
    Scalar s = psign((ap + 1) * (p - 1 + degs));
    HChain t;
    t.slots.push_back(c.slots[p - 1]);
    t.slots.insert(t.slots.end(), c.slots.begin(), c.slots.end() - 1);
    hel_add(out, t, s);
    return out;
}

HElement connes_norm(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out, cur;
    hel_add(cur, c, Scalar(1));
    for (int i = 0; i < c.p(); ++i) {
        hel_add_scaled(out, cur, Scalar(1));
        HElement next;
        for (const auto& [ch, v] : cur)
            hel_add_scaled(next, connes_tau(a, ch), v);
        cur = std::move(next);
    }
    return out;
}

HElement coeff_internal(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out;
    for (const auto& [k, v] : a.diff[c.m]) {
        HChain t = c;
        t.m = k;
        hel_add(out, t, v);
    }
    long long pre = a.basis[c.m].degree;
    for (int i = 0; i < c.p(); ++i) {
        // (-1)^{i+|m|+|a_1|+...+|a_{i-1}|}, 1-based i
        Scalar s = psign((i + 1) + pre);
        for (const auto& [k, v] : a.diff[c.slots[i]]) {
            HChain t = c;
            t.slots[i] = k;
            hel_add(out, t, s * v);
        }
        pre += a.basis[c.slots[i]].degree;
    }
    return out;
}

HElement coeff_b(const FinGradedAlgebra& a, const HChain& c)
{
    HElement out;
    int p = c.p();
    if (p == 0)
        return out;
    {
        Scalar s = psign(a.basis[c.m].degree);
        for (const auto& [k, v] : a.mult[c.m][c.slots[0]]) {
            HChain t;
            t.m = k;
            t.slots.assign(c.slots.begin() + 1, c.slots.end());
            hel_add(out, t, s * v);
        }
    }
    long long degs = a.basis[c.m].degree;
    for (int i = 0; i + 1 < p; ++i) {
        degs += a.basis[c.slots[i]].degree;
        // (-1)^{i+|m|+|a_1|+...+|a_i|}, 1-based i
        Scalar s = psign((i + 1) + degs);
        for (const auto& [k, v] : a.mult[c.slots[i]][c.slots[i + 1]]) {
            HChain t;
            t.m = c.m;
            t.slots.assign(c.slots.begin(), c.slots.begin() + i);
            t.slots.push_back(k);
            t.slots.insert(t.slots.end(), c.slots.begin() + i + 2, c.slots.end());
            hel_add(out, t, s * v);
        }
    }
    {
        long long mid = a.basis[c.m].degree;
        for (int i = 0; i + 1 < p; ++i)
            mid += a.basis[c.slots[i]].degree;
        long long ap = a.basis[c.slots[p - 1]].degree;
        Scalar s = psign((ap + 1) * (p + 1 + mid) - 1);
        for (const auto& [k, v] : a.mult[c.slots[p - 1]][c.m]) {
            HChain t;
            t.m = k;
            t.slots.assign(c.slots.begin(), c.slots.end() - 1);
            hel_add(out, t, s * v);
        }
    }
    return out;
}

CoinvariantChains::CoinvariantChains(const FinGradedAlgebra& a, int p, int s, bool with_m)
{
    int total = p + (with_m ? 1 : 0);
    if (total == 0)
        return;
    std::vector<int> tuple(total);
    std::function<void(int, int)> rec = [&](int pos, int deg) {
        if (pos == total) {
            if (deg != s)
                return;
            HChain c;
            if (with_m) {
                c.m = tuple[0];
                c.slots.assign(tuple.begin() + 1, tuple.end());
            }
            else
                c.slots = tuple;
            if (chain_cyclic(a, c)) {
                index_[c] = (int)raw_.size();
                raw_.push_back(c);
            }
            return;
        }
        for (int i = 0; i < a.dim(); ++i) {
            if (pos > 0 && a.basis[tuple[pos - 1]].source != a.basis[i].target)
                continue;
            tuple[pos] = i;
            rec(pos + 1, deg + a.basis[i].degree);
        }
    };
    rec(0, 0);

    // tensor-over-l relations at every juncture, including the cyclic one:
    // slots listed head to tail, with slot -1 denoting the m position
    detail::Mat rel;
    auto slot_get = [&](const HChain& c, int pos) {
        return pos < 0 ? c.m : c.slots[pos];
    };
    auto slot_set = [&](HChain& c, int pos, int v) {
        if (pos < 0)
            c.m = v;
        else
            c.slots[pos] = v;
    };
    int first_pos = with_m ? -1 : 0;
    int last_pos = p - 1;
    if (!with_m && p == 0)
        return;
    for (const auto& c : raw_) {
        // junctures (u, v): u's source = v's target; cyclically closed
        std::vector<std::pair<int, int>> junctures;
        for (int pos = first_pos; pos < last_pos; ++pos)
            junctures.push_back({pos, pos + 1});
        junctures.push_back({last_pos, first_pos});  // the wrap
        for (const auto& [up, vp] : junctures) {
            int u = slot_get(c, up), v = slot_get(c, vp);
            int comp = a.basis[u].source;
            const BaseComponent& bc = a.base.components[comp];
            for (int b = 1; b < bc.dim(); ++b) {
                int lam = a.unit_slot.at({comp, b});
                std::vector<Scalar> row(raw_.size(), Scalar(0));
                bool nz = false;
                // (u . lambda) at up
                for (const auto& [k, w] : a.mult[u][lam]) {
                    HChain t = c;
                    slot_set(t, up, k);
                    auto it = index_.find(t);
                    if (it != index_.end()) {
                        row[it->second] += w;
                        nz = true;
                    }
                }
                // minus (lambda . v) at vp
                for (const auto& [k, w] : a.mult[lam][v]) {
                    HChain t = c;
                    slot_set(t, vp, k);
                    auto it = index_.find(t);
                    if (it != index_.end()) {
                        row[it->second] -= w;
                        nz = true;
                    }
                }
                if (nz)
                    rel.push_back(std::move(row));
            }
        }
    }
    auto pivots = detail::rref(rel);
    for (auto it = rel.begin(); it != rel.end();) {
        bool nz = false;
        for (const auto& x : *it)
            nz = nz || !is_zero(x);
        it = nz ? std::next(it) : rel.erase(it);
    }
    rel_rows_ = std::move(rel);
    std::set<int> piv(pivots.begin(), pivots.end());
    for (int i = 0; i < (int)raw_.size(); ++i)
        if (!piv.count(i))
            reduced_.push_back(i);
}

std::vector<Scalar> CoinvariantChains::reduce(const HElement& v) const
{
    std::vector<Scalar> x(raw_.size(), Scalar(0));
    for (const auto& [c, a] : v) {
        auto it = index_.find(c);
        if (it == index_.end())
            throw EngineError("BadChain", "chain outside the enumerated space");
        x[it->second] = a;
    }
    for (const auto& row : rel_rows_) {
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
    std::vector<Scalar> out;
    out.reserve(reduced_.size());
    for (int i : reduced_)
        out.push_back(x[i]);
    return out;
}

namespace {

struct SpaceCache {
    const FinGradedAlgebra* a = nullptr;
    std::map<std::tuple<int, int, bool>, CoinvariantChains> cache;

    const CoinvariantChains& get(int p, int s, bool with_m)
    {
        auto key = std::make_tuple(p, s, with_m);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, CoinvariantChains(*a, p, s, with_m)).first;
        return it->second;
    }
};

using Op = std::function<HElement(const FinGradedAlgebra&, const HChain&)>;

/* Writes op from a source part into a destination part of the matrix. */
void fill_block(const FinGradedAlgebra& a, SliceMatrix& m, const CoinvariantChains& src,
                int row_off, const CoinvariantChains& dst, int col_off, const Op& op,
                const Scalar& scale)
{
    for (int i = 0; i < src.reduced_dim(); ++i) {
        HElement img = op(a, src.reduced_rep(i));
        std::vector<Scalar> co = dst.reduce(img);
        for (int j = 0; j < (int)co.size(); ++j)
            if (!is_zero(co[j]))
                m.set(row_off + i, col_off + j, m.get(row_off + i, col_off + j) + scale * co[j]);
    }
}

/* Generic assembly of a tower of mixed complexes: columns with inner-degree
 * offsets; t glues column j to j + t_dir. t_dir 0 means no tower (plain M). */
LabelledWindow assemble_tower(SpaceCache& cache, int p_max, int lo, int hi, int columns,
                              int column_shift, int t_dir)
{
    const FinGradedAlgebra& a = *cache.a;
    LabelledWindow out;
    out.first_degree = lo;
    out.window.first_degree = lo;

    auto parts_at = [&](int n) {
        std::map<PartKey, std::pair<int, int>> layout;
        int off = 0;
        for (int j = 0; j < columns; ++j) {
            int mu = n + column_shift * j;  // inner M-degree of column j
            for (int p = 1; p <= p_max; ++p) {
                int d = cache.get(p, mu + p - 1, false).reduced_dim();
                if (d > 0) {
                    layout[{'C', p, j}] = {off, d};
                    off += d;
                }
            }
            for (int p = 1; p <= p_max; ++p) {
                int d = cache.get(p, mu + p, false).reduced_dim();
                if (d > 0) {
                    layout[{'B', p, j}] = {off, d};
                    off += d;
                }
            }
        }
        return std::make_pair(layout, off);
    };

    std::vector<std::map<PartKey, std::pair<int, int>>> layouts;
    for (int n = lo; n <= hi; ++n) {
        auto [lay, dim] = parts_at(n);
        layouts.push_back(lay);
        out.window.dims.push_back(dim);
    }

    for (int n = lo; n < hi; ++n) {
        const auto& src = layouts[n - lo];
        const auto& dst = layouts[n - lo + 1];
        SliceMatrix m;
        m.row_labels.assign(out.window.dims[n - lo], "");
        m.col_labels.assign(out.window.dims[n - lo + 1], "");
        for (const auto& [key, od] : src) {
            int j = key.column, p = key.p;
            int mu = n + column_shift * j;
            if (key.kind == 'C') {
                const auto& s = cache.get(p, mu + p - 1, false);
                // internal: C(p) at mu -> C(p) at mu+1
                if (auto it = dst.find({'C', p, j}); it != dst.end())
                    fill_block(a, m, s, od.first, cache.get(p, mu + p, false),
                               it->second.first, bar_internal, Scalar(1));
                // b: C(p) -> C(p-1)
                if (p >= 2)
                    if (auto it = dst.find({'C', p - 1, j}); it != dst.end())
                        fill_block(a, m, s, od.first, cache.get(p - 1, mu + p - 1, false),
                                   it->second.first, hoch_b, Scalar(1));
                // tower glue: t into column j + t_dir
                if (t_dir != 0) {
                    int j2 = j + t_dir;
                    if (j2 >= 0 && j2 < columns)
                        if (auto it = dst.find({'B', p, j2}); it != dst.end())
                            fill_block(a, m, s, od.first,
                                       cache.get(p, mu + p - 1, false), it->second.first,
                                       connes_norm, Scalar(1));
                }
            }
            else {  // 'B'
                const auto& s = cache.get(p, mu + p, false);
                if (auto it = dst.find({'B', p, j}); it != dst.end())
                    fill_block(a, m, s, od.first, cache.get(p, mu + p + 1, false),
                               it->second.first, bar_internal, Scalar(-1));
                if (p >= 2)
                    if (auto it = dst.find({'B', p - 1, j}); it != dst.end())
                        fill_block(a, m, s, od.first, cache.get(p - 1, mu + p, false),
                                   it->second.first, bar_bprime, Scalar(-1));
                // cone mixing (1 - tau): B(p) at mu -> C(p) at mu+1 (same raw space)
                if (auto it = dst.find({'C', p, j}); it != dst.end()) {
                    const auto& d2 = cache.get(p, mu + p, false);
                    fill_block(
                        a, m, s, od.first, d2, it->second.first,
                        [](const FinGradedAlgebra& aa, const HChain& c) {
                            HElement e;
                            hel_add(e, c, Scalar(1));
                            hel_add_scaled(e, connes_tau(aa, c), Scalar(-1));
                            return e;
                        },
                        Scalar(1));
                }
            }
        }
        out.window.maps.push_back(std::move(m));
    }
    out.layout = std::move(layouts);
    return out;
}

int tower_homology(const FinGradedAlgebra& a, int degree, int p_max, int columns,
                   int column_shift, int t_dir)
{
    SpaceCache cache{&a, {}};
    LabelledWindow w =
        assemble_tower(cache, p_max, degree - 1, degree + 1, columns, column_shift, t_dir);
    return homology_dim(w.window, degree);
}

}  // namespace

MixedWindow mixed_complex(const FinGradedAlgebra& a, int p_max, int lo, int hi)
{
    SpaceCache cache{&a, {}};
    MixedWindow mw;
    mw.lw = assemble_tower(cache, p_max, lo, hi, 1, 0, 0);
    // t maps M^n -> M^{n-1} for n in (lo, hi]
    for (int n = lo + 1; n <= hi; ++n) {
        const auto& src = mw.lw.layout[n - lo];
        const auto& dst = mw.lw.layout[n - 1 - lo];
        SliceMatrix m;
        m.row_labels.assign(mw.lw.window.dims[n - lo], "");
        m.col_labels.assign(mw.lw.window.dims[n - 1 - lo], "");
        for (const auto& [key, od] : src) {
            if (key.kind != 'C')
                continue;
            int p = key.p;
            if (auto it = dst.find({'B', p, 0}); it != dst.end())
                fill_block(a, m, cache.get(p, n + p - 1, false), od.first,
                           cache.get(p, n + p - 1, false), it->second.first, connes_norm,
                           Scalar(1));
        }
        mw.t_maps.push_back(std::move(m));
    }
    return mw;
}

TruncatedDim hh_dims(const FinGradedAlgebra& a, int n, int p_max)
{
    TruncatedDim out;
    out.dim = tower_homology(a, -n, p_max, 1, 0, 0);
    out.truncation_insufficient = (tower_homology(a, -n, p_max + 1, 1, 0, 0) != out.dim);
    return out;
}

namespace {

int coeff_homology(const FinGradedAlgebra& a, int degree, int p_max)
{
    SpaceCache cache{&a, {}};
    // coefficients complex: part (p) at degree m has internal degree m + p
    auto layout_at = [&](int m) {
        std::map<PartKey, std::pair<int, int>> lay;
        int off = 0;
        for (int p = 0; p <= p_max; ++p) {
            int d = cache.get(p, m + p, true).reduced_dim();
            if (d > 0) {
                lay[{'M', p, 0}] = {off, d};
                off += d;
            }
        }
        return std::make_pair(lay, off);
    };
    ComplexWindow w;
    w.first_degree = degree - 1;
    std::vector<std::map<PartKey, std::pair<int, int>>> layouts;
    for (int m = degree - 1; m <= degree + 1; ++m) {
        auto [lay, dim] = layout_at(m);
        layouts.push_back(lay);
        w.dims.push_back(dim);
    }
    for (int m = degree - 1; m < degree + 1; ++m) {
        const auto& src = layouts[m - (degree - 1)];
        const auto& dst = layouts[m - (degree - 1) + 1];
        SliceMatrix mat;
        mat.row_labels.assign(w.dims[m - (degree - 1)], "");
        mat.col_labels.assign(w.dims[m - (degree - 1) + 1], "");
        for (const auto& [key, od] : src) {
            int p = key.p;
            const auto& s = cache.get(p, m + p, true);
            if (auto it = dst.find({'M', p, 0}); it != dst.end())
                fill_block(a, mat, s, od.first, cache.get(p, m + p + 1, true),
                           it->second.first, coeff_internal, Scalar(1));
            if (p >= 1)
                if (auto it = dst.find({'M', p - 1, 0}); it != dst.end())
                    fill_block(a, mat, s, od.first, cache.get(p - 1, m + p, true),
                               it->second.first, coeff_b, Scalar(1));
        }
        w.maps.push_back(std::move(mat));
    }
    return homology_dim(w, degree);
}

}  // namespace

TruncatedDim hh_coeff_dims(const FinGradedAlgebra& a, int n, int p_max)
{
    TruncatedDim out;
    out.dim = coeff_homology(a, -n, p_max);
    out.truncation_insufficient = (coeff_homology(a, -n, p_max + 1) != out.dim);
    return out;
}

TruncatedDim hc_dims(const FinGradedAlgebra& a, int n, int p_max, int column_cap)
{
    TruncatedDim out;
    out.dim = tower_homology(a, -n, p_max, column_cap + 1, 2, -1);
    out.truncation_insufficient =
        (tower_homology(a, -n, p_max + 1, column_cap + 1, 2, -1) != out.dim);
    return out;
}

TruncatedDim hn_dims(const FinGradedAlgebra& a, int n, int p_max, int column_cap)
{
    TruncatedDim out;
    out.dim = tower_homology(a, -n, p_max, column_cap + 1, -2, +1);
    out.truncation_insufficient =
        (tower_homology(a, -n, p_max + 1, column_cap + 1, -2, +1) != out.dim);
    return out;
}

namespace {

/* Dual bar complex on the augmentation ideal: functionals on composable
 * all-ideal tuples, right-l-equivariant, valued in the source component.
 * For p = 0 the "tuples" are the components themselves (functionals on l). */
struct DualBarSpace {
    int p = 0;
    std::vector<HChain> tuples;             // slots = ideal tuple; p = 0: m = comp
    std::map<HChain, int> index;
    std::map<std::pair<int, int>, int> var_of;  // (tuple idx, value basis) -> var
    std::vector<std::vector<Scalar>> funcs;     // basis functionals over the vars
    std::vector<int> free_cols;                 // coordinate-extraction columns

    int dim() const { return (int)funcs.size(); }
    int value_comp(const FinGradedAlgebra& a, int t) const
    {
        return p == 0 ? tuples[t].m : a.basis[tuples[t].slots.back()].source;
    }
};

DualBarSpace dual_bar_space(const FinGradedAlgebra& a, int p, int s)
{
    DualBarSpace out;
    out.p = p;
    int nvars = 0;
    if (p == 0) {
        if (s != 0)
            return out;
        for (int ci = 0; ci < (int)a.base.components.size(); ++ci) {
            HChain t;
            t.m = ci;
            out.index[t] = (int)out.tuples.size();
            out.tuples.push_back(t);
        }
    }
    else {
        std::vector<int> ideal = a.ideal_elements();
        std::vector<int> tuple(p);
        std::function<void(int, int)> rec = [&](int pos, int deg) {
            if (pos == p) {
                if (deg != s)
                    return;
                HChain c;
                c.slots = tuple;
                out.index[c] = (int)out.tuples.size();
                out.tuples.push_back(c);
                return;
            }
            for (int i : ideal) {
                if (pos > 0 && a.basis[tuple[pos - 1]].source != a.basis[i].target)
                    continue;
                tuple[pos] = i;
                rec(pos + 1, deg + a.basis[i].degree);
            }
        };
        rec(0, 0);
    }
    for (int t = 0; t < (int)out.tuples.size(); ++t) {
        int comp = out.value_comp(a, t);
        for (int b = 0; b < a.base.components[comp].dim(); ++b)
            out.var_of[{t, b}] = nvars++;
    }
    if (nvars == 0)
        return out;

    detail::Mat cons;
    for (int t = 0; t < (int)out.tuples.size() && p > 0; ++t) {
        const auto& T = out.tuples[t].slots;
        int scomp = a.basis[T.back()].source;
        const BaseComponent& sc = a.base.components[scomp];
        // inner relations: f((a_i lam) (x) a_{i+1}) = f(a_i (x) (lam a_{i+1}))
        for (int i = 0; i + 1 < p; ++i) {
            int comp = a.basis[T[i]].source;
            const BaseComponent& bc = a.base.components[comp];
            for (int b = 1; b < bc.dim(); ++b) {
                int lam = a.unit_slot.at({comp, b});
                for (int vb = 0; vb < sc.dim(); ++vb) {
                    std::vector<Scalar> row(nvars, Scalar(0));
                    bool nz = false;
                    for (const auto& [k, v] : a.mult[T[i]][lam]) {
                        HChain c;
                        c.slots = T;
                        c.slots[i] = k;
                        auto it = out.index.find(c);
                        if (it != out.index.end()) {
                            row[out.var_of.at({it->second, vb})] += v;
                            nz = true;
                        }
                    }
                    for (const auto& [k, v] : a.mult[lam][T[i + 1]]) {
                        HChain c;
                        c.slots = T;
                        c.slots[i + 1] = k;
                        auto it = out.index.find(c);
                        if (it != out.index.end()) {
                            row[out.var_of.at({it->second, vb})] -= v;
                            nz = true;
                        }
                    }
                    if (nz)
                        cons.push_back(std::move(row));
                }
            }
        }
        // right equivariance: f(T . lam) = f(T) lam
        for (int b = 1; b < sc.dim(); ++b) {
            int lam = a.unit_slot.at({scomp, b});
            for (int vb = 0; vb < sc.dim(); ++vb) {
                std::vector<Scalar> row(nvars, Scalar(0));
                bool nz = false;
                for (const auto& [k, v] : a.mult[T.back()][lam]) {
                    HChain c;
                    c.slots = T;
                    c.slots.back() = k;
                    auto it = out.index.find(c);
                    if (it != out.index.end()) {
                        row[out.var_of.at({it->second, vb})] += v;
                        nz = true;
                    }
                }
                for (int ub = 0; ub < sc.dim(); ++ub) {
                    Scalar coef = sc.mult[ub][b][vb];
                    if (!is_zero(coef)) {
                        row[out.var_of.at({t, ub})] -= coef;
                        nz = true;
                    }
                }
                if (nz)
                    cons.push_back(std::move(row));
            }
        }
    }
    if (cons.empty()) {
        for (int v = 0; v < nvars; ++v) {
            std::vector<Scalar> f(nvars, Scalar(0));
            f[v] = 1;
            out.funcs.push_back(std::move(f));
            out.free_cols.push_back(v);
        }
    }
    else
        out.funcs = detail::null_space(cons, &out.free_cols);
    return out;
}

}  // namespace

TruncatedDim koszul_ext(const FinGradedAlgebra& a, int n, int p_max)
{
    if (!a.augmented)
        throw EngineError("NoAugmentation", "koszul_ext needs an augmented algebra");

    auto ext_at = [&](int m, int pmax) {
        std::map<std::pair<int, int>, DualBarSpace> sp;
        auto get = [&](int p, int s) -> DualBarSpace& {
            auto key = std::make_pair(p, s);
            auto it = sp.find(key);
            if (it == sp.end())
                it = sp.emplace(key, dual_bar_space(a, p, s)).first;
            return it->second;
        };
        // Ext-degree e collects the spaces (p, s = p - e)
        auto layout_at = [&](int e) {
            std::map<std::pair<int, int>, std::pair<int, int>> lay;
            int off = 0;
            for (int p = 0; p <= pmax; ++p) {
                int d = get(p, p - e).dim();
                if (d > 0) {
                    lay[{p, p - e}] = {off, d};
                    off += d;
                }
            }
            return std::make_pair(lay, off);
        };
        ComplexWindow w;
        w.first_degree = m - 1;
        std::vector<std::map<std::pair<int, int>, std::pair<int, int>>> lays;
        for (int e = m - 1; e <= m + 1; ++e) {
            auto [lay, dim] = layout_at(e);
            lays.push_back(lay);
            w.dims.push_back(dim);
        }
        // delta f = f o (b' + internal d), expressed in the target functional
        // bases through their free columns
        for (int e = m - 1; e < m + 1; ++e) {
            const auto& src_lay = lays[e - (m - 1)];
            const auto& dst_lay = lays[e - (m - 1) + 1];
            SliceMatrix mat;
            mat.row_labels.assign(w.dims[e - (m - 1)], "");
            mat.col_labels.assign(w.dims[e - (m - 1) + 1], "");
            for (const auto& [ps, od] : src_lay) {
                DualBarSpace& S = sp.at(ps);
                auto add_component = [&](DualBarSpace& D, int dst_off, bool use_bprime) {
                    if (D.dim() == 0)
                        return;
                    for (int fi = 0; fi < S.dim(); ++fi) {
                        // raw coordinates of delta f over D's variables
                        std::vector<Scalar> raw(D.var_of.size(), Scalar(0));
                        for (int tj = 0; tj < (int)D.tuples.size(); ++tj) {
                            HElement img = use_bprime ? bar_bprime(a, D.tuples[tj])
                                                      : bar_internal(a, D.tuples[tj]);
                            int comp = D.value_comp(a, tj);
                            for (int vb = 0; vb < a.base.components[comp].dim(); ++vb) {
                                Scalar val(0);
                                for (const auto& [ch, cv] : img) {
                                    auto iT = S.index.find(ch);
                                    if (iT == S.index.end())
                                        continue;
                                    auto iv = S.var_of.find({iT->second, vb});
                                    if (iv != S.var_of.end())
                                        val += cv * S.funcs[fi][iv->second];
                                }
                                if (!is_zero(val))
                                    raw[D.var_of.at({tj, vb})] = val;
                            }
                        }
                        for (int k = 0; k < D.dim(); ++k) {
                            Scalar c = raw[D.free_cols[k]];
                            if (!is_zero(c))
                                mat.set(od.first + fi, dst_off + k,
                                        mat.get(od.first + fi, dst_off + k) + c);
                        }
                    }
                };
                auto [p, s] = ps;
                if (auto it = dst_lay.find(std::make_pair(p + 1, s)); it != dst_lay.end())
                    add_component(get(p + 1, s), it->second.first, true);
                if (auto it = dst_lay.find(std::make_pair(p, s - 1)); it != dst_lay.end())
                    add_component(get(p, s - 1), it->second.first, false);
            }
            w.maps.push_back(std::move(mat));
        }
        return homology_dim(w, m);
    };
    TruncatedDim out;
    out.dim = ext_at(n, p_max);
    out.truncation_insufficient = (ext_at(n, p_max + 1) != out.dim);
    return out;
}

SmoothnessReport smoothness_probe(const FinGradedAlgebra& a, int degree_cap, int p_max)
{
    SmoothnessReport rep;
    for (int n = 0; n <= degree_cap; ++n) {
        TruncatedDim t = koszul_ext(a, n, p_max);
        rep.ext_dims.push_back(t.dim);
        rep.any_truncation_flag = rep.any_truncation_flag || t.truncation_insufficient;
    }
    rep.proper_up_to_cap = degree_cap >= 1 && rep.ext_dims[degree_cap] == 0 &&
                           rep.ext_dims[degree_cap - 1] == 0;
    return rep;
}

}  // namespace qp
