#include "qpengine/cy.hpp"

#include <random>
#include <set>

namespace qp {

namespace {

int parity(long long n) { return (int)(((n % 2) + 2) % 2); }

void add_into(std::map<int, Scalar>& into, int k, const Scalar& v)
{
    if (is_zero(v))
        return;
    Scalar s = into[k] + v;
    if (is_zero(s))
        into.erase(k);
    else
        into[k] = s;
}

}  // namespace

std::map<int, Scalar> GradedCatData::compose(int f, int g) const
{
    auto it = comp.find({f, g});
    return it == comp.end() ? std::map<int, Scalar>{} : it->second;
}

std::map<int, Scalar> GradedCatData::compose(const std::map<int, Scalar>& f,
                                             const std::map<int, Scalar>& g) const
{
    std::map<int, Scalar> out;
    for (const auto& [i, a] : f)
        for (const auto& [j, b] : g)
            for (const auto& [k, c] : compose(i, j))
                add_into(out, k, a * b * c);
    return out;
}

std::vector<int> GradedCatData::hom_basis(int x, int y, int degree) const
{
    std::vector<int> out;
    for (int i = 0; i < (int)mors.size(); ++i)
        if (mors[i].src == x && mors[i].dst == y && mors[i].degree == degree)
            out.push_back(i);
    return out;
}

void GradedCatData::validate(int d) const
{
    if (identity_of.size() != objects.size())
        throw EngineError("BadCategory", "missing identities");
    for (int x = 0; x < (int)objects.size(); ++x) {
        const Mor& id = mors[identity_of[x]];
        if (id.src != x || id.dst != x || id.degree != 0)
            throw EngineError("BadCategory", "identity of wrong type");
    }
    for (int f = 0; f < (int)mors.size(); ++f) {
        for (const auto& [k, c] : compose(identity_of[mors[f].dst], f))
            if (k != f || c != 1)
                throw EngineError("BadCategory", "left identity fails");
        for (const auto& [k, c] : compose(f, identity_of[mors[f].src]))
            if (k != f || c != 1)
                throw EngineError("BadCategory", "right identity fails");
    }
    for (const auto& [fg, v] : comp) {
        const Mor& f = mors[fg.first];
        const Mor& g = mors[fg.second];
        if (g.dst != f.src && !v.empty())
            throw EngineError("BadCategory", "non-composable pair has a product");
        for (const auto& [k, c] : v) {
            (void)c;
            if (mors[k].src != g.src || mors[k].dst != f.dst ||
                mors[k].degree != f.degree + g.degree)
                throw EngineError("BadCategory", "composition typing broken");
        }
    }
    for (int f = 0; f < (int)mors.size(); ++f)
        for (int g = 0; g < (int)mors.size(); ++g) {
            if (mors[g].dst != mors[f].src)
                continue;
            for (int h = 0; h < (int)mors.size(); ++h) {
                if (mors[h].dst != mors[g].src)
                    continue;
                auto lhs = compose(compose(f, g), std::map<int, Scalar>{{h, Scalar(1)}});
                auto rhs = compose(std::map<int, Scalar>{{f, Scalar(1)}}, compose(g, h));
                if (lhs != rhs)
                    throw EngineError("BadCategory", "composition not associative");
            }
        }
    for (const auto& [f, v] : psi) {
        (void)v;
        if (mors[f].src != mors[f].dst || mors[f].degree != d)
            throw EngineError("BadCategory", "psi supported off degree-d endomorphisms");
    }
}

SliceMatrix pairing_matrix(const GradedCatData& data, int x, int y, int m, int d)
{
    std::vector<int> rows = data.hom_basis(x, y, m);
    std::vector<int> cols = data.hom_basis(y, x, d - m);
    SliceMatrix out;
    for (int f : rows)
        out.row_labels.push_back(data.mors[f].name);
    for (int g : cols)
        out.col_labels.push_back(data.mors[g].name);
    for (int r = 0; r < (int)rows.size(); ++r)
        for (int c = 0; c < (int)cols.size(); ++c) {
            Scalar v(0);
            for (const auto& [k, a] : data.compose(cols[c], rows[r])) {
                auto it = data.psi.find(k);
                if (it != data.psi.end())
                    v += a * it->second;
            }
            out.set(r, c, v);
        }
    return out;
}

CYReport check_right_cy(const GradedCatData& data, int d)
{
    data.validate(d);
    CYReport rep;
    int nobj = (int)data.objects.size();

    auto psi_of = [&](const std::map<int, Scalar>& v) {
        Scalar s(0);
        for (const auto& [k, a] : v) {
            auto it = data.psi.find(k);
            if (it != data.psi.end())
                s += a * it->second;
        }
        return s;
    };

    // symmetry on all composable basis pairs
    for (int f = 0; f < (int)data.mors.size(); ++f)
        for (int g = 0; g < (int)data.mors.size(); ++g) {
            const auto& mf = data.mors[f];
            const auto& mg = data.mors[g];
            if (mg.src != mf.dst || mg.dst != mf.src)
                continue;
            Scalar lhs = psi_of(data.compose(g, f));  // psi_X(g o f), f: X->Y
            Scalar rhs = psi_of(data.compose(f, g));
            Scalar sign = parity((long long)mf.degree * mg.degree) ? Scalar(-1) : Scalar(1);
            if (lhs != sign * rhs) {
                rep.symmetric = false;
                rep.failures.push_back("symmetry fails at (" + mf.name + ", " + mg.name + ")");
            }
        }

    // blockwise perfect pairing over the occupied degrees
    std::set<int> degrees;
    for (const auto& m : data.mors)
        degrees.insert(m.degree);
    for (int x = 0; x < nobj; ++x)
        for (int y = 0; y < nobj; ++y)
            for (int m : degrees) {
                auto rows = data.hom_basis(x, y, m);
                auto cols = data.hom_basis(y, x, d - m);
                if (rows.empty() && cols.empty())
                    continue;
                SliceMatrix pm = pairing_matrix(data, x, y, m, d);
                bool ok = (pm.rows() == pm.cols()) && rank(pm) == pm.rows();
                if (!ok) {
                    rep.nondegenerate = false;
                    rep.failures.push_back("degenerate pairing at (" + data.objects[x] +
                                           ", " + data.objects[y] + ", degree " +
                                           std::to_string(m) + ")");
                }
            }
    return rep;
}

GradedCatData random_basis_change(const GradedCatData& data, unsigned seed)
{
    std::mt19937_64 rng(seed);
    auto rnd = [&]() { return Scalar((long)(rng() % 7) - 3); };

    // identities keep their line so the result stays strictly unital
    std::set<int> ids_fixed(data.identity_of.begin(), data.identity_of.end());
    std::map<std::tuple<int, int, int>, std::vector<int>> homs;
    for (int i = 0; i < (int)data.mors.size(); ++i)
        if (!ids_fixed.count(i))
            homs[{data.mors[i].src, data.mors[i].dst, data.mors[i].degree}].push_back(i);

    int n = (int)data.mors.size();
    // S: new basis in terms of old, S_inv its inverse
    std::vector<std::vector<Scalar>> S(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i : ids_fixed)
        S[i][i] = 1;
    for (const auto& [key, ids] : homs) {
        (void)key;
        int k = (int)ids.size();
        // random invertible k x k as a unitriangular product
        std::vector<std::vector<Scalar>> u(k, std::vector<Scalar>(k, Scalar(0)));
        for (int i = 0; i < k; ++i) {
            u[i][i] = 1;
            for (int j = i + 1; j < k; ++j)
                u[i][j] = rnd();
        }
        std::vector<std::vector<Scalar>> l(k, std::vector<Scalar>(k, Scalar(0)));
        for (int i = 0; i < k; ++i) {
            l[i][i] = 1;
            for (int j = 0; j < i; ++j)
                l[i][j] = rnd();
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Scalar v(0);
                for (int t = 0; t < k; ++t)
                    v += u[i][t] * l[t][j];
                S[ids[i]][ids[j]] = v;
            }
    }
    // invert S
    std::vector<std::vector<Scalar>> aug(n, std::vector<Scalar>(2 * n, Scalar(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug[i][j] = S[i][j];
        aug[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(aug[r][c])) {
                piv = r;
                break;
            }
        if (piv < 0)
            throw EngineError("Internal", "basis change not invertible");
        std::swap(aug[c], aug[piv]);
        Scalar inv = 1 / aug[c][c];
        for (auto& x : aug[c])
            x *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || is_zero(aug[r][c]))
                continue;
            Scalar f = aug[r][c];
            for (int j = 0; j < 2 * n; ++j)
                aug[r][j] -= f * aug[c][j];
        }
    }
    std::vector<std::vector<Scalar>> Sinv(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Sinv[i][j] = aug[i][n + j];

    // new structure constants: f' = sum_j S[f][j] old_j
    GradedCatData out = data;
    out.comp.clear();
    out.psi.clear();
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (data.mors[g].dst != data.mors[f].src)
                continue;
            std::map<int, Scalar> oldprod;
            for (int i = 0; i < n; ++i) {
                if (is_zero(S[f][i]))
                    continue;
                for (int j = 0; j < n; ++j) {
                    if (is_zero(S[g][j]))
                        continue;
                    for (const auto& [k, c] : data.compose(i, j))
                        add_into(oldprod, k, S[f][i] * S[g][j] * c);
                }
            }
            // express in the new basis: old_k = sum Sinv[k][m] new_m
            std::map<int, Scalar> newprod;
            for (const auto& [k, c] : oldprod)
                for (int m2 = 0; m2 < n; ++m2)
                    add_into(newprod, m2, c * Sinv[k][m2]);
            if (!newprod.empty())
                out.comp[{f, g}] = std::move(newprod);
        }
    for (int f = 0; f < n; ++f) {
        Scalar v(0);
        for (int i = 0; i < n; ++i) {
            if (is_zero(S[f][i]))
                continue;
            auto it = data.psi.find(i);
            if (it != data.psi.end())
                v += S[f][i] * it->second;
        }
        if (!is_zero(v))
            out.psi[f] = v;
    }
    return out;
}

}  // namespace qp
