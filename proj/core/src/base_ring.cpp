#include "qpengine/base_ring.hpp"

namespace qp {

CompElt BaseComponent::multiply(const CompElt& x, const CompElt& y) const
{
    CompElt out(dim(), Scalar(0));
    for (int i = 0; i < dim(); ++i) {
        if (is_zero(x[i]))
            continue;
        for (int j = 0; j < dim(); ++j) {
            if (is_zero(y[j]))
                continue;
            const CompElt& e = mult[i][j];
            Scalar c = x[i] * y[j];
            for (int m = 0; m < dim(); ++m)
                out[m] += c * e[m];
        }
    }
    return out;
}

Scalar BaseComponent::trace(const CompElt& x) const
{
    Scalar t(0);
    for (int i = 0; i < dim(); ++i)
        t += trace_weights[i] * x[i];
    return t;
}

void BaseComponent::validate() const
{
    int n = dim();
    if (n <= 0)
        throw EngineError("BadComponent", name + ": empty basis");
    if ((int)mult.size() != n || (int)trace_weights.size() != n)
        throw EngineError("BadComponent", name + ": table sizes do not match dim");
    for (const auto& row : mult) {
        if ((int)row.size() != n)
            throw EngineError("BadComponent", name + ": ragged multiplication table");
        for (const auto& e : row)
            if ((int)e.size() != n)
                throw EngineError("BadComponent", name + ": ragged product vector");
    }

    auto basis = [&](int i) {
        CompElt v(n, Scalar(0));
        v[i] = 1;
        return v;
    };

    // unit at basis 0
    for (int j = 0; j < n; ++j) {
        if (multiply(basis(0), basis(j)) != basis(j) || multiply(basis(j), basis(0)) != basis(j))
            throw EngineError("BadComponent", name + ": basis element 0 is not a unit");
    }
    // commutative
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mult[i][j] != mult[j][i])
                throw EngineError("BadComponent", name + ": not commutative");
    // associative
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                if (multiply(mult[i][j], basis(m)) != multiply(basis(i), mult[j][m]))
                    throw EngineError("BadComponent", name + ": not associative");
}

int BaseRing::component_index(const std::string& name) const
{
    for (int i = 0; i < (int)components.size(); ++i)
        if (components[i].name == name)
            return i;
    throw EngineError("UnknownComponent", name);
}

int BaseRing::total_dim() const
{
    int s = 0;
    for (const auto& c : components)
        s += c.dim();
    return s;
}

void BaseRing::validate() const
{
    std::set<std::string> names;
    for (const auto& c : components) {
        c.validate();
        if (!names.insert(c.name).second)
            throw EngineError("BadBaseRing", "duplicate component name " + c.name);
    }
    for (int f : frozen)
        if (f < 0 || f >= (int)components.size())
            throw EngineError("BadBaseRing", "frozen index out of range");
}

CompElt Casimir::theta(const BaseComponent& c, int comp_index) const
{
    CompElt t(c.dim(), Scalar(0));
    for (const auto& e : per_component[comp_index].left)
        for (int m = 0; m < c.dim(); ++m)
            t[m] += e[m];
    return t;
}

Casimir make_casimir(const BaseRing& l)
{
    Casimir out;
    for (const auto& c : l.components) {
        int n = c.dim();
        // Gram matrix G[i][j] = Tr(e_i e_j), inverted by Gauss-Jordan.
        std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(2 * n, Scalar(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                g[i][j] = c.trace(c.mult[i][j]);
            g[i][n + i] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!is_zero(g[r][col])) {
                    piv = r;
                    break;
                }
            if (piv < 0)
                throw EngineError("SingularTrace", "component " + c.name + " has singular trace Gram matrix");
            std::swap(g[col], g[piv]);
            Scalar inv = 1 / g[col][col];
            for (int j = 0; j < 2 * n; ++j)
                g[col][j] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == col || is_zero(g[r][col]))
                    continue;
                Scalar f = g[r][col];
                for (int j = 0; j < 2 * n; ++j)
                    g[r][j] -= f * g[col][j];
            }
        }
        CasimirComponent cc;
        for (int k = 0; k < n; ++k) {
            CompElt ek(n, Scalar(0)), dual(n, Scalar(0));
            ek[k] = 1;
            // e^k = sum_j (G^{-1})_{jk} e_j
            for (int j = 0; j < n; ++j)
                dual[j] = g[j][n + k];
            cc.left.push_back(ek);
            cc.right.push_back(dual);
        }
        out.per_component.push_back(std::move(cc));
    }
    return out;
}

bool casimir_dual_basis_identity(const BaseRing& l, const Casimir& sigma)
{
    for (int ci = 0; ci < (int)l.components.size(); ++ci) {
        const auto& c = l.components[ci];
        const auto& cc = sigma.per_component[ci];
        for (int b = 0; b < c.dim(); ++b) {
            CompElt x(c.dim(), Scalar(0));
            x[b] = 1;
            CompElt acc(c.dim(), Scalar(0));
            for (size_t k = 0; k < cc.left.size(); ++k) {
                Scalar w = c.trace(c.multiply(x, cc.left[k]));
                for (int m = 0; m < c.dim(); ++m)
                    acc[m] += w * cc.right[k][m];
            }
            if (acc != x)
                return false;
        }
    }
    return true;
}

}  // namespace qp
