#include "qpengine/fin_algebra.hpp"

namespace qp {

namespace {

void add_into(std::map<int, Scalar>& into, const std::map<int, Scalar>& v, const Scalar& c)
{
    if (is_zero(c))
        return;
    for (const auto& [i, a] : v) {
        Scalar s = into[i] + c * a;
        if (is_zero(s))
            into.erase(i);
        else
            into[i] = s;
    }
}

}  // namespace

bool FinGradedAlgebra::is_unit_elt(int i) const
{
    for (const auto& [k, v] : unit_slot)
        if (v == i)
            return true;
    return false;
}

std::vector<int> FinGradedAlgebra::ideal_elements() const
{
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (!is_unit_elt(i))
            out.push_back(i);
    return out;
}

std::map<int, Scalar> FinGradedAlgebra::product(const std::map<int, Scalar>& x,
                                                const std::map<int, Scalar>& y) const
{
    std::map<int, Scalar> out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
            add_into(out, mult[i][j], a * b);
    return out;
}

void FinGradedAlgebra::validate() const
{
    base.validate();
    int n = dim();
    if ((int)mult.size() != n || (int)diff.size() != n)
        throw EngineError("BadAlgebra", "table sizes do not match the basis");
    for (const auto& row : mult)
        if ((int)row.size() != n)
            throw EngineError("BadAlgebra", "ragged multiplication table");

    // products respect typing and grading
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (basis[i].source != basis[j].target && !mult[i][j].empty())
                throw EngineError("BadAlgebra", "non-composable product is nonzero");
            for (const auto& [k, c] : mult[i][j]) {
                (void)c;
                if (basis[k].degree != basis[i].degree + basis[j].degree)
                    throw EngineError("BadAlgebra", "product not graded");
                if (basis[k].source != basis[j].source || basis[k].target != basis[i].target)
                    throw EngineError("BadAlgebra", "product typing broken");
            }
        }
    // unit slots realise l: e_(c,a) e_(c,b) = expansion of the component product
    for (const auto& [ka, ia] : unit_slot)
        for (const auto& [kb, ib] : unit_slot) {
            if (ka.first != kb.first) {
                if (!mult[ia][ib].empty())
                    throw EngineError("BadAlgebra", "cross-component unit product");
                continue;
            }
            const BaseComponent& c = base.components[ka.first];
            const CompElt& prod = c.mult[ka.second][kb.second];
            std::map<int, Scalar> expect;
            for (int m = 0; m < c.dim(); ++m)
                if (!is_zero(prod[m]))
                    expect[unit_slot.at({ka.first, m})] = prod[m];
            if (mult[ia][ib] != expect)
                throw EngineError("BadAlgebra", "unit slots do not multiply as l");
        }
    // two-sided unit
    std::map<int, Scalar> one;
    for (int ci = 0; ci < (int)base.components.size(); ++ci)
        one[unit_slot.at({ci, 0})] = 1;
    for (int i = 0; i < n; ++i) {
        std::map<int, Scalar> xi{{i, Scalar(1)}};
        if (product(one, xi) != xi || product(xi, one) != xi)
            throw EngineError("BadAlgebra", basis[i].name + ": unit fails");
    }
    // associativity
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::map<int, Scalar> xk{{k, Scalar(1)}};
                std::map<int, Scalar> xi{{i, Scalar(1)}};
                if (product(mult[i][j], xk) != product(xi, mult[j][k]))
                    throw EngineError("BadAlgebra", "not associative");
            }
    // d: degree +1, Leibniz, d^2 = 0
    for (int i = 0; i < n; ++i)
        for (const auto& [k, c] : diff[i]) {
            (void)c;
            if (basis[k].degree != basis[i].degree + 1)
                throw EngineError("BadAlgebra", "differential not of degree 1");
            if (basis[k].source != basis[i].source || basis[k].target != basis[i].target)
                throw EngineError("BadAlgebra", "differential typing broken");
        }
    auto d_of = [&](const std::map<int, Scalar>& x) {
        std::map<int, Scalar> out;
        for (const auto& [i, a] : x)
            add_into(out, diff[i], a);
        return out;
    };
    for (int i = 0; i < n; ++i) {
        if (!d_of(diff[i]).empty())
            throw EngineError("BadAlgebra", "d^2 != 0 at " + basis[i].name);
        for (int j = 0; j < n; ++j) {
            std::map<int, Scalar> lhs = d_of(mult[i][j]);
            std::map<int, Scalar> rhs;
            std::map<int, Scalar> xj{{j, Scalar(1)}};
            std::map<int, Scalar> xi{{i, Scalar(1)}};
            add_into(rhs, product(d_of(xi), xj), Scalar(1));
            add_into(rhs, product(xi, d_of(xj)),
                     basis[i].degree % 2 ? Scalar(-1) : Scalar(1));
            if (lhs != rhs)
                throw EngineError("BadAlgebra", "Leibniz fails at " + basis[i].name + " " +
                                                    basis[j].name);
        }
    }
    if (augmented) {
        // the ideal part must be closed under multiplication and d
        for (int i : ideal_elements()) {
            for (const auto& [k, c] : diff[i]) {
                (void)c;
                if (is_unit_elt(k))
                    throw EngineError("BadAlgebra", "d leaves the augmentation ideal");
            }
            for (int j : ideal_elements())
                for (const auto& [k, c] : mult[i][j]) {
                    (void)c;
                    if (is_unit_elt(k))
                        throw EngineError("BadAlgebra",
                                          "ideal product meets the unit part");
                }
        }
    }
}

namespace {

BaseRing rational_points(int n)
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

}  // namespace

FinGradedAlgebra dual_numbers() { return dual_numbers_graded(0); }

FinGradedAlgebra dual_numbers_graded(int xdeg)
{
    FinGradedAlgebra a;
    a.base = rational_points(1);
    a.basis = {{"1", 0, 0, 0}, {"x", 0, 0, xdeg}};
    a.unit_slot[{0, 0}] = 0;
    a.mult.assign(2, std::vector<std::map<int, Scalar>>(2));
    a.mult[0][0] = {{0, Scalar(1)}};
    a.mult[0][1] = {{1, Scalar(1)}};
    a.mult[1][0] = {{1, Scalar(1)}};
    a.mult[1][1] = {};
    a.diff.assign(2, {});
    a.augmented = true;
    a.validate();
    return a;
}

FinGradedAlgebra path_algebra_a2()
{
    FinGradedAlgebra a;
    a.base = rational_points(2);
    a.basis = {{"e1", 0, 0, 0}, {"e2", 1, 1, 0}, {"a", 0, 1, 0}};
    a.unit_slot[{0, 0}] = 0;
    a.unit_slot[{1, 0}] = 1;
    a.mult.assign(3, std::vector<std::map<int, Scalar>>(3));
    a.mult[0][0] = {{0, Scalar(1)}};
    a.mult[1][1] = {{1, Scalar(1)}};
    a.mult[2][0] = {{2, Scalar(1)}};  // a e1 = a
    a.mult[1][2] = {{2, Scalar(1)}};  // e2 a = a
    a.diff.assign(3, {});
    a.augmented = true;
    a.validate();
    return a;
}

FinGradedAlgebra truncated_polynomial(int n)
{
    FinGradedAlgebra a;
    a.base = rational_points(1);
    a.unit_slot[{0, 0}] = 0;
    for (int i = 0; i < n; ++i)
        a.basis.push_back({i == 0 ? "1" : "x" + std::to_string(i), 0, 0, 0});
    a.mult.assign(n, std::vector<std::map<int, Scalar>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n)
                a.mult[i][j] = {{i + j, Scalar(1)}};
    a.diff.assign(n, {});
    a.augmented = true;
    a.validate();
    return a;
}

FinGradedAlgebra base_only(const BaseRing& l)
{
    FinGradedAlgebra a;
    a.base = l;
    int id = 0;
    for (int ci = 0; ci < (int)l.components.size(); ++ci)
        for (int b = 0; b < l.components[ci].dim(); ++b) {
            a.basis.push_back({l.components[ci].name + "." + l.components[ci].basis_names[b],
                               ci, ci, 0});
            a.unit_slot[{ci, b}] = id++;
        }
    int n = a.dim();
    a.mult.assign(n, std::vector<std::map<int, Scalar>>(n));
    for (const auto& [ka, ia] : a.unit_slot)
        for (const auto& [kb, ib] : a.unit_slot) {
            if (ka.first != kb.first)
                continue;
            const BaseComponent& c = l.components[ka.first];
            const CompElt& prod = c.mult[ka.second][kb.second];
            for (int m = 0; m < c.dim(); ++m)
                if (!is_zero(prod[m]))
                    a.mult[ia][ib][a.unit_slot.at({ka.first, m})] = prod[m];
        }
    a.diff.assign(n, {});
    a.augmented = true;
    a.validate();
    return a;
}

}  // namespace qp
