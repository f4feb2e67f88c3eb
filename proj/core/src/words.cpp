#include "qpengine/words.hpp"

#include <sstream>

namespace qp {

int word_degree(const GeneratorSystem& gen, const Word& w)
{
    int d = 0;
    for (int id : w.letters)
        d += gen.letter(id).degree;
    return d;
}

int word_source(const GeneratorSystem& gen, const Word& w)
{
    if (w.is_unit())
        return w.unit_component;
    return gen.letter(w.letters.back()).source;
}

int word_target(const GeneratorSystem& gen, const Word& w)
{
    if (w.is_unit())
        return w.unit_component;
    return gen.letter(w.letters.front()).target;
}

bool word_composable(const GeneratorSystem& gen, const Word& w)
{
    for (size_t j = 0; j + 1 < w.letters.size(); ++j)
        if (gen.letter(w.letters[j]).source != gen.letter(w.letters[j + 1]).target)
            return false;
    return true;
}

std::string word_str(const GeneratorSystem& gen, const Word& w)
{
    if (w.is_unit()) {
        const auto& c = gen.base().components[w.unit_component];
        return "1_" + c.name + (w.unit_basis ? ("." + c.basis_names[w.unit_basis]) : "");
    }
    std::string s;
    for (size_t j = 0; j < w.letters.size(); ++j) {
        if (j)
            s += " ";
        s += gen.letter(w.letters[j]).name;
    }
    return s;
}

TensorElement te_zero(int trunc)
{
    TensorElement t;
    t.trunc = trunc;
    return t;
}

TensorElement te_one(const GeneratorSystem& gen, int trunc)
{
    TensorElement t = te_zero(trunc);
    for (int c = 0; c < (int)gen.base().components.size(); ++c)
        t.terms[Word::unit(c, 0)] = 1;
    return t;
}

TensorElement te_word(const GeneratorSystem& gen, const Word& w, const Scalar& c, int trunc)
{
    if (!w.is_unit())
        return normalize_sequence(gen, w.letters, c, trunc);
    TensorElement t = te_zero(trunc);
    if (!is_zero(c))
        t.terms[w] = c;
    return t;
}

void te_add(TensorElement& into, const TensorElement& v, const Scalar& c)
{
    if (is_zero(c))
        return;
    for (const auto& [w, a] : v.terms) {
        Scalar s = into.terms[w] + c * a;
        if (is_zero(s))
            into.terms.erase(w);
        else
            into.terms[w] = s;
    }
}

TensorElement te_scale(const TensorElement& v, const Scalar& c)
{
    TensorElement out = te_zero(v.trunc);
    te_add(out, v, c);
    return out;
}

namespace {

void normalize_rec(const GeneratorSystem& gen, std::vector<int>& seq, int pos, const Scalar& c,
                   TensorElement& out)
{
    if (is_zero(c))
        return;
    if (pos <= 0) {
        Word w = Word::of(seq);
        Scalar s = out.terms[w] + c;
        if (is_zero(s))
            out.terms.erase(w);
        else
            out.terms[w] = s;
        return;
    }
    int id = seq[pos];
    if (gen.is_left_rep(id)) {
        normalize_rec(gen, seq, pos - 1, c, out);
        return;
    }
    const Letter& l = gen.letter(id);
    for (const auto& [lam, rep] : gen.left_decomposition(id)) {
        LinComb absorbed = gen.apply_right(seq[pos - 1], l.target, lam);
        for (const auto& [gid, a] : absorbed) {
            std::vector<int> next = seq;
            next[pos] = rep;
            next[pos - 1] = gid;
            normalize_rec(gen, next, pos - 1, c * a, out);
        }
    }
}

}  // namespace

TensorElement normalize_sequence(const GeneratorSystem& gen, const std::vector<int>& seq,
                                 const Scalar& coeff, int trunc)
{
    TensorElement out = te_zero(trunc);
    if (is_zero(coeff) || (int)seq.size() > trunc)
        return out;
    std::vector<int> s = seq;
    if (!word_composable(gen, Word::of(s)))
        throw EngineError("IncompatibleComponents", "word does not compose");
    normalize_rec(gen, s, (int)s.size() - 1, coeff, out);
    return out;
}

TensorElement multiply(const GeneratorSystem& gen, const TensorElement& u,
                       const TensorElement& v)
{
    if (u.trunc != v.trunc)
        throw EngineError("MismatchedSession", "operands carry different truncation levels");
    TensorElement out = te_zero(u.trunc);
    for (const auto& [wu, cu] : u.terms)
        for (const auto& [wv, cv] : v.terms) {
            Scalar c = cu * cv;
            if (wu.is_unit() && wv.is_unit()) {
                if (wu.unit_component != wv.unit_component)
                    continue;
                const auto& comp = gen.base().components[wu.unit_component];
                const CompElt& prod = comp.mult[wu.unit_basis][wv.unit_basis];
                for (int m = 0; m < comp.dim(); ++m)
                    if (!is_zero(prod[m])) {
                        TensorElement t = te_word(gen, Word::unit(wu.unit_component, m),
                                                  c * prod[m], u.trunc);
                        te_add(out, t);
                    }
                continue;
            }
            if (wu.is_unit()) {
                if (wu.unit_component != word_target(gen, wv))
                    continue;
                CompElt lam(gen.base().components[wu.unit_component].dim(), Scalar(0));
                lam[wu.unit_basis] = 1;
                te_add(out, left_mult_base(gen, wu.unit_component, lam,
                                           te_word(gen, wv, c, u.trunc)));
                continue;
            }
            if (wv.is_unit()) {
                if (wv.unit_component != word_source(gen, wu))
                    continue;
                CompElt lam(gen.base().components[wv.unit_component].dim(), Scalar(0));
                lam[wv.unit_basis] = 1;
                te_add(out, right_mult_base(gen, te_word(gen, wu, c, u.trunc),
                                            wv.unit_component, lam));
                continue;
            }
            if (word_source(gen, wu) != word_target(gen, wv))
                continue;
            if (wu.length() + wv.length() > u.trunc)
                continue;
            std::vector<int> seq = wu.letters;
            seq.insert(seq.end(), wv.letters.begin(), wv.letters.end());
            te_add(out, normalize_sequence(gen, seq, c, u.trunc));
        }
    return out;
}

TensorElement left_mult_base(const GeneratorSystem& gen, int comp, const CompElt& lambda,
                             const TensorElement& x)
{
    TensorElement out = te_zero(x.trunc);
    for (const auto& [w, c] : x.terms) {
        if (word_target(gen, w) != comp)
            continue;
        if (w.is_unit()) {
            const auto& cc = gen.base().components[comp];
            CompElt eb(cc.dim(), Scalar(0));
            eb[w.unit_basis] = 1;
            CompElt prod = cc.multiply(lambda, eb);
            for (int m = 0; m < cc.dim(); ++m)
                if (!is_zero(prod[m]))
                    te_add(out, te_word(gen, Word::unit(comp, m), c * prod[m], x.trunc));
            continue;
        }
        LinComb first = gen.apply_left(comp, lambda, w.letters.front());
        for (const auto& [gid, a] : first) {
            std::vector<int> seq = w.letters;
            seq.front() = gid;
            te_add(out, normalize_sequence(gen, seq, c * a, x.trunc));
        }
    }
    return out;
}

TensorElement right_mult_base(const GeneratorSystem& gen, const TensorElement& x, int comp,
                              const CompElt& lambda)
{
    TensorElement out = te_zero(x.trunc);
    for (const auto& [w, c] : x.terms) {
        if (word_source(gen, w) != comp)
            continue;
        if (w.is_unit()) {
            const auto& cc = gen.base().components[comp];
            CompElt eb(cc.dim(), Scalar(0));
            eb[w.unit_basis] = 1;
            CompElt prod = cc.multiply(eb, lambda);
            for (int m = 0; m < cc.dim(); ++m)
                if (!is_zero(prod[m]))
                    te_add(out, te_word(gen, Word::unit(comp, m), c * prod[m], x.trunc));
            continue;
        }
        LinComb last = gen.apply_right(w.letters.back(), comp, lambda);
        for (const auto& [gid, a] : last) {
            std::vector<int> seq = w.letters;
            seq.back() = gid;
            te_add(out, normalize_sequence(gen, seq, c * a, x.trunc));
        }
    }
    return out;
}

TensorElement project_to(const TensorElement& x, int m)
{
    TensorElement out = te_zero(m);
    for (const auto& [w, c] : x.terms)
        if (w.length() <= m)
            out.terms[w] = c;
    return out;
}

bool homogeneous_degree(const GeneratorSystem& gen, const TensorElement& x, int& deg)
{
    bool first = true;
    for (const auto& [w, c] : x.terms) {
        (void)c;
        int d = word_degree(gen, w);
        if (first) {
            deg = d;
            first = false;
        }
        else if (d != deg)
            return false;
    }
    return true;
}

std::string te_str(const GeneratorSystem& gen, const TensorElement& x)
{
    if (x.terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x.terms) {
        Scalar a = c;
        if (sgn(a) < 0) {
            os << (first ? "-" : " - ");
            a = -a;
        }
        else if (!first)
            os << " + ";
        if (a != 1)
            os << scalar_str(a) << " ";
        os << word_str(gen, w);
        first = false;
    }
    return os.str();
}

}  // namespace qp
