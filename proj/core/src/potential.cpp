#include "qpengine/potential.hpp"

#include <sstream>

namespace qp {

namespace {

int parity(long long n) { return (int)(((n % 2) + 2) % 2); }

bool word_closed(const GeneratorSystem& gen, const Word& w)
{
    return !w.is_unit() && word_composable(gen, w) &&
           word_source(gen, w) == word_target(gen, w);
}

}  // namespace

std::pair<Word, Scalar> rotate_word(const GeneratorSystem& gen, const Word& w, int j)
{
    if (!word_closed(gen, w))
        throw EngineError("NotClosed", word_str(gen, w));
    int n = w.length();
    j = ((j % n) + n) % n;
    if (j == 0)
        return {w, Scalar(1)};
    long long pref = 0, suff = 0;
    for (int i = 0; i < j; ++i)
        pref += gen.letter(w.letters[i]).degree;
    for (int i = j; i < n; ++i)
        suff += gen.letter(w.letters[i]).degree;
    std::vector<int> rot(w.letters.begin() + j, w.letters.end());
    rot.insert(rot.end(), w.letters.begin(), w.letters.begin() + j);
    Scalar sign = parity(pref * suff) ? Scalar(-1) : Scalar(1);
    return {Word::of(std::move(rot)), sign};
}

std::pair<Word, Scalar> cyclic_normal_form(const GeneratorSystem& gen, const Word& w)
{
    auto best = rotate_word(gen, w, 0);
    for (int j = 1; j < w.length(); ++j) {
        auto cand = rotate_word(gen, w, j);
        if (cand.first < best.first)
            best = cand;
    }
    return best;
}

void pot_add(const GeneratorSystem& gen, Potential& into, const Word& w, const Scalar& c)
{
    if (is_zero(c))
        return;
    auto [rep, sign] = cyclic_normal_form(gen, w);
    Scalar s = into.terms[rep] + c * sign;
    if (is_zero(s))
        into.terms.erase(rep);
    else
        into.terms[rep] = s;
}

Potential make_potential(const GeneratorSystem& gen,
                         const std::vector<std::pair<std::vector<int>, Scalar>>& words)
{
    Potential p;
    for (const auto& [seq, c] : words)
        pot_add(gen, p, Word::of(seq), c);
    return p;
}

void validate_potential(const GeneratorSystem& gen, const Potential& w, int deg)
{
    for (const auto& [word, c] : w.terms) {
        (void)c;
        if (!word_closed(gen, word))
            throw EngineError("NotClosed", word_str(gen, word));
        if (word.length() < 3)
            throw EngineError("AssumptionViolation",
                              "potential term of length < 3: " + word_str(gen, word));
        if (word_degree(gen, word) != deg)
            throw EngineError("AssumptionViolation",
                              "potential term of degree != " + std::to_string(deg) + ": " +
                                  word_str(gen, word));
    }
}

TensorElement cyclic_derivative(const GeneratorSystem& gen, const Potential& w, int letter,
                                int trunc)
{
    TensorElement out = te_zero(trunc);
    for (const auto& [word, c] : w.terms) {
        for (int j = 0; j < word.length(); ++j) {
            if (word.letters[j] != letter)
                continue;
            auto [rot, sign] = rotate_word(gen, word, j);
            std::vector<int> rest(rot.letters.begin() + 1, rot.letters.end());
            if (rest.empty())
                throw EngineError("NotClosed", "length-1 potential word");
            te_add(out, normalize_sequence(gen, rest, c * sign, trunc));
        }
    }
    return out;
}

TensorElement sigma_derivative(const GeneratorSystem& gen, const Casimir& sigma,
                               const Potential& w, int letter, int trunc)
{
    const BlockKey blk = gen.block_of(letter);
    TensorElement out = te_zero(trunc);
    for (const auto& [word, c] : w.terms) {
        for (int j = 0; j < word.length(); ++j) {
            int y = word.letters[j];
            if (gen.block_of(y) != blk)
                continue;
            // letters of the block outside this generator's orbit belong to
            // another symplectic pair
            auto dec = gen.decompose_over(letter, y);
            if (!dec)
                continue;
            auto [rot, sign] = rotate_word(gen, word, j);
            std::vector<int> rest(rot.letters.begin() + 1, rot.letters.end());
            if (rest.empty())
                throw EngineError("NotClosed", "length-1 potential word");

            // rest with theta inserted at the interior junctures
            TensorElement dressed = te_word(gen, Word::of({rest[0]}), Scalar(1), trunc);
            for (size_t i = 1; i < rest.size(); ++i) {
                int comp = gen.letter(rest[i - 1]).source;
                dressed = right_mult_base(gen, dressed, comp,
                                          sigma.theta(gen.base().components[comp], comp));
                dressed = multiply(gen, dressed,
                                   te_word(gen, Word::of({rest[i]}), Scalar(1), trunc));
            }

            const Letter& lx = gen.letter(letter);
            for (const auto& [lam, mu] : *dec) {
                TensorElement v = left_mult_base(gen, lx.source, mu, dressed);
                v = right_mult_base(gen, v, lx.target, lam);
                te_add(out, v, c * sign);
            }
        }
    }
    return out;
}

std::string potential_str(const GeneratorSystem& gen, const Potential& w)
{
    if (w.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [word, c] : w.terms) {
        Scalar a = c;
        if (sgn(a) < 0) {
            os << (first ? "-" : " - ");
            a = -a;
        }
        else if (!first)
            os << " + ";
        if (a != 1)
            os << scalar_str(a) << " ";
        os << word_str(gen, word);
        first = false;
    }
    return os.str();
}

}  // namespace qp
