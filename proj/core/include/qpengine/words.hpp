#pragma once

#include "qpengine/generators.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace qp {

/* A basis word of the completed tensor algebra T_l V, read right-to-left:
 * the rightmost letter acts first. Length-0 words carry a basis element of
 * one base component. */
struct Word {
    int unit_component = -1;
    int unit_basis = 0;
    std::vector<int> letters;

    bool is_unit() const { return letters.empty(); }
    int length() const { return (int)letters.size(); }

    static Word unit(int comp, int basis = 0)
    {
        Word w;
        w.unit_component = comp;
        w.unit_basis = basis;
        return w;
    }
    static Word of(std::vector<int> ls)
    {
        Word w;
        w.letters = std::move(ls);
        return w;
    }

    auto operator<=>(const Word&) const = default;
};

int word_degree(const GeneratorSystem& gen, const Word& w);
int word_source(const GeneratorSystem& gen, const Word& w);
int word_target(const GeneratorSystem& gen, const Word& w);
bool word_composable(const GeneratorSystem& gen, const Word& w);
std::string word_str(const GeneratorSystem& gen, const Word& w);

/* Finite k-linear combination of canonical words, truncated at tensor
 * length N. No zero coefficients are stored. */
struct TensorElement {
    std::map<Word, Scalar> terms;
    int trunc = 0;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TensorElement&) const = default;
};

TensorElement te_zero(int trunc);
/* Unit of the algebra: sum of all component units. */
TensorElement te_one(const GeneratorSystem& gen, int trunc);
TensorElement te_word(const GeneratorSystem& gen, const Word& w, const Scalar& c, int trunc);

void te_add(TensorElement& into, const TensorElement& v, const Scalar& c = Scalar(1));
TensorElement te_scale(const TensorElement& v, const Scalar& c);

/* Normal form of a raw letter sequence: positions after the first are
 * rewritten to left-representatives, base factors absorbed leftward. */
TensorElement normalize_sequence(const GeneratorSystem& gen, const std::vector<int>& seq,
                                 const Scalar& coeff, int trunc);

/* Free product with truncation. Throws MismatchedSession on different
 * truncation levels. */
TensorElement multiply(const GeneratorSystem& gen, const TensorElement& u,
                       const TensorElement& v);

/* lambda . x and x . lambda for a base element of the given component.
 * Words whose outer component does not match are annihilated. */
TensorElement left_mult_base(const GeneratorSystem& gen, int comp, const CompElt& lambda,
                             const TensorElement& x);
TensorElement right_mult_base(const GeneratorSystem& gen, const TensorElement& x, int comp,
                              const CompElt& lambda);

/* Projection to tensor length <= m (truncation coherence primitive). */
TensorElement project_to(const TensorElement& x, int m);

/* True if every term has the same degree, which is returned in deg. */
bool homogeneous_degree(const GeneratorSystem& gen, const TensorElement& x, int& deg);

std::string te_str(const GeneratorSystem& gen, const TensorElement& x);

}  // namespace qp
