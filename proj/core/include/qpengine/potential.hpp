#pragma once

#include "qpengine/words.hpp"

namespace qp {

/* Rotation bringing position j to the front, with the Koszul sign
 * (-1)^{|prefix||suffix|}. Throws NotClosed on open words. */
std::pair<Word, Scalar> rotate_word(const GeneratorSystem& gen, const Word& w, int j);

/* Order-minimal rotation of a closed word with its accumulated sign. */
std::pair<Word, Scalar> cyclic_normal_form(const GeneratorSystem& gen, const Word& w);

/* Element of Tr(T_l V): closed cyclic words modulo rotation-with-sign,
 * stored on order-minimal representatives. */
struct Potential {
    std::map<Word, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
};

void pot_add(const GeneratorSystem& gen, Potential& into, const Word& w, const Scalar& c);
Potential make_potential(const GeneratorSystem& gen,
                         const std::vector<std::pair<std::vector<int>, Scalar>>& words);

/* Every term closed, degree deg, length >= 3. */
void validate_potential(const GeneratorSystem& gen, const Potential& w, int deg);

/* Plain cyclic derivative: rotate each occurrence of the letter to the
 * front, delete it, sum with Koszul signs. */
TensorElement cyclic_derivative(const GeneratorSystem& gen, const Potential& w, int letter,
                                int trunc);

/* Species-corrected derivative used by the Hamiltonian rule: occurrences of
 * any letter lam.x.mu in x's block contribute mu . rest . lam, and the
 * evaluated Casimir theta_C is inserted at each interior juncture of rest. */
TensorElement sigma_derivative(const GeneratorSystem& gen, const Casimir& sigma,
                               const Potential& w, int letter, int trunc);

std::string potential_str(const GeneratorSystem& gen, const Potential& w);

}  // namespace qp
