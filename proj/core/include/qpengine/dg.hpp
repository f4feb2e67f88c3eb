#pragma once

#include "qpengine/potential.hpp"

namespace qp {

/* A presented dg algebra T_l(V (+) z l) with its differential table.
 * The generator system holds the V letters followed by the z letters. */
struct DGPresentation {
    GeneratorSystem gen;
    Casimir sigma;
    std::vector<int> z_letters;            // ids of the z.e_b letters
    std::map<int, TensorElement> diff;     // every letter has an entry
    int trunc = 0;
    int dimension = 0;

    bool is_z_letter(int id) const
    {
        for (int z : z_letters)
            if (z == id)
                return true;
        return false;
    }
};

/* d extended to words and elements by the graded Leibniz rule. */
TensorElement apply_diff(const DGPresentation& p, const TensorElement& x);
TensorElement apply_diff_word(const DGPresentation& p, const Word& w, const Scalar& c);

/* Differential on the V letters: the Hamiltonian derivation {w, -}_{omega_eta}
 * in the designated symplectic generator pairs, extended l-bilinearly.
 * Throws EtaNotSymplecticBasis when a block has no free generator pair. */
std::map<int, TensorElement> ham_differential(const GeneratorSystem& gen,
                                              const std::vector<EtaEntry>& eta,
                                              const Casimir& sigma, const Potential& w,
                                              int trunc);

/* d(z) = sigma' eta sigma'' restricted to the given components:
 * one entry per z letter (component, basis element). */
struct ZDifferential {
    TensorElement dz;                                  // the full d(z)
    std::map<std::pair<int, int>, TensorElement> per_letter;  // (comp, basis) -> value
};
ZDifferential z_differential(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta,
                             const Casimir& sigma, const std::vector<int>& components,
                             int trunc);

/* Construction of Pi_d(l, V_c, eta, w). Verifies assumptions a) and b)
 * (degree windows, check_eta) and the degree/cubic part of c); {w,w} = 0 is
 * checked operationally through check_d_squared. */
DGPresentation build_preprojective(const GeneratorSystem& v_letters,
                                   const std::vector<EtaEntry>& eta, const Potential& w,
                                   int d, int trunc);

struct DSquaredReport {
    bool ok = true;
    int witness_letter = -1;
    TensorElement remainder;
};
DSquaredReport check_d_squared(const DGPresentation& p);

/* The Ginzburg-Lazaroiu morphism gamma between the relative source
 * T_{l_F}(F (+) R (+) z_F l_F) and target T_l(F (+) N (+) z lbar). */
struct GLMorphism {
    DGPresentation source;              // over the frozen base ring
    DGPresentation target;              // over the full base ring
    std::map<int, TensorElement> gamma; // source letter id -> target element
    std::map<int, int> source_to_target_letter;  // for the F letters
};

/* v_letters: system over the full base with F letters (on frozen
 * components) and N letters; eta pairs the N letters; w in Tr T_l(F (+) N);
 * w_F given as words in the F letters and their duals "<f>^".
 * Verifies gamma d = d gamma up to the truncation (NotChainMap). */
GLMorphism build_gl_morphism(const GeneratorSystem& v_letters,
                             const std::vector<std::string>& frozen_letter_names,
                             const std::vector<EtaEntry>& eta, const Potential& w,
                             const std::vector<std::pair<std::vector<std::string>, Scalar>>& w_F,
                             int d, int trunc);

/* gamma applied multiplicatively to an element of the source. */
TensorElement apply_gl(const GLMorphism& m, const TensorElement& x);

}  // namespace qp
