#pragma once

#include "qpengine/base_ring.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace qp {

/* Sparse k-linear combination of letters (letter id -> coefficient). */
using LinComb = std::map<int, Scalar>;

/* A graded bimodule generator. Words compose right-to-left: in a word
 * g·h the letter h acts first, so target(h) must equal source(g).
 * Action tables give the expansion of basis-element multiples:
 *   left_action[b]  = e_b . x   (e_b a basis element of the target component)
 *   right_action[b] = x . e_b   (e_b a basis element of the source component)
 * Entry 0 must be the identity action. */
struct Letter {
    std::string name;
    int source = 0;
    int target = 0;
    int degree = 0;
    std::vector<LinComb> left_action;
    std::vector<LinComb> right_action;
};

/* (source, target, degree) — letters of one block form a
 * C_target-C_source-bimodule. */
using BlockKey = std::tuple<int, int, int>;

struct EtaEntry {
    int first = 0;   // g in g (x) h
    int second = 0;  // h
    Scalar coeff;
};

struct EtaReport {
    bool homogeneous_of_degree_2_minus_d = false;
    bool antisymmetric = false;
    bool nondegenerate = false;
    bool all() const { return homogeneous_of_degree_2_minus_d && antisymmetric && nondegenerate; }
};

class GeneratorSystem {
public:
    GeneratorSystem() = default;
    GeneratorSystem(BaseRing base, std::vector<Letter> letters);

    const BaseRing& base() const { return base_; }
    const std::vector<Letter>& letters() const { return letters_; }
    const Letter& letter(int id) const { return letters_[id]; }
    int size() const { return (int)letters_.size(); }
    int letter_index(const std::string& name) const;

    /* Appends a letter and refreshes the derived caches. */
    int add_letter(Letter l);

    BlockKey block_of(int id) const;
    const std::vector<int>& block_letters(const BlockKey& k) const;

    /* e_b . x and x . e_b as letter combinations. */
    LinComb apply_left(int comp, const CompElt& lambda, int id) const;
    LinComb apply_right(int id, int comp, const CompElt& lambda) const;
    LinComb apply_left(int comp, const CompElt& lambda, const LinComb& v) const;
    LinComb apply_right(const LinComb& v, int comp, const CompElt& lambda) const;

    /* Canonical-word machinery: a word position other than the first must
     * hold a left-representative letter. */
    bool is_left_rep(int id) const { return left_rep_[id]; }
    /* x = sum_j lambda_j . rep_j with lambda_j in the target component. */
    const std::vector<std::pair<CompElt, int>>& left_decomposition(int id) const
    {
        return left_decomp_[id];
    }

    /* Two-sided decomposition y = sum_a lambda_a . x . mu_a over the
     * generator x of y's block; empty optional if y is not in the span. */
    std::optional<std::vector<std::pair<CompElt, CompElt>>> decompose_over(int x, int y) const;

    /* x generates its block freely as a C_t (x) C_s module. */
    bool freely_generates_block(int x) const;

    /* The C_t (x) C_s orbit of x is free of rank one (unique two-sided
     * decompositions over x exist for its orbit letters). */
    bool orbit_free(int x) const;

    void validate() const;

private:
    void rebuild_caches();

    BaseRing base_;
    std::vector<Letter> letters_;
    std::map<BlockKey, std::vector<int>> blocks_;
    std::vector<bool> left_rep_;
    std::vector<std::vector<std::pair<CompElt, int>>> left_decomp_;
};

/* Degree, antisymmetry and blockwise non-degeneracy of eta at dimension d.
 * Reported, never thrown, on well-formed entries. */
EtaReport check_eta(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta, int d);

/* Entries must compose both ways round: target(h) = source(g) and
 * source(h) = target(g). Throws IncompatibleComponents / DegreeError. */
void validate_eta(const GeneratorSystem& gen, const std::vector<EtaEntry>& eta);

/* k-basis of L (x)_l R for two letter families: canonical pairs (g, r)
 * with r a left-representative. */
std::vector<std::pair<int, int>> tensor_over_base(const GeneratorSystem& gen,
                                                  const std::vector<int>& left,
                                                  const std::vector<int>& right);
/* Normal form of a single pure pair in that basis. */
std::map<std::pair<int, int>, Scalar> tensor_rewrite(const GeneratorSystem& gen, int g, int h);

/* Adjoins the shifted dual letters R = Sigma^{d-3} DF (named "<f>^") to a
 * copy of the frozen system and returns it together with eta_F. */
struct EtaFResult {
    GeneratorSystem system;        // letters of F followed by the R duals
    std::vector<EtaEntry> eta_F;
    std::map<int, int> dual_of;    // F letter id -> R letter id
};
EtaFResult make_eta_F(const GeneratorSystem& frozen, int d);

}  // namespace qp
