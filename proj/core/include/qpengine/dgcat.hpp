#pragma once

#include "qpengine/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qp {

/* Finite dg-category presentation: objects with B-flags, graded hom bases,
 * composition and differential tables, optional dg endofunctor nu. */
struct DGCat {
    struct Obj {
        std::string name;
        bool in_b = false;
    };
    struct Mor {
        std::string name;
        int src = 0, dst = 0, degree = 0;
    };

    std::vector<Obj> objects;
    std::vector<Mor> mors;
    std::vector<int> identity_of;
    std::map<std::pair<int, int>, std::map<int, Scalar>> comp;  // (f,g) -> f o g
    std::vector<std::map<int, Scalar>> diff;
    std::vector<int> nu_obj;                     // empty = identity functor
    std::vector<std::map<int, Scalar>> nu_mor;   // parallel to mors when present

    std::map<int, Scalar> compose(int f, int g) const;
    std::map<int, Scalar> compose(const std::map<int, Scalar>& f,
                                  const std::map<int, Scalar>& g) const;
    std::map<int, Scalar> d(const std::map<int, Scalar>& f) const;
    std::map<int, Scalar> nu(const std::map<int, Scalar>& f) const;
    int nu_of_obj(int x) const { return nu_obj.empty() ? x : nu_obj[x]; }
    int mor_index(const std::string& name) const;
    void validate() const;
};

/* Morphism word in the Drinfeld quotient: fs[0] h_{hobjs[0]} fs[1] ... with
 * the contracting homotopies h_N (degree -1, d(h_N) = 1_N) between basis
 * morphisms of the base category. */
struct QWord {
    std::vector<int> fs;     // size = hobjs.size() + 1
    std::vector<int> hobjs;  // objects in B

    int hcount() const { return (int)hobjs.size(); }
    auto operator<=>(const QWord&) const = default;
};

using QElement = std::map<QWord, Scalar>;

int qword_degree(const DGCat& cat, const QWord& w);
int qword_src(const DGCat& cat, const QWord& w);
int qword_dst(const DGCat& cat, const QWord& w);
bool qword_valid(const DGCat& cat, const QWord& w);

QElement q_of_mor(int f);
QElement q_compose(const DGCat& cat, const QElement& u, const QElement& v, int hcap);
/* derivation with d(h_N) = 1_N */
QElement q_diff(const DGCat& cat, const QElement& u, int hcap);
QElement q_nu(const DGCat& cat, const QElement& u);

/* All quotient words X -> Y of the given degree with h-count <= hcap. */
std::vector<QWord> qword_basis(const DGCat& cat, int src, int dst, int degree, int hcap);

/* Bar words f_n (x) ... (x) f_{-1} over the base category, stored leftmost
 * first; the differential follows the displayed bar formula. Interior
 * objects must lie in B for htilde (NotThroughB). */
using BarWord = std::vector<int>;
using BarElement = std::map<BarWord, Scalar>;

BarElement bar_diff_cat(const DGCat& cat, const BarWord& w);

/* Mixed bar words over the quotient: slots are quotient words. */
using QBarWord = std::vector<QWord>;
using QBarElement = std::map<QBarWord, Scalar>;

QBarElement qbar_diff(const DGCat& cat, const QBarWord& w, int hcap);
QBarElement qbar_of_bar(const BarWord& w);  // slots become h-free words

/* h-tilde of Prop. 4.2 on a bar word through B. */
QBarElement htilde(const DGCat& cat, const BarWord& w, int hcap);

/* Hochschild chains over a category with coefficients M(X, Y) = A(nu X, Y):
 * tuple (m; a_1 ... a_p), paper ordering f_n (x) f_{n-1} (x) ... (x) f_0. */
struct CatChain {
    QWord m;
    std::vector<QWord> slots;
    auto operator<=>(const CatChain&) const = default;
};
using CatChainElement = std::map<CatChain, Scalar>;

CatChain catchain_of_mors(int m, const std::vector<int>& slots);
CatChainElement catchain_diff(const DGCat& cat, const CatChain& c, int hcap);
int catchain_degree(const DGCat& cat, const CatChain& c);

/* The homotopy h of Prop. 4.3 on a chain supported on B-objects. */
CatChainElement hoch_homotopy(const DGCat& cat, const CatChain& c, int hcap);

/* ------------------------------------------------------------------ */

/* Homotopy short exact sequence of complexes B -> A -> C with the degree -1
 * map h: B -> C satisfying d(h) = p i. Maps are per-degree matrices in row
 * convention (source basis indexes rows). */
struct HomotopySES {
    ComplexWindow b, a, c;
    std::map<int, SliceMatrix> i;  // B^n -> A^n
    std::map<int, SliceMatrix> p;  // A^n -> C^n
    std::map<int, SliceMatrix> h;  // B^n -> C^{n-1}
};

struct HSESReport {
    bool dh_equals_pi = true;
    std::map<int, bool> total_acyclic;
};
HSESReport verify_hses(const HomotopySES& s, int lo, int hi);

/* Homotopy snake lemma: for a cycle c in C^q returns a representative of
 * delta(c-bar) = -b-bar in B^{q+1}. Throws NoSolution if exactness fails. */
std::vector<Scalar> snake_delta(const HomotopySES& s, int q, const std::vector<Scalar>& c,
                                bool reverse_pivot = false);

/* v and w represent the same class in H^n of the window. */
bool same_class(const ComplexWindow& w, int n, const std::vector<Scalar>& v,
                const std::vector<Scalar>& u);

/* ------------------------------------------------------------------ */

/* Graded map of complexes: per-degree matrices X^n -> Y^{n+degree}. */
struct ComplexMap {
    int degree = 0;
    std::map<int, SliceMatrix> mats;
};

/* Kontsevich's criterion for a contracting homotopy of cone(f). */
bool check_cone_contraction(const ComplexWindow& x, const ComplexWindow& y,
                            const ComplexMap& f, const ComplexMap& h11, const ComplexMap& h12,
                            const ComplexMap& h21, const ComplexMap& h22, int lo, int hi);

/* Amiot's trace: tr_N(iota o nu(Sf) o nu(Spi)) for explicit fraction data.
 * iota, sf, spi are morphism elements of the category; sf stands for
 * Sigma f o Sigma pi decomposed as given. Throws InvalidTriangleData. */
Scalar amiot_trace(const DGCat& cat, const std::map<int, Scalar>& tr_n,
                   const std::map<int, Scalar>& iota, const std::map<int, Scalar>& nu_sf,
                   const std::map<int, Scalar>& nu_spi);

/* Theorem-A square on explicit instance data: compares the class of
 * iota o nu(alpha) in HH_0(B, M_B) with the snake image of
 * alpha o h_N o iota in HH_1(C, M^C). alpha plays Sigma f o Sigma pi. */
struct SquareCheckResult {
    bool passes = false;
    bool witness_identity = false;  // h(b) + p(a) - c is the stated boundary
};
SquareCheckResult connecting_square_check(const DGCat& cat, int obj_x, int obj_n,
                                          const std::map<int, Scalar>& alpha,
                                          const std::map<int, Scalar>& iota, int hcap,
                                          int p_max);

}  // namespace qp
