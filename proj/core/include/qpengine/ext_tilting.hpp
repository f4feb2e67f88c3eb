#pragma once

#include "qpengine/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace qp {

/* Finite-dimensional algebra by quiver with relations over the ground
 * field. A basis of paths is found below the length cap, or the
 * presentation is rejected (LengthCapExceeded). */
class FinDimAlgebraPresentation {
public:
    struct Arrow {
        std::string name;
        int src = 0, dst = 0;
    };

    using Path = std::vector<int>;  // arrow ids, rightmost acts first

    FinDimAlgebraPresentation(int vertices, std::vector<Arrow> arrows,
                              std::vector<std::map<Path, Scalar>> relations,
                              int length_cap = 12);

    int vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    /* basis paths as (source vertex, arrows); the empty paths come first */
    const std::vector<std::pair<int, Path>>& basis() const { return basis_; }

    int path_source(const std::pair<int, Path>& p) const;
    int path_target(const std::pair<int, Path>& p) const;

    /* normal form of an arbitrary path over the basis paths */
    std::map<Path, Scalar> reduce(int src_vertex, const Path& p) const;

private:
    int vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::pair<int, Path>> basis_;
    int basis_max_len_ = 0;
    // per length: all paths, and the rref'd ideal rows over them
    std::vector<std::vector<std::pair<int, Path>>> paths_by_len_;
    std::vector<std::map<std::pair<int, Path>, int>> index_by_len_;
    std::vector<std::vector<std::vector<Scalar>>> ideal_rows_;
};

/* Module = representation: vertex spaces and arrow matrices. */
struct ModuleRep {
    std::string name;
    std::vector<int> vdim;
    // arrow a: matrices[a] is vdim[dst] x vdim[src] acting on columns
    std::vector<std::vector<std::vector<Scalar>>> matrices;

    int total_dim() const;
};

/* Checks the relations vanish on the representation. */
void validate_module(const FinDimAlgebraPresentation& a,
                     const std::vector<std::map<std::vector<int>, Scalar>>& relations,
                     const ModuleRep& m);

ModuleRep projective_module(const FinDimAlgebraPresentation& a, int vertex);
ModuleRep simple_module(const FinDimAlgebraPresentation& a, int vertex);
ModuleRep direct_sum(const FinDimAlgebraPresentation& a, const ModuleRep& x,
                     const ModuleRep& y);

/* Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0, with the
 * differentials as per-vertex matrices. Stops early when a syzygy is 0. */
struct Resolution {
    std::vector<ModuleRep> p;                      // P_0 .. P_len
    std::vector<std::vector<int>> multiplicities;  // of the P_v per step
    // d[i]: P_{i+1} -> P_i, per-vertex matrices (rows: P_i coords)
    std::vector<std::vector<std::vector<std::vector<Scalar>>>> d;
    int length() const { return (int)p.size() - 1; }
};

Resolution proj_resolution(const FinDimAlgebraPresentation& a, const ModuleRep& m, int length);

int hom_dim(const FinDimAlgebraPresentation& a, const ModuleRep& x, const ModuleRep& y);
int ext_dim(const FinDimAlgebraPresentation& a, const ModuleRep& x, const ModuleRep& y, int i);

struct RigidityReport {
    bool rigid = true;
    std::string witness;  // "(X, Y, i)" on failure
};
RigidityReport is_d_rigid(const FinDimAlgebraPresentation& a,
                          const std::vector<ModuleRep>& modules, int d);

struct ClusterTiltingReport {
    bool tilting = true;
    std::string failing_module;
};
/* T and the universe are given by (shared) names; membership in add T is
 * by name per Krull-Schmidt. */
ClusterTiltingReport is_d_cluster_tilting(const FinDimAlgebraPresentation& a,
                                          const std::vector<ModuleRep>& T, int d,
                                          const std::vector<ModuleRep>& universe);

}  // namespace qp
