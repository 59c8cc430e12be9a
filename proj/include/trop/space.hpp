#pragma once

#include "trop/exact.hpp"

#include <map>
#include <string>
#include <vector>

namespace trop {

// point of T^r: finite coordinates plus -inf flags
struct XPoint {
    ExtVec x;
    std::vector<char> inf;

    XPoint() = default;
    explicit XPoint(int r) : x(r), inf(r, 0) {}
    static XPoint finite(const ExtVec& v);
    int size() const { return int(x.size()); }
    std::vector<int> sed() const;
    bool operator==(const XPoint& o) const { return x == o.x && inf == o.inf; }
    bool operator<(const XPoint& o) const;
    std::string str() const;
};

// x -> A x + b on T^r
XPoint apply_affine(const IntMatrix& A, const ExtVec& b, const XPoint& p);

struct Cell {
    std::string label;
    int dim = 0;
    int r = 0;
    std::vector<int> sed;        // sorted
    std::vector<XPoint> verts;
    std::vector<IntVec> rays;    // recession directions in R^r besides the -e_j of sedentary vertices
    int weight = 0;              // top cells only
    IntVec lambda;               // orientation generator of wedge^dim L_Z, lexicographic coordinates
    bool compact() const { return rays.empty(); }
};

// child -> parent chart map x -> A x + b, codimension one, with incidence sign
struct FaceRel {
    int child = -1, parent = -1;
    IntMatrix A;
    ExtVec b;
    int eps = 0;
};

struct Embedding {
    int cell = -1;  // target
    IntMatrix A, Ainv;
    ExtVec b;
    XPoint image;   // image of the source interior point
};

struct MultiTangent {
    LatticeBasis L;  // in wedge^p Z^r
    IntMatrix R;     // left inverse, R * B = I
    int rank() const { return L.rank(); }
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

struct BalancingReport {
    struct Entry {
        int cell;
        IntVec sum;  // weighted sum of primitive generators, child chart
        bool balanced;
    };
    std::vector<Entry> entries;
    bool balanced = true;
};

class TropicalSpace {
public:
    int formal_dim = 0;
    std::vector<Cell> cells;
    std::vector<FaceRel> faces;

    int add_cell(Cell c);
    void add_face(int child, int parent, IntMatrix A, ExtVec b, int eps);
    // sign from an inward-pointing integer vector in the parent chart
    void add_face_inward(int child, int parent, IntMatrix A, ExtVec b, const IntVec& inward);
    void add_face_identity(int child, int parent, const IntVec& inward);

    // derived data; must be called after construction and before queries
    void finalize();
    bool finalized() const { return finalized_; }

    int dim() const { return dim_; }
    int chart_rank() const { return cells.empty() ? 0 : cells[0].r; }
    bool compact() const;
    int find(const std::string& label) const;

    const std::vector<int>& faces_of(int c) const { return down_[c]; }   // relation ids with parent c
    const std::vector<int>& cofaces_of(int c) const { return up_[c]; }   // relation ids with child c
    const LatticeBasis& tangent(int c) const { return tangent_[c]; }
    const MultiTangent& F(int c, int p) const;
    const XPoint& interior(int c) const { return interior_[c]; }
    const std::vector<Embedding>& embeddings(int c) const { return emb_[c]; }
    // recession generators: -e_j for extra sedentary directions, then rays
    std::vector<IntVec> recession(int c) const;

    // F_p(parent) -> F_p(child) in basis coordinates for a chart map A (child -> parent)
    IntMatrix iota(int child, int parent, const IntMatrix& A, int p) const;
    IntMatrix iota_inv(int child, int parent, const IntMatrix& Ainv, int p) const;
    IntMatrix iota(int face_rel, int p) const;
    const IntMatrix& face_inverse(int face_rel) const { return rel_inv_[face_rel]; }
    // P_sed(child) A^{-1}, tangent vectors of the parent chart to the child chart
    IntMatrix tangent_pullback_inv(int child, const IntMatrix& Ainv) const;

    // integer v in the parent chart with v ^ A.Lambda_child = -eps Lambda_parent
    IntVec primitive_generator(int face_rel) const;

    ValidationReport validate() const;
    BalancingReport check_balancing() const;
    std::vector<int> top_cells() const;

private:
    bool finalized_ = false;
    int dim_ = 0;
    std::vector<std::vector<int>> down_, up_;
    std::vector<LatticeBasis> tangent_;
    std::vector<XPoint> interior_;
    std::vector<std::vector<Embedding>> emb_;
    std::vector<std::vector<MultiTangent>> F_;
    std::vector<IntMatrix> rel_inv_;
    std::vector<std::string> conflicts_;
};

// helpers shared by the other modules
IntMatrix sed_projection(int r, const std::vector<int>& sed);
// c with w = c * g; throws if not proportional
Rat proportion(const IntVec& w, const IntVec& g);
LatticeBasis rational_span_lattice(const std::vector<ExtVec>& vecs, int r);
MultiTangent make_multitangent(LatticeBasis L);

}  // namespace trop
