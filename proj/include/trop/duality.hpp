#pragma once

#include "trop/homology.hpp"

#include <string>
#include <vector>

namespace trop {

// max_t (<m_t, x> + c_t)
struct TropPoly {
    std::vector<IntVec> slopes;
    std::vector<ExtRat> consts;
    void add(IntVec m, ExtRat c) {
        slopes.push_back(std::move(m));
        consts.push_back(std::move(c));
    }
    bool empty() const { return slopes.empty(); }
    std::size_t size() const { return slopes.size(); }
};

// tropical rational function plus - minus (an empty part is the constant 0)
struct PLFunction {
    int r = 0;
    TropPoly plus, minus;

    static PLFunction affine(const IntVec& m, const ExtRat& c);
    static PLFunction poly(TropPoly P);
    PLFunction operator+(const PLFunction& o) const;  // pointwise sum
    PLFunction operator-() const;
    Rat eval(const RatVec& x) const;
};

struct AffinePiece {
    IntVec slope;  // covector in the cell chart
    ExtRat constant;
};

// affine piece of f (given in the chart of `from`) on the cell `on`, through x -> A x + b;
// throws unless f is affine on the whole cell
AffinePiece affine_piece(const TropicalSpace& X, const PLFunction& f, const IntMatrix& Ainv, const ExtVec& b, int on);

// one local function per cell of X, in the chart of that cell, valid on all cells containing it
struct CartierDivisor {
    std::vector<PLFunction> local;
    static CartierDivisor uniform(const TropicalSpace& X, const PLFunction& f);
};

struct TropicalCycle {
    Model model = Model::Cellular;
    int k = 0;
    std::vector<std::pair<int, Int>> weights;  // (cell or simplex, weight), nonzero
};

// fundamental chains: cellular Borel-Moore, simplicial standard (compact spaces)
IntVec fundamental_chain(const TropicalSpace& X);
IntVec fundamental_chain(const StratifiedSimplicialStructure& S);
// ch(Z) in the (k,k) chain group of the matching model
IntVec cycle_chain(const TropicalSpace& X, const TropicalCycle& Z);
IntVec cycle_chain(const StratifiedSimplicialStructure& S, const TropicalCycle& Z);
bool is_closed(const TropicalSpace& X, const TropicalCycle& Z);

// cellular C_{p,q} -> simplicial C_{p,q}
SparseInt subdivision_map(const StratifiedSimplicialStructure& S, int p, int q);

// cyc(Z) in H^BM_{k,k}; throws on unbalanced cycles
ClassCoords cycle_class(const TropicalSpace& X, const TropicalCycle& Z);
ClassCoords cycle_class(const StratifiedSimplicialStructure& S, const TropicalCycle& Z);

// weights of div(s) on codimension one cells of sedentarity zero
TropicalCycle divisor(const TropicalSpace& X, const CartierDivisor& D);
TropicalCycle divisor(const TropicalSpace& X, const PLFunction& f);

// alpha in C^{p,q} (simplicial cochains) -> alpha cap ch(X) in C_{n-p,n-q}
IntVec cap_fundamental(const StratifiedSimplicialStructure& S, int p, int q, const IntVec& alpha);
// cones: alpha in F^p of the apex -> BM (n-p, n) chain, cellular
IntVec cap_fundamental_apex(const TropicalSpace& X, int p, const IntVec& alpha);

// (1,1) cochain [i,j] -> d(s_i - s_j)
IntVec chern_cochain(const StratifiedSimplicialStructure& S, const CartierDivisor& D);

struct PDResult {
    int p = 0, q = 0;
    std::string source, target;  // group strings
    IntMatrix matrix;            // columns: images of torsion then free generators; rows: torsion then free coords
    bool iso = false;
    std::string reason;
};
PDResult pd_check(const StratifiedSimplicialStructure& S, int p, int q);
// fans with a single compact cell
PDResult pd_check_fan(const TropicalSpace& X, int p, int q);

struct LefschetzResult {
    bool ok = false;
    bool cocycle = false;
    ClassCoords divisor_class, chern_class;
    TropicalCycle div;
};
LefschetzResult lefschetz_diagram_check(const StratifiedSimplicialStructure& S, const CartierDivisor& D);

// boundary of a lattice polygon or polytope given by vertices (rational, full dimensional)
struct Polytope {
    std::vector<RatVec> verts;
    std::vector<std::pair<IntVec, Rat>> facets;  // primitive inward normal u, offset: <u,x> >= offset
    static Polytope from_vertices(const std::vector<RatVec>& verts);
    bool contains(const RatVec& x) const;
};
// rational function on P extending the facet data; s must be continuous on the boundary
PLFunction extend_pl(const Polytope& P, const std::vector<PLFunction>& facet_functions);

}  // namespace trop
