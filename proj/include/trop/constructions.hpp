#pragma once

#include "trop/duality.hpp"
#include "trop/chains.hpp"
#include "trop/space.hpp"

#include <string>
#include <vector>

namespace trop {

ExtVec ext_vec(const std::vector<Rat>& v);
XPoint point(const std::vector<Rat>& v);

// ---------------------------------------------------------------- fans

// simplicial fan in R^r; every face of a listed cone is added; weights default to 1
TropicalSpace simplicial_fan(int r, const std::vector<IntVec>& rays, const std::vector<std::vector<int>>& maximal,
                             const std::vector<int>& weights = {});
TropicalSpace euclidean_space(int n);
// the tropical line in R^2 with the given weights on the rays -e1, -e2, e1+e2
TropicalSpace tropical_line(int w1 = 1, int w2 = 1, int w3 = 1);

struct Matroid {
    int n = 0;
    std::vector<std::vector<int>> bases;

    int rank() const { return bases.empty() ? 0 : int(bases[0].size()); }
    int rank_of(std::uint32_t set) const;
    std::uint32_t closure(std::uint32_t set) const;
    bool valid() const;  // basis exchange
    bool loopless() const;
    std::vector<std::uint32_t> proper_flats() const;  // nonempty, proper, sorted by rank then value
};

Matroid uniform_matroid(int r, int n);
// graphic matroid; bases are spanning forests
Matroid graphic_matroid(int vertices, const std::vector<std::pair<int, int>>& edges);

// fine fan structure in R^n / R(1,..,1), last coordinate eliminated
TropicalSpace bergman_fan(const Matroid& M);

// ---------------------------------------------------------------- compact quotients

// R^n / (l_1 Z e_1 + ... + l_n Z e_n), cube structure
TropicalSpace torus(const std::vector<ExtRat>& lengths);
// R^2 / <(a,0),(b,c)>; b = 0 gives the square structure, otherwise a hexagon with 0 < b < a assumed
TropicalSpace torus2(const ExtRat& a, const ExtRat& b, const ExtRat& c);

struct KleinParams {
    int type = 1;  // 1 or 2
    int n = 0;     // twist
    ExtRat l1 = ExtRat(1), l2 = ExtRat(1);
};
IntMatrix klein_H(int type);
IntMatrix klein_T(int type, int n);
IntVec klein_v2(int type);
// cells: "V", "a", "b", "P"
TropicalSpace klein_bottle(const KleinParams& P);
// weight 1 on the edge b, weight -1 on the parallel segment through the midpoint of a
TropicalCycle klein_parallel_cycle(const StratifiedSimplicialStructure& S, const KleinParams& P);

// ---------------------------------------------------------------- hypersurfaces

// lattice points of the size-d simplex in homogeneous coordinates (n + 1 entries summing to d)
std::vector<IntVec> simplex_points(int n, int d);

struct RegularTriangulation {
    int n = 0, d = 0;
    std::vector<IntVec> points;  // homogeneous
    std::vector<Rat> heights;
    std::vector<std::vector<int>> simplices;  // maximal, sorted point indices

    int index(const IntVec& m) const;
    Int volume(const std::vector<int>& simplex) const;  // normalized lattice volume
    bool primitive() const;
    // the heights induce exactly these simplices (lower hull)
    bool regular() const;
};

// lower hull of the lifted points; throws unless every lower face is a simplex
RegularTriangulation regular_triangulation(int n, int d, const std::vector<Rat>& heights);

struct Hypersurface {
    RegularTriangulation T;
    std::vector<ExtRat> coeffs;
    bool compact = false;
    TropicalSpace X;
    // per cell: eliminated homogeneous coordinate, homogeneous sedentary set, dual simplex of T
    std::vector<int> chart;
    std::vector<std::uint32_t> sed;
    std::vector<std::vector<int>> dual;

    int cell_of(std::uint32_t sed_set, std::vector<int> simplex) const;  // -1 if absent
};

// dual of the triangulation for the polynomial max_m (c_m + <m, x>) in the chart x_0 = 0, or its closure in TP^n;
// coefficients default to -heights and are assumed to keep the combinatorial type
Hypersurface make_hypersurface(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs = {});
TropicalSpace hypersurface(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs = {});
// R^n (or TP^n) subdivided into the regions of the polynomial, dual to all faces of T including points;
// the polynomial is affine on every cell
Hypersurface region_complex(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs = {});
// max_m (c_m + <m, x>) in the chart x_0 = 0
PLFunction hypersurface_polynomial(const RegularTriangulation& T, const std::vector<ExtRat>& coeffs = {});

// the defining polynomial, dehomogenized in each cell's chart; affine on every cell (rational coefficients)
CartierDivisor section_divisor(const Hypersurface& H);

// cellular chain sum_i v_i (x) cell_i, v_i given in the cell chart (wedge^p coordinates)
IntVec cellular_chain(const TropicalSpace& X, const TropChainComplex& K, const std::vector<std::pair<int, IntVec>>& terms);

// ---------------------------------------------------------------- quartic surfaces

// cone over the staircase triangulations of the four facets of the size 4 tetrahedron
RegularTriangulation cone_triangulation_quartic();

enum class SlotType { Vertex, Edge, FaceInterior };

struct QuarticSlot {
    IntVec a;       // boundary lattice point (homogeneous)
    SlotType type;
    int cell = -1;  // bounded 2-cell dual to [a, (1,1,1,1)]
    IntVec v;       // transverse vector: <a - apex, v> = 1, chart coordinates
};

struct Quartic {
    Hypersurface H;
    std::vector<QuarticSlot> slots;  // all 34 boundary points
    int apex = -1;                   // index of (1,1,1,1)
};

// compactified quartic of the cone triangulation; the list covers the 34 bounded 2-cells
Quartic cone_quartic(std::vector<ExtRat> coeffs = {});
// boundary of the bounded 2-cell of a slot with its transverse coefficient, a cellular (1,1)-cycle
IntVec alpha_cycle(const Quartic& Q, const TropChainComplex& K11, int slot);
// wave weights per slot (0 for face-interior slots):
//   edge point a, direction v:  2 c_a - c_{a+v} - c_{a-v}
//   vertex a, neighbours a_i:   2 c_a + c_{(1,1,1,1)} - sum c_{a_i}
// `printed` selects c_{a+v} - c_{a-v} and sum c_{a_i} - 3 c_{(1,1,1,1)}, which are not translation invariant
std::vector<ExtRat> quartic_wave_weights(const Quartic& Q, const std::vector<ExtRat>& coeffs, bool printed = false);
// rational matrix of the weight formulas, one row per non-face slot, one column per lattice point
std::vector<RatVec> quartic_weight_matrix(const Quartic& Q, bool printed = false);

struct PicardDesign {
    int rho = 0;
    std::vector<ExtRat> coeffs;
    int formal_count = 0;
};
// coefficients of the cone quartic whose weights span a Q-space of dimension 20 - rho
PicardDesign picard_designer(int rho);

// floor decomposed quartic: heights g(m1, m2) + K m3^2; `formal_floor` adds a formal part to K
Hypersurface floor_quartic(bool formal_floor);

// ---------------------------------------------------------------- modifications and products

struct Modification {
    TropicalSpace V;     // open modification in R^{r+1}
    TropicalSpace Vbar;  // closure in R^r x T
    TropicalCycle D;     // div(f) on W
    // per cell of W, -1 where absent
    std::vector<int> graph, down;          // in V
    std::vector<int> graph_bar, down_bar;  // in Vbar
    std::vector<int> boundary;             // sigma x {-inf} in Vbar
};

// W embedded in R^r (identity face maps, no sedentarity); f must be affine on every cell of W
Modification open_modification(const TropicalSpace& W, const PLFunction& f);

struct SequenceCheck {
    int rank_D = 0, rank_V = 0, rank_W = 0;  // F_{p-1}(D), F_p(V), F_p(W) at the cell
    bool exact = false;
};
// 0 -> F_{p-1}(D) -> F_p(V) -> F_p(W) -> 0 at a cell of W in the support of D, over Z
SequenceCheck orlik_solomon_check(const TropicalSpace& W, const Modification& M, int cell, int p);

struct ProductT {
    TropicalSpace X;
    std::vector<int> tilde, inf;  // sigma x T and sigma x {-inf}, per cell of Y
};
ProductT product_with_T(const TropicalSpace& Y);

// Borel-Moore cellular chain maps between Y and Y x T:
//   psi: C_{p,q}(Y) -> C_{p+1,q+1}(Y x T),  phi: C_{p+1,q+1}(Y x T) -> C_{p,q}(Y),
//   h: C_{p+1,q+1}(Y x T) -> C_{p+1,q+2}(Y x T) with id - psi phi = d h + h d
struct ProductMaps {
    TropChainComplex KY, KP;  // (p, .) on Y, (p+1, .) on Y x T
    std::vector<SparseInt> psi, phi, h;  // indexed by q
};
ProductMaps product_chain_maps(const TropicalSpace& Y, const ProductT& P, int p);

}  // namespace trop
