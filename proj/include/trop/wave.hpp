#pragma once

#include "trop/homology.hpp"

#include <vector>

namespace trop {

using SparseExt = Sparse<ExtRat>;

struct WaveOperator {
    int p = 0, q = 0;        // hat: C_{p-1,q+1} -> C_{p,q}
    SparseExt hat;
    TropChainComplex src;    // (p-1, .) standard complex
    TropChainComplex dst;    // (p, .) standard complex
    // dual map on cochains: C^{p,q} -> C^{p-1,q+1}
    ExtVec cochain(const IntVec& alpha) const;
    ExtVec chain(const IntVec& z) const;
};

// last-edge vector of a (q+1)-simplex, in the chart of the carrier of its face [0..q]
ExtVec wave_vector(const StratifiedSimplicialStructure& S, int q1, int simplex);

WaveOperator wave_chain(const StratifiedSimplicialStructure& S, int p, int q);

// ExtRat chain -> free class coordinates (per formal layer)
ExtVec free_coords_ext(const HomologyComputation& H, int q, const ExtVec& z);

struct WaveMatrix {
    std::vector<ExtVec> rows;  // target free coordinates x source free generators
    int cols = 0;
    int kernel_rank() const { return kernel_rank_extended(rows, cols); }
};

// H_{p-1,q+1} -> H_{p,q} (x) R in representative bases
WaveMatrix wave_on_homology(const StratifiedSimplicialStructure& S, int p, int q);
// H^{p,q} -> H^{p-1,q+1} (x) R
WaveMatrix wave_on_cohomology(const StratifiedSimplicialStructure& S, int p, int q);

struct PicardResult {
    int rank = 0;
    int h11 = 0, h02 = 0;
    std::vector<RatVec> kernel;  // Q-basis of the kernel in H^{1,1} coordinates
    WaveMatrix matrix;
};
PicardResult picard_rank(const StratifiedSimplicialStructure& S);

// coboundary of normalised affine lifts of an F^1 q-cocycle, one constant per (q+1)-simplex
ExtVec cech_delta_via_lifts(const StratifiedSimplicialStructure& S, int q, const IntVec& alpha);

struct ChainMapSign {
    bool ok = false;
    int sign = 0;  // d o hat = sign * hat o d, 0 when both sides vanish
};
ChainMapSign wave_chain_map_sign(const StratifiedSimplicialStructure& S, int p, int q);

}  // namespace trop
