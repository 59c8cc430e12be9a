#pragma once

#include "trop/chains.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trop {

struct ClassCoords {
    std::vector<Int> torsion;  // residues modulo the invariant factors
    IntVec free;
    bool zero() const;
    bool operator==(const ClassCoords& o) const { return torsion == o.torsion && free == o.free; }
    std::string str() const;
};

struct HomologyGroup {
    int q = 0;
    int betti = 0;
    std::vector<Int> torsion;              // invariant factors > 1, divisibility ordered
    std::vector<IntVec> torsion_gens;      // chains, one per torsion factor
    std::vector<IntVec> free_gens;         // chains, one per free summand
    std::string str() const;               // e.g. "2 [2]"
};

// homology of a chain complex (or cohomology of a cochain complex) in all degrees at once;
// unit pivots are eliminated sparsely, the residue is handled by dense Smith forms
class HomologyComputation {
public:
    explicit HomologyComputation(const TropChainComplex& K);

    int top() const { return top_; }
    bool cochain() const { return cochain_; }
    // q is the degree of K (cohomological degree for cochain complexes)
    const HomologyGroup& group(int q) const { return groups_.at(q); }
    bool is_cycle(int q, const IntVec& z) const;
    ClassCoords class_of(int q, const IntVec& z) const;
    bool is_boundary(int q, const IntVec& z) const { return class_of(q, z).zero(); }
    // free coordinates of a rational cycle (classes tensored with Q)
    RatVec free_coords(int q, const RatVec& z) const;
    // chain with the given class coordinates
    IntVec chain_of(int q, const ClassCoords& c) const;
    int residual_size(int q) const;

private:
    struct Step {
        int k;  // eliminated column a of d_k and row b
        int a, b;
        Int alpha;
        std::vector<std::pair<int, Int>> col, row;
    };
    struct Residual {
        std::vector<int> alive;          // original indices
        IntMatrix Vtail_inv;             // left inverse of the cycle basis, rows x alive
        IntMatrix Z;                     // cycle basis, alive x z
        IntMatrix U2, U2inv;             // Smith transform of the boundary lattice in cycle coordinates
        std::vector<Int> diag;           // all invariant factors of B'
        int rank2 = 0;
    };

    template <class T>
    std::vector<T> forward(int q, std::vector<T> z) const;
    template <class T>
    std::vector<T> backward(int q, std::vector<T> x) const;
    int internal(int q) const { return cochain_ ? top_ - q : q; }

    bool cochain_ = false;
    int top_ = 0;
    std::vector<int> dims_;             // internal grading
    std::vector<SparseInt> d_;          // internal: d_[k] : C_k -> C_{k-1}
    std::vector<Step> steps_;
    std::vector<Residual> res_;         // internal grading
    std::vector<HomologyGroup> groups_; // external grading
};

// rank / torsion table over p (columns) and q (rows)
struct Diamond {
    int n = 0;
    std::vector<std::vector<int>> betti;                 // [p][q]
    std::vector<std::vector<std::vector<Int>>> torsion;  // [p][q]
    std::string text() const;  // aligned rows, q from top to bottom
    std::string csv() const;   // header q,p0,p1,...
};

// cellular model; uses the on-disk cache when a directory is configured
Diamond hodge_diamond(const TropicalSpace& X, Variant v);
Diamond hodge_diamond(const StratifiedSimplicialStructure& S, Variant v);

// cache directory: TROP_CACHE_DIR, or set explicitly (empty disables)
void set_cache_dir(const std::string& dir);
std::string cache_dir();
std::string complex_hash(const TropChainComplex& K);

}  // namespace trop
