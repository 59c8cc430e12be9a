#pragma once

#include "trop/space.hpp"

#include <memory>
#include <string>
#include <vector>

namespace trop {

enum class Variant { Standard, BorelMoore, Cochain };
enum class Model { Cellular, Simplicial };

std::string to_string(Variant v);
std::string to_string(Model m);

struct SimplexFace {
    int simplex = -1;  // index among (q-1)-simplices
    IntMatrix A, Ainv; // face carrier chart -> this carrier chart
    ExtVec b;
};

struct Simplex {
    int carrier = -1;
    std::vector<int> flag;          // local-face indices of the carrier, increasing
    std::vector<int> vertex_cells;  // cell whose barycenter is vertex k
    std::vector<XPoint> verts;      // positions in the carrier chart
    std::vector<SimplexFace> faces; // face k omits vertex k
};

// local face of a cell: an embedded copy of a (possibly equal) cell
struct LocalFace {
    int cell;
    const Embedding* emb;
};

class StratifiedSimplicialStructure {
public:
    explicit StratifiedSimplicialStructure(const TropicalSpace& X);
    explicit StratifiedSimplicialStructure(TropicalSpace&&) = delete;  // keeps a pointer

    const TropicalSpace& space() const { return *X_; }
    int dim() const { return int(simp_.size()) - 1; }
    int count(int q) const { return q < 0 || q > dim() ? 0 : int(simp_[q].size()); }
    const Simplex& simplex(int q, int i) const { return simp_[q][i]; }
    const std::vector<LocalFace>& local_faces(int cell) const { return lf_[cell]; }
    long euler_characteristic() const;
    // face relation between two local faces of the same cell: which local face of `big.cell` realises `small`
    int find_local(int cell, int sub_cell, const XPoint& image_in_cell) const;

private:
    const TropicalSpace* X_;
    std::vector<std::vector<LocalFace>> lf_;
    std::vector<std::vector<Simplex>> simp_;
};

// labels: (cell or simplex index, F_p basis index)
struct BasisLabel {
    int index;
    int coord;
};

struct TropChainComplex {
    Variant variant = Variant::Standard;
    Model model = Model::Cellular;
    int p = 0;
    int top = 0;  // degrees 0..top
    std::vector<int> dims;
    std::vector<std::vector<BasisLabel>> labels;
    std::vector<std::vector<int>> offset;  // offset[q][cell or simplex], -1 if absent
    // chain variants: d[q] : C_q -> C_{q-1} (q >= 1); cochain: d[q] : C^q -> C^{q+1} (q < top)
    std::vector<SparseInt> d;
    const SparseInt& boundary(int q) const { return d.at(q); }
};

TropChainComplex build_complex(const TropicalSpace& X, int p, Variant v);
TropChainComplex build_complex(const StratifiedSimplicialStructure& S, int p, Variant v);

struct ComplexCheck {
    bool ok = true;
    std::vector<std::string> errors;
};
ComplexCheck check_d_squared(const TropChainComplex& K);

// orientation sign of the ordered simplex w.r.t. a generator of wedge^q of its tangent lattice;
// ideal vertices are treated as -M for large M; formal parts count as infinitesimal, so a sign with zero
// rational part throws
int simplex_orientation(const std::vector<XPoint>& verts, const IntVec& generator, int r);
// minimal rational lattice containing the simplex, intersected with the lattice `within`
LatticeBasis simplex_tangent(const std::vector<XPoint>& verts, int r);

}  // namespace trop
