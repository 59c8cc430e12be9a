#include "trop/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace trop {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Standard: return "std";
        case Variant::BorelMoore: return "bm";
        case Variant::Cochain: return "cochain";
    }
    return "?";
}

std::string to_string(Model m) { return m == Model::Cellular ? "cell" : "simp"; }

// ---------------------------------------------------------------- geometry with an ideal parameter M

namespace {

// a + M m with M -> +infinity
struct MVec {
    ExtVec a;
    IntVec m;
};

MVec lift(const XPoint& p) {
    MVec v{p.x, IntVec(p.size())};
    for (int i = 0; i < p.size(); ++i)
        if (p.inf[i]) {
            v.a[i] = ExtRat();
            v.m[i] = -1;
        }
    return v;
}

MVec diff(const MVec& x, const MVec& y) {
    MVec d = x;
    for (std::size_t i = 0; i < d.a.size(); ++i) {
        d.a[i] -= y.a[i];
        d.m[i] -= y.m[i];
    }
    return d;
}

// wedge of M-vectors as a polynomial in M; coefficient k is an element of wedge^q
std::vector<ExtVec> wedge_poly(const std::vector<MVec>& vs, int n) {
    std::vector<ExtVec> acc{ExtVec{ExtRat(1)}};
    int q = 0;
    for (auto& v : vs) {
        std::vector<ExtVec> next(acc.size() + 1, ExtVec(binom(n, q + 1)));
        ExtVec mv = to_ext(v.m);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            auto x = wedge_ext(acc[k], q, v.a, n);
            auto y = wedge_ext(acc[k], q, mv, n);
            for (std::size_t i = 0; i < x.size(); ++i) {
                next[k][i] += x[i];
                next[k + 1][i] += y[i];
            }
        }
        acc = std::move(next);
        ++q;
    }
    return acc;
}

bool all_zero(const ExtVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

LatticeBasis simplex_tangent(const std::vector<XPoint>& verts, int r) {
    std::vector<ExtVec> vecs;
    if (verts.empty()) return LatticeBasis{r, {}};
    MVec last = lift(verts.back());
    for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
        MVec d = diff(lift(verts[k]), last);
        vecs.push_back(d.a);
        vecs.push_back(to_ext(d.m));
    }
    return rational_span_lattice(vecs, r);
}

int simplex_orientation(const std::vector<XPoint>& verts, const IntVec& g, int r) {
    std::vector<MVec> ds;
    MVec x0 = lift(verts.at(0));
    for (std::size_t k = 1; k < verts.size(); ++k) ds.push_back(diff(lift(verts[k]), x0));
    auto poly = wedge_poly(ds, r);
    for (int k = int(poly.size()) - 1; k >= 0; --k) {
        if (all_zero(poly[k])) continue;
        // poly[k] = c g with c rational
        int piv = -1;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] != 0) {
                piv = int(i);
                break;
            }
        if (piv < 0) throw std::invalid_argument("simplex_orientation: zero generator");
        ExtRat c = poly[k][piv] / Rat(g[piv]);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (poly[k][i] != c * ExtRat(g[i])) throw std::domain_error("simplex_orientation: simplex not in the lattice span");
        // formal parts are small perturbations of the rational layer
        if (c.coef(0) == 0) throw std::domain_error("simplex_orientation: sign depends on formal parameters");
        return c.coef(0) > 0 ? 1 : -1;
    }
    throw std::domain_error("simplex_orientation: degenerate simplex");
}

// ---------------------------------------------------------------- barycentric subdivision

int StratifiedSimplicialStructure::find_local(int cell, int sub_cell, const XPoint& image) const {
    auto& L = lf_[cell];
    for (std::size_t i = 0; i < L.size(); ++i)
        if (L[i].cell == sub_cell && L[i].emb->image == image) return int(i);
    return -1;
}

StratifiedSimplicialStructure::StratifiedSimplicialStructure(const TropicalSpace& X) : X_(&X) {
    if (!X.finalized()) throw std::logic_error("subdivision of a non-finalized space");
    if (!X.compact()) throw std::invalid_argument("barycentric subdivision needs compact cells");
    const int n = int(X.cells.size());
    lf_.assign(n, {});
    for (int rho = 0; rho < n; ++rho)
        for (auto& e : X.embeddings(rho)) lf_[e.cell].push_back(LocalFace{rho, &e});
    // self index and strict order among local faces
    std::vector<int> self(n, -1);
    std::vector<std::vector<std::vector<int>>> below(n);  // below[s][j]: local faces strictly inside j
    for (int s = 0; s < n; ++s) {
        auto& L = lf_[s];
        for (std::size_t i = 0; i < L.size(); ++i)
            if (L[i].cell == s) self[s] = int(i);
        below[s].assign(L.size(), {});
        for (std::size_t j = 0; j < L.size(); ++j) {
            const LocalFace& big = L[j];
            for (std::size_t i = 0; i < L.size(); ++i) {
                const LocalFace& small = L[i];
                if (X.cells[small.cell].dim >= X.cells[big.cell].dim) continue;
                for (auto& e : X.embeddings(small.cell)) {
                    if (e.cell != big.cell) continue;
                    if (apply_affine(big.emb->A, big.emb->b, e.image) == small.emb->image) {
                        below[s][j].push_back(int(i));
                        break;
                    }
                }
            }
        }
    }
    int top = X.dim();
    simp_.assign(top + 1, {});
    std::map<std::pair<int, std::vector<int>>, int> key;
    for (int s = 0; s < n; ++s) {
        std::vector<int> chain{self[s]};
        std::function<void()> rec = [&]() {
            std::vector<int> flag(chain.rbegin(), chain.rend());
            int q = int(flag.size()) - 1;
            Simplex sx;
            sx.carrier = s;
            sx.flag = flag;
            for (int i : flag) {
                sx.vertex_cells.push_back(lf_[s][i].cell);
                sx.verts.push_back(lf_[s][i].emb->image);
            }
            key[{s, flag}] = int(simp_[q].size());
            simp_[q].push_back(std::move(sx));
            for (int i : below[s][chain.back()]) {
                chain.push_back(i);
                rec();
                chain.pop_back();
            }
        };
        rec();
    }
    // faces
    for (int q = 1; q <= top; ++q)
        for (auto& sx : simp_[q]) {
            int s = sx.carrier;
            int r = X.cells[s].r;
            for (int k = 0; k < q; ++k) {
                std::vector<int> f = sx.flag;
                f.erase(f.begin() + k);
                auto it = key.find({s, f});
                if (it == key.end()) throw std::logic_error("subdivision: missing face");
                sx.faces.push_back(SimplexFace{it->second, IntMatrix::identity(r), IntMatrix::identity(r), ExtVec(r)});
            }
            const LocalFace& big = lf_[s][sx.flag[q - 1]];
            int rho = big.cell;
            std::vector<int> f;
            // re-express the smaller local faces inside rho
            for (int k = 0; k + 1 < q; ++k) {
                const LocalFace& small = lf_[s][sx.flag[k]];
                int found = -1;
                for (std::size_t i = 0; i < lf_[rho].size(); ++i) {
                    const LocalFace& c = lf_[rho][i];
                    if (c.cell != small.cell) continue;
                    if (apply_affine(big.emb->A, big.emb->b, c.emb->image) == small.emb->image) {
                        found = int(i);
                        break;
                    }
                }
                if (found < 0) throw std::logic_error("subdivision: face not found in the smaller carrier");
                f.push_back(found);
            }
            f.push_back(self[rho]);
            auto it = key.find({rho, f});
            if (it == key.end()) throw std::logic_error("subdivision: missing carrier-changing face");
            sx.faces.push_back(SimplexFace{it->second, big.emb->A, big.emb->Ainv, big.emb->b});
        }
}

long StratifiedSimplicialStructure::euler_characteristic() const {
    long chi = 0;
    for (int q = 0; q <= dim(); ++q) chi += (q % 2 ? -1 : 1) * long(simp_[q].size());
    return chi;
}

// ---------------------------------------------------------------- complexes

namespace {

void append_block(SparseInt& D, int col0, int row0, const IntMatrix& M, int sign) {
    for (int j = 0; j < M.cols(); ++j)
        for (int i = 0; i < M.rows(); ++i)
            if (M(i, j) != 0) D.push(row0 + i, col0 + j, sign > 0 ? M(i, j) : Int(-M(i, j)));
}

TropChainComplex cochain_from(TropChainComplex K) {
    TropChainComplex C = K;
    C.variant = Variant::Cochain;
    C.d.assign(K.top + 1, SparseInt());
    for (int q = 0; q < K.top; ++q) C.d[q] = K.d[q + 1].transpose();
    C.d[K.top] = SparseInt(0, K.dims[K.top]);
    for (auto& m : C.d) m.normalize();
    return C;
}

}  // namespace

TropChainComplex build_complex(const TropicalSpace& X, int p, Variant v) {
    if (!X.finalized()) throw std::logic_error("build_complex: space not finalized");
    TropChainComplex K;
    K.variant = v;
    K.model = Model::Cellular;
    K.p = p;
    K.top = X.dim();
    const int n = int(X.cells.size());
    bool all = v == Variant::BorelMoore;
    K.dims.assign(K.top + 1, 0);
    K.labels.assign(K.top + 1, {});
    K.offset.assign(K.top + 1, std::vector<int>(n, -1));
    for (int c = 0; c < n; ++c) {
        const Cell& cell = X.cells[c];
        if (!all && !cell.compact()) continue;
        int q = cell.dim;
        K.offset[q][c] = K.dims[q];
        int k = p <= cell.r ? X.F(c, p).rank() : 0;
        for (int j = 0; j < k; ++j) K.labels[q].push_back({c, j});
        K.dims[q] += k;
    }
    K.d.assign(K.top + 1, SparseInt());
    K.d[0] = SparseInt(0, K.dims[0]);
    for (int q = 1; q <= K.top; ++q) K.d[q] = SparseInt(K.dims[q - 1], K.dims[q]);
    for (int c = 0; c < n; ++c) {
        int q = X.cells[c].dim;
        if (q == 0 || K.offset[q][c] < 0) continue;
        for (int fi : X.faces_of(c)) {
            const FaceRel& f = X.faces[fi];
            if (K.offset[q - 1][f.child] < 0) throw std::logic_error("build_complex: face of a compact cell is not compact");
            append_block(K.d[q], K.offset[q][c], K.offset[q - 1][f.child], X.iota(fi, p), f.eps);
        }
    }
    for (auto& m : K.d) m.normalize();
    if (v == Variant::Cochain) {
        auto S = build_complex(X, p, Variant::Standard);
        return cochain_from(std::move(S));
    }
    return K;
}

TropChainComplex build_complex(const StratifiedSimplicialStructure& S, int p, Variant v) {
    const TropicalSpace& X = S.space();
    TropChainComplex K;
    K.variant = v;
    K.model = Model::Simplicial;
    K.p = p;
    K.top = S.dim();
    K.dims.assign(K.top + 1, 0);
    K.labels.assign(K.top + 1, {});
    K.offset.assign(K.top + 1, {});
    for (int q = 0; q <= K.top; ++q) {
        K.offset[q].assign(S.count(q), -1);
        for (int i = 0; i < S.count(q); ++i) {
            K.offset[q][i] = K.dims[q];
            int k = X.F(S.simplex(q, i).carrier, p).rank();
            for (int j = 0; j < k; ++j) K.labels[q].push_back({i, j});
            K.dims[q] += k;
        }
    }
    K.d.assign(K.top + 1, SparseInt());
    K.d[0] = SparseInt(0, K.dims[0]);
    for (int q = 1; q <= K.top; ++q) {
        K.d[q] = SparseInt(K.dims[q - 1], K.dims[q]);
        for (int i = 0; i < S.count(q); ++i) {
            const Simplex& sx = S.simplex(q, i);
            for (int k = 0; k <= q; ++k) {
                const SimplexFace& f = sx.faces[k];
                int fc = S.simplex(q - 1, f.simplex).carrier;
                IntMatrix M = fc == sx.carrier ? IntMatrix::identity(X.F(fc, p).rank())
                                               : X.iota_inv(fc, sx.carrier, f.Ainv, p);
                append_block(K.d[q], K.offset[q][i], K.offset[q - 1][f.simplex], M, k % 2 ? -1 : 1);
            }
        }
    }
    for (auto& m : K.d) m.normalize();
    if (v == Variant::Cochain) {
        K.variant = Variant::Standard;
        return cochain_from(std::move(K));
    }
    return K;
}

ComplexCheck check_d_squared(const TropChainComplex& K) {
    ComplexCheck c;
    if (K.variant == Variant::Cochain) {
        for (int q = 0; q + 1 < K.top; ++q)
            if ((K.d[q + 1] * K.d[q]).nnz() != 0) {
                c.ok = false;
                c.errors.push_back("d^" + std::to_string(q + 1) + " d^" + std::to_string(q) + " != 0");
            }
    } else {
        for (int q = 2; q <= K.top; ++q)
            if ((K.d[q - 1] * K.d[q]).nnz() != 0) {
                c.ok = false;
                c.errors.push_back("d_" + std::to_string(q - 1) + " d_" + std::to_string(q) + " != 0");
            }
    }
    return c;
}

}  // namespace trop
