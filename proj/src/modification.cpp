#include "trop/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <tuple>

namespace trop {

namespace {

// (r+1) x r inclusion and r x (r+1) projection forgetting the last coordinate
IntMatrix inclusion(int r) {
    IntMatrix E(r + 1, r);
    for (int i = 0; i < r; ++i) E(i, i) = 1;
    return E;
}

IntMatrix projection(int r) {
    IntMatrix P(r, r + 1);
    for (int i = 0; i < r; ++i) P(i, i) = 1;
    return P;
}

IntMatrix block(const IntMatrix& A) {
    int r = A.rows();
    IntMatrix B(r + 1, r + 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) B(i, j) = A(i, j);
    B(r, r) = 1;
    return B;
}

ExtVec pad(const ExtVec& b) {
    ExtVec c = b;
    c.push_back(ExtRat());
    return c;
}

IntVec lift(const IntVec& v, const Int& last) {
    IntVec w = v;
    w.push_back(last);
    return w;
}

IntVec last_unit(int r, int s) {
    IntVec e(r + 1);
    e[r] = s;
    return e;
}

XPoint lift_point(const XPoint& p, const ExtRat& last, bool minus_inf) {
    XPoint q(p.size() + 1);
    for (int i = 0; i < p.size(); ++i) {
        q.x[i] = p.x[i];
        q.inf[i] = p.inf[i];
    }
    if (minus_inf)
        q.inf[p.size()] = 1;
    else
        q.x[p.size()] = last;
    return q;
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec coords_in(const MultiTangent& F, const IntVec& w, const char* what) {
    IntVec c = F.R * w;
    if (!(F.L.matrix() * c == w)) throw std::logic_error(std::string(what) + ": vector outside F_p");
    return c;
}

bool below(const TropicalSpace& X, int small, int big) {
    if (small == big) return true;
    for (int fr : X.faces_of(big))
        if (below(X, small, X.faces[fr].child)) return true;
    return false;
}

bool unimodular_columns(const IntMatrix& M, int rank) {
    auto f = invariant_factors(M);
    if (int(f.size()) != rank) return false;
    for (auto& x : f)
        if (abs(x) != 1) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------- open modification

Modification open_modification(const TropicalSpace& W, const PLFunction& f) {
    const int r = W.chart_rank();
    const int nc = int(W.cells.size());
    for (auto& c : W.cells)
        if (!c.sed.empty()) throw std::invalid_argument("open_modification: W must lie in R^r");
    for (auto& fr : W.faces) {
        bool zero_b = true;
        for (auto& x : fr.b) zero_b = zero_b && x.is_zero();
        if (!(fr.A == IntMatrix::identity(r)) || !zero_b)
            throw std::invalid_argument("open_modification: W must use one global chart");
    }
    Modification M;
    M.D = divisor(W, f);
    std::vector<char> supp(nc, 0);
    std::function<void(int)> mark = [&](int c) {
        if (supp[c]) return;
        supp[c] = 1;
        for (int fr : W.faces_of(c)) mark(W.faces[fr].child);
    };
    for (auto& [c, w] : M.D.weights) mark(c);
    std::vector<Int> dweight(nc, 0);
    for (auto& [c, w] : M.D.weights) dweight[c] = w;

    std::vector<AffinePiece> piece;
    for (int c = 0; c < nc; ++c) piece.push_back(affine_piece(W, f, IntMatrix::identity(r), ExtVec(r), c));
    auto value = [&](int c, const XPoint& v) {
        ExtRat s = piece[c].constant;
        for (int i = 0; i < r; ++i) s += v.x[i] * Rat(piece[c].slope[i]);
        return s;
    };
    auto slope_lift = [&](int c, const IntVec& u) { return lift(u, dot(piece[c].slope, u)); };

    // kinds: 0 graph, 1 downward, 2 boundary
    std::vector<std::tuple<int, int, int>> order;
    for (int c = 0; c < nc; ++c) {
        order.push_back({W.cells[c].dim, 0, c});
        if (supp[c]) {
            order.push_back({W.cells[c].dim + 1, 1, c});
            order.push_back({W.cells[c].dim, 2, c});
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](auto& a, auto& b) { return std::get<0>(a) < std::get<0>(b); });
    M.graph.assign(nc, -1);
    M.down.assign(nc, -1);
    M.graph_bar.assign(nc, -1);
    M.down_bar.assign(nc, -1);
    M.boundary.assign(nc, -1);
    for (auto& [dim, kind, c] : order) {
        const Cell& s = W.cells[c];
        Cell t;
        t.dim = dim;
        t.r = r + 1;
        if (kind == 0) {
            t.label = s.label + "~";
            for (auto& v : s.verts) t.verts.push_back(lift_point(v, value(c, v), false));
            for (auto& u : s.rays) t.rays.push_back(slope_lift(c, u));
            t.weight = s.weight;
            M.graph[c] = M.V.add_cell(t);
            M.graph_bar[c] = M.Vbar.add_cell(t);
        } else if (kind == 1) {
            t.label = s.label + "v";
            for (auto& v : s.verts) t.verts.push_back(lift_point(v, value(c, v), false));
            for (auto& u : s.rays) t.rays.push_back(slope_lift(c, u));
            t.weight = int(dweight[c].get_si());
            Cell tb = t;
            t.rays.push_back(last_unit(r, -1));
            for (auto& v : s.verts) tb.verts.push_back(lift_point(v, ExtRat(), true));
            M.down[c] = M.V.add_cell(t);
            M.down_bar[c] = M.Vbar.add_cell(tb);
        } else {
            t.label = s.label + "_inf";
            t.sed = {r};
            for (auto& v : s.verts) t.verts.push_back(lift_point(v, ExtRat(), true));
            for (auto& u : s.rays) t.rays.push_back(lift(u, 0));
            M.boundary[c] = M.Vbar.add_cell(t);
        }
    }

    const IntMatrix I = IntMatrix::identity(r + 1);
    for (std::size_t k = 0; k < W.faces.size(); ++k) {
        const FaceRel& fr = W.faces[k];
        IntVec v = W.primitive_generator(int(k));
        IntVec up = slope_lift(fr.parent, v);
        M.V.add_face_inward(M.graph[fr.child], M.graph[fr.parent], I, ExtVec(r + 1), up);
        M.Vbar.add_face_inward(M.graph_bar[fr.child], M.graph_bar[fr.parent], I, ExtVec(r + 1), up);
        if (supp[fr.parent]) {
            M.V.add_face_inward(M.down[fr.child], M.down[fr.parent], I, ExtVec(r + 1), lift(v, 0));
            M.Vbar.add_face_inward(M.down_bar[fr.child], M.down_bar[fr.parent], I, ExtVec(r + 1), lift(v, 0));
            M.Vbar.add_face_inward(M.boundary[fr.child], M.boundary[fr.parent], I, ExtVec(r + 1), lift(v, 0));
        }
    }
    for (int c = 0; c < nc; ++c) {
        if (!supp[c]) continue;
        M.V.add_face_inward(M.graph[c], M.down[c], I, ExtVec(r + 1), last_unit(r, -1));
        M.Vbar.add_face_inward(M.graph_bar[c], M.down_bar[c], I, ExtVec(r + 1), last_unit(r, -1));
        M.Vbar.add_face_inward(M.boundary[c], M.down_bar[c], I, ExtVec(r + 1), last_unit(r, 1));
    }
    M.V.finalize();
    M.Vbar.finalize();
    return M;
}

SequenceCheck orlik_solomon_check(const TropicalSpace& W, const Modification& M, int cell, int p) {
    if (p < 1) throw std::invalid_argument("orlik_solomon_check: p must be positive");
    const int r = W.chart_rank();
    if (M.graph.at(cell) < 0) throw std::invalid_argument("orlik_solomon_check: unknown cell");
    std::vector<IntVec> gens;
    for (auto& [c, w] : M.D.weights)
        if (below(W, cell, c))
            for (auto& b : wedge_power(W.tangent(c), p - 1).basis) gens.push_back(b);
    LatticeBasis FD = saturate(gens, int(binom(r, p - 1)));
    const MultiTangent& FV = M.V.F(M.graph[cell], p);
    const MultiTangent& FW = W.F(cell, p);
    SequenceCheck out;
    out.rank_D = FD.rank();
    out.rank_V = FV.rank();
    out.rank_W = FW.rank();

    IntMatrix E = compound(inclusion(r), p - 1), P = compound(projection(r), p);
    IntVec e = last_unit(r, 1);
    IntMatrix iota(FV.rank(), FD.rank()), pi(FW.rank(), FV.rank());
    for (int k = 0; k < FD.rank(); ++k) {
        IntVec w = wedge(E * FD.basis[k], p - 1, e, 1, r + 1);
        IntVec c = FV.R * w;
        if (!(FV.L.matrix() * c == w)) return out;
        for (int i = 0; i < FV.rank(); ++i) iota(i, k) = c[i];
    }
    for (int k = 0; k < FV.rank(); ++k) {
        IntVec w = P * FV.L.basis[k];
        IntVec c = FW.R * w;
        if (!(FW.L.matrix() * c == w)) return out;
        for (int i = 0; i < FW.rank(); ++i) pi(i, k) = c[i];
    }
    IntMatrix comp = pi * iota;
    bool zero = true;
    for (int i = 0; i < comp.rows(); ++i)
        for (int j = 0; j < comp.cols(); ++j) zero = zero && comp(i, j) == 0;
    out.exact = zero && unimodular_columns(iota, out.rank_D) && unimodular_columns(pi, out.rank_W) &&
                out.rank_V == out.rank_D + out.rank_W;
    return out;
}

// ---------------------------------------------------------------- product with T

ProductT product_with_T(const TropicalSpace& Y) {
    const int r = Y.chart_rank();
    const int nc = int(Y.cells.size());
    IntMatrix E = inclusion(r);
    ProductT P;
    P.tilde.assign(nc, -1);
    P.inf.assign(nc, -1);
    std::vector<std::tuple<int, int, int>> order;
    for (int c = 0; c < nc; ++c) {
        order.push_back({Y.cells[c].dim + 1, 0, c});
        order.push_back({Y.cells[c].dim, 1, c});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](auto& a, auto& b) { return std::get<0>(a) < std::get<0>(b); });
    for (auto& [dim, kind, c] : order) {
        const Cell& s = Y.cells[c];
        Cell t;
        t.dim = dim;
        t.r = r + 1;
        t.sed = s.sed;
        IntVec lam = s.lambda.empty() ? IntVec{} : compound(E, s.dim) * s.lambda;
        for (auto& u : s.rays) t.rays.push_back(lift(u, 0));
        if (kind == 0) {
            t.label = s.label + "xT";
            for (auto& v : s.verts) {
                t.verts.push_back(lift_point(v, ExtRat(), false));
                t.verts.push_back(lift_point(v, ExtRat(), true));
            }
            t.rays.push_back(last_unit(r, 1));
            t.weight = s.weight;
            if (!lam.empty()) t.lambda = wedge(lam, s.dim, last_unit(r, 1), 1, r + 1);
            P.tilde[c] = P.X.add_cell(t);
        } else {
            t.label = s.label + "x-inf";
            t.sed.push_back(r);
            for (auto& v : s.verts) t.verts.push_back(lift_point(v, ExtRat(), true));
            t.lambda = lam;
            P.inf[c] = P.X.add_cell(t);
        }
    }
    for (auto& fr : Y.faces) {
        P.X.add_face(P.tilde[fr.child], P.tilde[fr.parent], block(fr.A), pad(fr.b), fr.eps);
        P.X.add_face(P.inf[fr.child], P.inf[fr.parent], block(fr.A), pad(fr.b), fr.eps);
    }
    for (int c = 0; c < nc; ++c)
        P.X.add_face_inward(P.inf[c], P.tilde[c], IntMatrix::identity(r + 1), ExtVec(r + 1), last_unit(r, 1));
    P.X.finalize();
    return P;
}

ProductMaps product_chain_maps(const TropicalSpace& Y, const ProductT& P, int p) {
    const int r = Y.chart_rank();
    ProductMaps out;
    out.KY = build_complex(Y, p, Variant::BorelMoore);
    out.KP = build_complex(P.X, p + 1, Variant::BorelMoore);
    const auto& KY = out.KY;
    const auto& KP = out.KP;
    IntMatrix E = compound(inclusion(r), p), Pr = compound(projection(r), p);
    IntVec e = last_unit(r, 1);
    IntVec estar = last_unit(r, 1);
    int sg = p % 2 ? -1 : 1;
    int topY = KY.top;
    for (int q = 0; q <= topY; ++q) {
        SparseInt psi(KP.dims[q + 1], KY.dims[q]), phi(KY.dims[q], KP.dims[q + 1]);
        for (std::size_t c = 0; c < Y.cells.size(); ++c) {
            int oy = KY.offset[q][c];
            if (oy < 0) continue;
            int t = P.tilde[c];
            int op = KP.offset[q + 1][t];
            const MultiTangent& FY = Y.F(int(c), p);
            const MultiTangent& FP = P.X.F(t, p + 1);
            for (int k = 0; k < FY.rank(); ++k) {
                IntVec w = wedge(E * FY.L.basis[k], p, e, 1, r + 1);
                IntVec cc = coords_in(FP, w, "product_chain_maps");
                for (std::size_t i = 0; i < cc.size(); ++i) psi.push(op + int(i), oy + k, cc[i]);
            }
            for (int k = 0; k < FP.rank(); ++k) {
                IntVec w = Pr * contract(estar, 1, FP.L.basis[k], p + 1, r + 1);
                IntVec cc = coords_in(FY, w, "product_chain_maps");
                for (std::size_t i = 0; i < cc.size(); ++i) phi.push(oy + int(i), op + k, sg * cc[i]);
            }
        }
        psi.normalize();
        phi.normalize();
        out.psi.push_back(psi);
        out.phi.push_back(phi);
    }
    for (int s = 0; s <= KP.top; ++s) {
        int next = s + 1 <= KP.top ? KP.dims[s + 1] : 0;
        SparseInt h(next, KP.dims[s]);
        for (std::size_t c = 0; c < Y.cells.size(); ++c) {
            int a = P.inf[c];
            if (KP.offset[s][a] < 0) continue;
            int t = P.tilde[c];
            int eps = 0;
            for (int fr : P.X.faces_of(t))
                if (P.X.faces[fr].child == a) eps = P.X.faces[fr].eps;
            const MultiTangent& Fa = P.X.F(a, p + 1);
            const MultiTangent& Ft = P.X.F(t, p + 1);
            for (int k = 0; k < Fa.rank(); ++k) {
                IntVec cc = coords_in(Ft, Fa.L.basis[k], "product_chain_maps");
                for (std::size_t i = 0; i < cc.size(); ++i)
                    h.push(KP.offset[s + 1][t] + int(i), KP.offset[s][a] + k, eps * cc[i]);
            }
        }
        h.normalize();
        out.h.push_back(h);
    }
    return out;
}

}  // namespace trop
