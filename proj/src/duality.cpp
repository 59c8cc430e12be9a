#include "trop/duality.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace trop {

// ---------------------------------------------------------------- PL functions

PLFunction PLFunction::affine(const IntVec& m, const ExtRat& c) {
    PLFunction f;
    f.r = int(m.size());
    f.plus.add(m, c);
    return f;
}

PLFunction PLFunction::poly(TropPoly P) {
    if (P.empty()) throw std::invalid_argument("PLFunction: empty polynomial");
    PLFunction f;
    f.r = int(P.slopes[0].size());
    f.plus = std::move(P);
    return f;
}

namespace {

// tropical product of polynomials (sum of functions); empty means 0
TropPoly product(const TropPoly& a, const TropPoly& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    TropPoly c;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            IntVec m = a.slopes[i];
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += b.slopes[j][k];
            c.add(m, a.consts[i] + b.consts[j]);
        }
    return c;
}

Rat eval_poly(const TropPoly& P, const RatVec& x) {
    if (P.empty()) return 0;
    bool first = true;
    Rat best;
    for (std::size_t t = 0; t < P.size(); ++t) {
        Rat v = P.consts[t].rational();
        for (std::size_t i = 0; i < x.size(); ++i) v += Rat(P.slopes[t][i]) * x[i];
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

Rat dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return Rat(s);
}

ExtRat dot(const IntVec& a, const ExtVec& b) {
    ExtRat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += b[i] * Rat(a[i]);
    return s;
}

// row vector m times matrix
IntVec times(const IntVec& m, const IntMatrix& A) {
    IntVec r(A.cols());
    for (int j = 0; j < A.cols(); ++j)
        for (int i = 0; i < A.rows(); ++i) r[j] += m[i] * A(i, j);
    return r;
}

Rat sign_of(const ExtRat& x) {
    if (!x.is_rational()) throw std::domain_error("PL function: comparison depends on formal parameters");
    return x.rational();
}

// index of a term dominating on the whole cell, slopes and constants already in the cell chart
int dominant(const TropicalSpace& X, const TropPoly& P, int c) {
    const Cell& cell = X.cells[c];
    auto rec = X.recession(c);
    std::vector<const XPoint*> base;
    for (auto& v : cell.verts)
        if (v.sed() == cell.sed) base.push_back(&v);
    if (base.empty()) throw std::domain_error("PL function: cell without vertices in its stratum");
    std::vector<char> sed(cell.r, 0);
    for (int j : cell.sed) sed[j] = 1;
    for (std::size_t t = 0; t < P.size(); ++t) {
        bool ok = true;
        for (std::size_t u = 0; u < P.size() && ok; ++u) {
            if (u == t) continue;
            IntVec d(cell.r);
            for (int i = 0; i < cell.r; ++i) d[i] = P.slopes[t][i] - P.slopes[u][i];
            // coordinates at -infinity on the whole cell decide first
            int lead = 0;
            for (int j : cell.sed) {
                int s = d[j] < 0 ? 1 : d[j] > 0 ? -1 : 0;
                if (s && lead && s != lead) throw std::domain_error("PL function: undecidable at the boundary");
                if (s) lead = s;
            }
            if (lead < 0) ok = false;
            if (lead != 0) continue;
            for (auto& r : rec)
                if (dot(d, r) < 0) ok = false;
            for (auto* v : base) {
                ExtRat diff = P.consts[t] - P.consts[u];
                for (int i = 0; i < cell.r; ++i)
                    if (!sed[i] && d[i] != 0) diff += v->x[i] * Rat(d[i]);
                if (sign_of(diff) < 0) ok = false;
            }
        }
        if (ok) return int(t);
    }
    throw std::domain_error("PL function not affine on cell " + cell.label);
}

TropPoly pull(const TropPoly& P, const IntMatrix& Ainv, const ExtVec& b) {
    TropPoly Q;
    for (std::size_t t = 0; t < P.size(); ++t) {
        IntVec m = times(P.slopes[t], Ainv);
        Q.add(m, P.consts[t] - dot(m, b));
    }
    return Q;
}

}  // namespace

PLFunction PLFunction::operator+(const PLFunction& o) const {
    PLFunction f;
    f.r = std::max(r, o.r);
    f.plus = product(plus, o.plus);
    f.minus = product(minus, o.minus);
    return f;
}

PLFunction PLFunction::operator-() const {
    PLFunction f = *this;
    std::swap(f.plus, f.minus);
    return f;
}

Rat PLFunction::eval(const RatVec& x) const { return eval_poly(plus, x) - eval_poly(minus, x); }

AffinePiece affine_piece(const TropicalSpace& X, const PLFunction& f, const IntMatrix& Ainv, const ExtVec& b, int on) {
    int r = X.cells[on].r;
    AffinePiece a{IntVec(r), ExtRat()};
    if (!f.plus.empty()) {
        TropPoly P = pull(f.plus, Ainv, b);
        int t = dominant(X, P, on);
        a.slope = P.slopes[t];
        a.constant = P.consts[t];
    }
    if (!f.minus.empty()) {
        TropPoly P = pull(f.minus, Ainv, b);
        int t = dominant(X, P, on);
        for (int i = 0; i < r; ++i) a.slope[i] -= P.slopes[t][i];
        a.constant -= P.consts[t];
    }
    return a;
}

CartierDivisor CartierDivisor::uniform(const TropicalSpace& X, const PLFunction& f) {
    CartierDivisor D;
    D.local.assign(X.cells.size(), f);
    return D;
}

// ---------------------------------------------------------------- fundamental chains

namespace {

IntVec coords_in(const MultiTangent& F, const IntVec& w) {
    IntVec c = F.R * w;
    if (!(F.L.matrix() * c == w)) throw std::domain_error("multivector outside F_p");
    return c;
}

void add_to(IntVec& z, int off, const IntVec& c, const Int& k) {
    for (std::size_t i = 0; i < c.size(); ++i) z[off + int(i)] += k * c[i];
}

IntVec oriented(const Simplex& s, const Cell& c) {
    IntVec l = c.lambda;
    if (simplex_orientation(s.verts, c.lambda, c.r) < 0)
        for (auto& x : l) x = -x;
    return l;
}

// simplex obtained by keeping the listed vertex positions (sorted)
int subface(const StratifiedSimplicialStructure& S, int q, int idx, const std::vector<int>& keep) {
    std::vector<char> k(q + 1, 0);
    for (int x : keep) k[x] = 1;
    int cur = idx, dim = q;
    for (int pos = q; pos >= 0; --pos) {
        if (k[pos]) continue;
        cur = S.simplex(dim, cur).faces[pos].simplex;
        --dim;
    }
    return cur;
}

}  // namespace

IntVec fundamental_chain(const TropicalSpace& X) {
    auto K = build_complex(X, X.dim(), Variant::BorelMoore);
    IntVec z(K.dims[X.dim()]);
    for (int c : X.top_cells()) {
        const Cell& cell = X.cells[c];
        add_to(z, K.offset[X.dim()][c], coords_in(X.F(c, X.dim()), cell.lambda), cell.weight);
    }
    return z;
}

IntVec fundamental_chain(const StratifiedSimplicialStructure& S) {
    TropicalCycle Z{Model::Simplicial, S.dim(), {}};
    for (int i = 0; i < S.count(S.dim()); ++i)
        Z.weights.push_back({i, S.space().cells[S.simplex(S.dim(), i).carrier].weight});
    return cycle_chain(S, Z);
}

IntVec cycle_chain(const TropicalSpace& X, const TropicalCycle& Z) {
    if (Z.model != Model::Cellular) throw std::invalid_argument("cycle_chain: simplicial cycle on a cellular model");
    auto K = build_complex(X, Z.k, Variant::BorelMoore);
    IntVec z(K.dims[Z.k]);
    for (auto& [c, w] : Z.weights) {
        const Cell& cell = X.cells.at(c);
        if (cell.dim != Z.k) throw std::invalid_argument("cycle_chain: cell of wrong dimension");
        add_to(z, K.offset[Z.k][c], coords_in(X.F(c, Z.k), cell.lambda), w);
    }
    return z;
}

IntVec cycle_chain(const StratifiedSimplicialStructure& S, const TropicalCycle& Z) {
    const TropicalSpace& X = S.space();
    auto K = build_complex(S, Z.k, Variant::Standard);
    if (Z.model == Model::Cellular) return subdivision_map(S, Z.k, Z.k).apply(cycle_chain(X, Z));
    IntVec z(K.dims[Z.k]);
    for (auto& [i, w] : Z.weights) {
        const Simplex& s = S.simplex(Z.k, i);
        LatticeBasis L = simplex_tangent(s.verts, X.chart_rank());
        IntVec g = wedge_vectors(L.basis, X.chart_rank());
        if (Z.k > 0 && simplex_orientation(s.verts, g, X.chart_rank()) < 0)
            for (auto& x : g) x = -x;
        add_to(z, K.offset[Z.k][i], coords_in(X.F(s.carrier, Z.k), g), w);
    }
    return z;
}

bool is_closed(const TropicalSpace& X, const TropicalCycle& Z) {
    if (Z.k == 0) return true;
    auto K = build_complex(X, Z.k, Variant::BorelMoore);
    for (auto& e : K.d[Z.k].apply(cycle_chain(X, Z)))
        if (e != 0) return false;
    return true;
}

SparseInt subdivision_map(const StratifiedSimplicialStructure& S, int p, int q) {
    const TropicalSpace& X = S.space();
    auto Kc = build_complex(X, p, Variant::BorelMoore);
    auto Ks = build_complex(S, p, Variant::Standard);
    SparseInt M(Ks.dims[q], Kc.dims[q]);
    for (int i = 0; i < S.count(q); ++i) {
        const Simplex& s = S.simplex(q, i);
        const Cell& c = X.cells[s.carrier];
        if (c.dim != q) continue;
        int sign = q == 0 ? 1 : simplex_orientation(s.verts, c.lambda, c.r);
        int k = X.F(s.carrier, p).rank();
        for (int j = 0; j < k; ++j) M.push(Ks.offset[q][i] + j, Kc.offset[q][s.carrier] + j, Int(sign));
    }
    M.normalize();
    return M;
}

ClassCoords cycle_class(const TropicalSpace& X, const TropicalCycle& Z) {
    auto K = build_complex(X, Z.k, Variant::BorelMoore);
    IntVec z = cycle_chain(X, Z);
    HomologyComputation H(K);
    if (!H.is_cycle(Z.k, z)) throw std::invalid_argument("cycle_class: cycle is not balanced");
    return H.class_of(Z.k, z);
}

ClassCoords cycle_class(const StratifiedSimplicialStructure& S, const TropicalCycle& Z) {
    auto K = build_complex(S, Z.k, Variant::Standard);
    IntVec z = cycle_chain(S, Z);
    HomologyComputation H(K);
    if (!H.is_cycle(Z.k, z)) throw std::invalid_argument("cycle_class: cycle is not balanced");
    return H.class_of(Z.k, z);
}

// ---------------------------------------------------------------- divisors

TropicalCycle divisor(const TropicalSpace& X, const CartierDivisor& D) {
    if (D.local.size() != X.cells.size()) throw std::invalid_argument("divisor: one local function per cell expected");
    int n = X.dim();
    TropicalCycle Z{Model::Cellular, n - 1, {}};
    for (int t = 0; t < int(X.cells.size()); ++t) {
        const Cell& tau = X.cells[t];
        if (tau.dim != n - 1 || !tau.sed.empty()) continue;
        Rat first = 0;
        IntVec sum(tau.r);
        IntVec pulled;  // slope on tau from one coface, tau chart
        for (int fr : X.cofaces_of(t)) {
            const FaceRel& f = X.faces[fr];
            const Cell& sig = X.cells[f.parent];
            if (sig.dim != n || !sig.sed.empty()) continue;
            const IntMatrix& Ainv = X.face_inverse(fr);
            AffinePiece a = affine_piece(X, D.local[t], Ainv, f.b, f.parent);
            IntVec v = X.primitive_generator(fr);
            first += Rat(sig.weight) * dot(a.slope, v);
            IntVec back = Ainv * v;
            for (int i = 0; i < tau.r; ++i) sum[i] += sig.weight * back[i];
            if (pulled.empty()) pulled = times(a.slope, f.A);
        }
        if (pulled.empty()) continue;
        if (!lattice_coords(X.tangent(t), sum)) throw std::domain_error("divisor: space not balanced at " + tau.label);
        Rat w = first - dot(pulled, sum);
        if (w.get_den() != 1) throw std::logic_error("divisor: non-integral weight");
        if (w != 0) Z.weights.push_back({t, w.get_num()});
    }
    return Z;
}

TropicalCycle divisor(const TropicalSpace& X, const PLFunction& f) { return divisor(X, CartierDivisor::uniform(X, f)); }

// ---------------------------------------------------------------- cap product

IntVec cap_fundamental(const StratifiedSimplicialStructure& S, int p, int q, const IntVec& alpha) {
    const TropicalSpace& X = S.space();
    int n = S.dim(), r = X.chart_rank();
    if (p < 0 || p > n || q < 0 || q > n) throw std::invalid_argument("cap_fundamental: degree out of range");
    auto Kc = build_complex(S, p, Variant::Cochain);
    auto Kb = build_complex(S, n - p, Variant::Standard);
    if (int(alpha.size()) != Kc.dims[q]) throw std::invalid_argument("cap_fundamental: size mismatch");
    IntVec out(Kb.dims[n - q]);
    std::vector<int> front, back;
    for (int k = 0; k <= q; ++k) front.push_back(k);
    for (int k = q; k <= n; ++k) back.push_back(k);
    for (int i = 0; i < S.count(n); ++i) {
        const Simplex& d = S.simplex(n, i);
        const Cell& sig = X.cells[d.carrier];
        int f = subface(S, n, i, front), b = subface(S, n, i, back);
        int tau = S.simplex(q, f).carrier;
        const Embedding& e = *S.local_faces(d.carrier)[d.flag[q]].emb;
        const MultiTangent& Ft = X.F(tau, p);
        IntVec a(Ft.rank());
        bool any = false;
        for (int j = 0; j < Ft.rank(); ++j) {
            a[j] = alpha[Kc.offset[q][f] + j];
            any = any || a[j] != 0;
        }
        if (!any) continue;
        // functional on wedge^p of the carrier chart
        IntVec l = times(times(a, Ft.R), compound(X.tangent_pullback_inv(tau, e.Ainv), p));
        IntVec w = contract(l, p, oriented(d, sig), n, r);
        add_to(out, Kb.offset[n - q][b], coords_in(X.F(d.carrier, n - p), w), sig.weight);
    }
    return out;
}

namespace {

int apex_of(const TropicalSpace& X) {
    int apex = -1;
    for (int c = 0; c < int(X.cells.size()); ++c)
        if (X.cells[c].compact()) {
            if (apex >= 0) throw std::invalid_argument("fan expected: more than one compact cell");
            apex = c;
        }
    if (apex < 0) throw std::invalid_argument("fan expected: no compact cell");
    return apex;
}

}  // namespace

IntVec cap_fundamental_apex(const TropicalSpace& X, int p, const IntVec& alpha) {
    int n = X.dim(), r = X.chart_rank();
    int apex = apex_of(X);
    const MultiTangent& F0 = X.F(apex, p);
    if (int(alpha.size()) != F0.rank()) throw std::invalid_argument("cap_fundamental_apex: size mismatch");
    auto K = build_complex(X, n - p, Variant::BorelMoore);
    IntVec out(K.dims[n]);
    for (auto& e : X.embeddings(apex)) {
        const Cell& sig = X.cells[e.cell];
        if (sig.dim != n) continue;
        IntVec l = times(times(alpha, F0.R), compound(X.tangent_pullback_inv(apex, e.Ainv), p));
        IntVec w = contract(l, p, sig.lambda, n, r);
        add_to(out, K.offset[n][e.cell], coords_in(X.F(e.cell, n - p), w), sig.weight);
    }
    return out;
}

// ---------------------------------------------------------------- Chern cochain

namespace {

// least squares free exact solve; nullopt if inconsistent
std::optional<RatVec> solve(std::vector<RatVec> A, RatVec y, int cols) {
    int m = int(A.size());
    for (int i = 0; i < m; ++i) A[i].push_back(y[i]);
    int row = 0;
    std::vector<int> pivcol;
    for (int c = 0; c < cols && row < m; ++c) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (A[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[row]);
        Rat inv = 1 / A[row][c];
        for (auto& x : A[row]) x *= inv;
        for (int i = 0; i < m; ++i)
            if (i != row && A[i][c] != 0) {
                Rat k = A[i][c];
                for (int j = 0; j <= cols; ++j) A[i][j] -= k * A[row][j];
            }
        pivcol.push_back(c);
        ++row;
    }
    for (int i = row; i < m; ++i)
        if (A[i][cols] != 0) return std::nullopt;
    if (row < cols) throw std::domain_error("chern_cochain: slope not determined on the edge star");
    RatVec x(cols);
    for (int i = 0; i < row; ++i) x[pivcol[i]] = A[i][cols];
    return x;
}

}  // namespace

IntVec chern_cochain(const StratifiedSimplicialStructure& S, const CartierDivisor& D) {
    const TropicalSpace& X = S.space();
    if (D.local.size() != X.cells.size()) throw std::invalid_argument("chern_cochain: one local function per cell expected");
    int n = S.dim();
    auto K = build_complex(S, 1, Variant::Cochain);
    std::vector<std::vector<RatVec>> rows(S.count(1));
    std::vector<RatVec> rhs(S.count(1));
    for (int i = 0; i < S.count(n); ++i) {
        const Simplex& d = S.simplex(n, i);
        const auto& lf = S.local_faces(d.carrier);
        std::vector<IntVec> slope(n + 1);
        for (int k = 0; k <= n; ++k) {
            const Embedding& e = *lf[d.flag[k]].emb;
            slope[k] = affine_piece(X, D.local[d.vertex_cells[k]], e.Ainv, e.b, d.carrier).slope;
        }
        const LatticeBasis& L = X.tangent(d.carrier);
        for (int a = 0; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                int edge = subface(S, n, i, {a, b});
                int cb = d.vertex_cells[b];
                const Embedding& e = *lf[d.flag[b]].emb;
                const MultiTangent& F = X.F(cb, 1);
                IntMatrix M = F.R * X.tangent_pullback_inv(cb, e.Ainv);
                for (auto& u : L.basis) {
                    IntVec c = M * u;
                    RatVec row(c.begin(), c.end());
                    rows[edge].push_back(row);
                    rhs[edge].push_back(dot(slope[a], u) - dot(slope[b], u));
                }
            }
    }
    IntVec out(K.dims[1]);
    for (int e = 0; e < S.count(1); ++e) {
        int cb = S.simplex(1, e).carrier;
        int k = X.F(cb, 1).rank();
        if (rows[e].empty()) continue;
        auto x = solve(rows[e], rhs[e], k);
        if (!x) throw std::domain_error("chern_cochain: incompatible cover on an edge star");
        for (int j = 0; j < k; ++j) {
            if ((*x)[j].get_den() != 1) throw std::domain_error("chern_cochain: non-integral transition slope");
            out[K.offset[1][e] + j] = (*x)[j].get_num();
        }
    }
    return out;
}

// ---------------------------------------------------------------- duality verdicts

namespace {

IntVec class_vector(const ClassCoords& c) {
    IntVec v(c.torsion.begin(), c.torsion.end());
    v.insert(v.end(), c.free.begin(), c.free.end());
    return v;
}

PDResult verdict(int p, int q, const HomologyComputation& Hc, int qc, const HomologyComputation& Hb, int qb,
                 const std::function<IntVec(const IntVec&)>& cap) {
    PDResult R;
    R.p = p;
    R.q = q;
    const auto& G = Hc.group(qc);
    const auto& B = Hb.group(qb);
    R.source = G.str();
    R.target = B.str();
    std::vector<IntVec> cols;
    for (auto& g : G.torsion_gens) cols.push_back(class_vector(Hb.class_of(qb, cap(g))));
    for (auto& g : G.free_gens) cols.push_back(class_vector(Hb.class_of(qb, cap(g))));
    int rows = int(B.torsion.size()) + B.betti;
    R.matrix = IntMatrix::from_cols(cols, rows);
    if (G.betti != B.betti || G.torsion != B.torsion) {
        R.reason = "groups differ";
        return R;
    }
    int t = int(B.torsion.size()), f = B.betti;
    // free block: images of free generators in free coordinates
    IntMatrix Ff(f, f);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) Ff(i, j) = R.matrix(t + i, t + j);
    if (f > 0 && abs(determinant(Ff)) != 1) {
        R.reason = "free part not unimodular";
        return R;
    }
    // torsion images must generate the torsion group
    if (t > 0) {
        IntMatrix T(t, 2 * t);
        for (int i = 0; i < t; ++i) {
            for (int j = 0; j < t; ++j) T(i, j) = R.matrix(i, j);
            T(i, t + i) = B.torsion[i];
        }
        auto sf = smith_normal_form(T);
        bool ones = sf.rank == t;
        for (auto& d : sf.diag) ones = ones && d == 1;
        if (!ones) {
            R.reason = "torsion part not onto";
            return R;
        }
    }
    R.iso = true;
    R.reason = "isomorphism";
    return R;
}

}  // namespace

PDResult pd_check(const StratifiedSimplicialStructure& S, int p, int q) {
    int n = S.dim();
    HomologyComputation Hc(build_complex(S, p, Variant::Cochain));
    HomologyComputation Hb(build_complex(S, n - p, Variant::Standard));
    return verdict(p, q, Hc, q, Hb, n - q, [&](const IntVec& a) { return cap_fundamental(S, p, q, a); });
}

PDResult pd_check_fan(const TropicalSpace& X, int p, int q) {
    int n = X.dim();
    apex_of(X);
    HomologyComputation Hc(build_complex(X, p, Variant::Cochain));
    HomologyComputation Hb(build_complex(X, n - p, Variant::BorelMoore));
    if (q != 0) {
        // only the apex carries cochains; both sides must vanish
        PDResult R;
        R.p = p;
        R.q = q;
        R.source = Hc.group(q).str();
        R.target = Hb.group(n - q).str();
        R.iso = Hc.group(q).betti == 0 && Hc.group(q).torsion.empty() && Hb.group(n - q).betti == 0 &&
                Hb.group(n - q).torsion.empty();
        R.reason = R.iso ? "both zero" : "groups differ";
        return R;
    }
    return verdict(p, q, Hc, 0, Hb, n, [&](const IntVec& a) { return cap_fundamental_apex(X, p, a); });
}

LefschetzResult lefschetz_diagram_check(const StratifiedSimplicialStructure& S, const CartierDivisor& D) {
    const TropicalSpace& X = S.space();
    int n = S.dim();
    LefschetzResult R;
    R.div = divisor(X, D);
    IntVec c1 = chern_cochain(S, D);
    auto Kc = build_complex(S, 1, Variant::Cochain);
    R.cocycle = true;
    for (auto& e : Kc.d[1].apply(c1)) R.cocycle = R.cocycle && e == 0;
    HomologyComputation H(build_complex(S, n - 1, Variant::Standard));
    IntVec lhs = cycle_chain(S, R.div);
    IntVec rhs = cap_fundamental(S, 1, 1, c1);
    if (!H.is_cycle(n - 1, lhs)) throw std::domain_error("lefschetz: divisor cycle not closed");
    R.divisor_class = H.class_of(n - 1, lhs);
    R.chern_class = H.class_of(n - 1, rhs);
    R.ok = R.cocycle && R.divisor_class == R.chern_class;
    return R;
}

}  // namespace trop

// ---------------------------------------------------------------- extension over a polytope

namespace trop {

namespace {

// unique solution of a square system, if any
std::optional<RatVec> solve_square(std::vector<RatVec> A, RatVec y) {
    int n = int(A.size());
    for (int i = 0; i < n; ++i) A[i].push_back(y[i]);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(A[piv], A[c]);
        Rat inv = 1 / A[c][c];
        for (auto& x : A[c]) x *= inv;
        for (int i = 0; i < n; ++i)
            if (i != c && A[i][c] != 0) {
                Rat k = A[i][c];
                for (int j = c; j <= n; ++j) A[i][j] -= k * A[c][j];
            }
    }
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[i] = A[i][n];
    return x;
}

IntVec integral_primitive(const RatVec& v) {
    Int den = 1;
    for (auto& x : v) den = lcm(den, Int(x.get_den()));
    IntVec w;
    for (auto& x : v) w.push_back(Int(x * den));
    return primitive(w);
}

Rat ratdot(const IntVec& a, const RatVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * x[i];
    return s;
}

// P(M x + c)
TropPoly compose(const TropPoly& P, const IntMatrix& M, const RatVec& c) {
    TropPoly Q;
    for (std::size_t t = 0; t < P.size(); ++t) Q.add(times(P.slopes[t], M), P.consts[t] + ExtRat(ratdot(P.slopes[t], c)));
    return Q;
}

PLFunction compose(const PLFunction& f, const IntMatrix& M, const RatVec& c) {
    PLFunction g;
    g.r = f.r;
    g.plus = compose(f.plus, M, c);
    g.minus = compose(f.minus, M, c);
    return g;
}

TropPoly unite(TropPoly a, const TropPoly& b) {
    for (std::size_t t = 0; t < b.size(); ++t) a.add(b.slopes[t], b.consts[t]);
    return a;
}

TropPoly zero_poly(int r) {
    TropPoly P;
    P.add(IntVec(r, 0), ExtRat(0));
    return P;
}

PLFunction pointwise_max(const std::vector<PLFunction>& fs, int r) {
    PLFunction h;
    h.r = r;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        TropPoly term = fs[i].plus.empty() ? zero_poly(r) : fs[i].plus;
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) term = product(term, fs[j].minus);
        h.plus = unite(std::move(h.plus), term);
        h.minus = product(h.minus, fs[i].minus);
    }
    return h;
}

void require_rational(const TropPoly& P) {
    for (auto& c : P.consts)
        if (!c.is_rational()) throw std::invalid_argument("extend_pl: formal constants are not supported");
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// break hyperplanes <a, x> = b of a polynomial
void breaks(const TropPoly& P, std::set<std::pair<IntVec, Rat>>& out) {
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j) {
            IntVec a = P.slopes[i];
            for (std::size_t k = 0; k < a.size(); ++k) a[k] -= P.slopes[j][k];
            Int g = content(a);
            if (g == 0) continue;
            Rat b = P.consts[j].rational() - P.consts[i].rational();
            for (auto& x : a) x /= g;
            b /= Rat(g);
            for (auto& x : a)
                if (x != 0) {
                    if (x < 0) {
                        for (auto& y : a) y = -y;
                        b = -b;
                    }
                    break;
                }
            out.insert({a, b});
        }
}

}  // namespace

Polytope Polytope::from_vertices(const std::vector<RatVec>& verts) {
    if (verts.empty()) throw std::invalid_argument("polytope: no vertices");
    Polytope P;
    int r = int(verts[0].size());
    for (auto& v : verts)
        if (std::find(P.verts.begin(), P.verts.end(), v) == P.verts.end()) P.verts.push_back(v);
    std::vector<RatVec> diffs;
    for (auto& v : P.verts) {
        RatVec d(r);
        for (int i = 0; i < r; ++i) d[i] = v[i] - P.verts[0][i];
        diffs.push_back(d);
    }
    if (rank_rational(diffs) != r) throw std::invalid_argument("polytope: not full dimensional");
    int m = int(P.verts.size());
    std::set<std::pair<IntVec, Rat>> seen;
    for_each_subset(m, r, [&](const std::vector<int>& sub) {
        std::vector<RatVec> rows;
        for (std::size_t k = 1; k < sub.size(); ++k) {
            RatVec d(r);
            for (int i = 0; i < r; ++i) d[i] = P.verts[sub[k]][i] - P.verts[sub[0]][i];
            rows.push_back(d);
        }
        auto ker = kernel_basis_rational(rows, r);
        if (ker.size() != 1) return;
        IntVec u = integral_primitive(ker[0]);
        Rat off = ratdot(u, P.verts[sub[0]]);
        bool ge = true, le = true;
        for (auto& v : P.verts) {
            Rat s = ratdot(u, v);
            ge = ge && s >= off;
            le = le && s <= off;
        }
        if (le && !ge) {
            for (auto& x : u) x = -x;
            off = -off;
            ge = true;
        }
        if (ge && seen.insert({u, off}).second) P.facets.push_back({u, off});
    });
    return P;
}

bool Polytope::contains(const RatVec& x) const {
    for (auto& [u, off] : facets)
        if (ratdot(u, x) < off) return false;
    return true;
}

PLFunction extend_pl(const Polytope& P, const std::vector<PLFunction>& facet_functions) {
    int r = int(P.verts.at(0).size());
    int nf = int(P.facets.size());
    if (int(facet_functions.size()) != nf) throw std::invalid_argument("extend_pl: one function per facet");
    for (auto& f : facet_functions) {
        require_rational(f.plus);
        require_rational(f.minus);
    }
    // h_t o pi_t, with pi_t(x) = x - dist(x) v_t and <u_t, v_t> = 1
    std::vector<PLFunction> lifted;
    for (int t = 0; t < nf; ++t) {
        auto& [u, off] = P.facets[t];
        IntVec v(r, 0);
        auto sn = smith_normal_form(IntMatrix::from_rows({u}, r));
        for (int i = 0; i < r; ++i) v[i] = sn.U(0, 0) * sn.V(i, 0);
        if (ratdot(u, RatVec(v.begin(), v.end())) != 1) throw std::logic_error("extend_pl: bad transversal");
        IntMatrix M(r, r);
        RatVec c(r);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) M(i, j) = Int(i == j) - v[i] * u[j];
            c[i] = Rat(v[i]) * off;
        }
        lifted.push_back(compose(facet_functions[t], M, c));
    }
    // candidate points: vertices of the arrangement of all break hyperplanes and facet planes, on the boundary
    std::set<std::pair<IntVec, Rat>> planes;
    for (auto& [u, off] : P.facets) planes.insert({u, off});
    for (int t = 0; t < nf; ++t) {
        breaks(facet_functions[t].plus, planes);
        breaks(facet_functions[t].minus, planes);
        breaks(lifted[t].plus, planes);
        breaks(lifted[t].minus, planes);
    }
    std::vector<std::pair<IntVec, Rat>> pl(planes.begin(), planes.end());
    std::vector<std::pair<RatVec, Rat>> cands;  // point, boundary value
    std::set<RatVec> done;
    for_each_subset(int(pl.size()), r, [&](const std::vector<int>& sub) {
        std::vector<RatVec> A;
        RatVec y;
        for (int k : sub) {
            A.push_back(RatVec(pl[k].first.begin(), pl[k].first.end()));
            y.push_back(pl[k].second);
        }
        auto x = solve_square(A, y);
        if (!x || !P.contains(*x) || !done.insert(*x).second) return;
        std::optional<Rat> s;
        for (int t = 0; t < nf; ++t)
            if (ratdot(P.facets[t].first, *x) == P.facets[t].second) {
                Rat val = facet_functions[t].eval(*x);
                if (s && *s != val) throw std::invalid_argument("extend_pl: boundary data not continuous");
                s = val;
            }
        if (s) cands.push_back({*x, *s});
    });
    std::vector<PLFunction> pieces;
    for (int t = 0; t < nf; ++t) {
        auto& [u, off] = P.facets[t];
        std::optional<Rat> best;
        for (auto& [x, s] : cands) {
            Rat d = ratdot(u, x) - off;
            if (d <= 0) continue;
            Rat q = (s - lifted[t].eval(x)) / d;
            if (!best || q < *best) best = q;
        }
        Int m = 0;
        if (best) mpz_fdiv_q(m.get_mpz_t(), best->get_num_mpz_t(), best->get_den_mpz_t());
        IntVec mu = u;
        for (auto& e : mu) e *= m;
        pieces.push_back(lifted[t] + PLFunction::affine(mu, ExtRat(-Rat(m) * off)));
    }
    return pointwise_max(pieces, r);
}

}  // namespace trop
