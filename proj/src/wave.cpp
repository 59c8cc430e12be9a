#include "trop/wave.hpp"

#include <stdexcept>

namespace trop {

namespace {

ExtVec mul(const IntMatrix& A, const ExtVec& v) {
    ExtVec r(A.rows());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0) r[i] += v[j] * Rat(A(i, j));
    return r;
}

// point of the carrier chart pulled back to the face chart
XPoint pull_back(const SimplexFace& f, const XPoint& x) {
    ExtVec c = mul(f.Ainv, f.b);
    for (auto& e : c) e = -e;
    return apply_affine(f.Ainv, c, x);
}

// y - x with the sedentary coordinates of `sed` dropped
ExtVec projected_diff(const XPoint& y, const XPoint& x, const std::vector<int>& sed) {
    int r = y.size();
    std::vector<char> kill(r, 0);
    for (int j : sed) kill[j] = 1;
    ExtVec v(r);
    for (int j = 0; j < r; ++j) {
        if (kill[j]) continue;
        if (y.inf[j] || x.inf[j]) throw std::domain_error("wave: infinite coordinate outside the sedentarity");
        v[j] = y.x[j] - x.x[j];
    }
    return v;
}

// coordinates of an extended multivector in the basis of F_p
ExtVec in_basis(const MultiTangent& F, const ExtVec& w) {
    ExtVec c(F.rank());
    for (int i = 0; i < F.R.rows(); ++i)
        for (int j = 0; j < F.R.cols(); ++j)
            if (F.R(i, j) != 0) c[i] += w[j] * Rat(F.R(i, j));
    IntMatrix B = F.L.matrix();
    if (mul(B, c) != w) throw std::domain_error("wave: vector outside F_p");
    return c;
}

SparseExt to_ext(const SparseInt& m) {
    SparseExt e(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j)
        for (auto& [i, v] : m.col[j]) e.col[j].emplace_back(i, ExtRat(v));
    return e;
}

bool same(SparseExt a, SparseExt b) {
    a.normalize();
    b.normalize();
    return a.col == b.col;
}

SparseExt negated(SparseExt a) {
    for (auto& c : a.col)
        for (auto& e : c) e.second = -e.second;
    return a;
}

}  // namespace

ExtVec wave_vector(const StratifiedSimplicialStructure& S, int q1, int i) {
    const TropicalSpace& X = S.space();
    const Simplex& d = S.simplex(q1, i);
    const SimplexFace& f = d.faces.at(q1);
    const Simplex& face = S.simplex(q1 - 1, f.simplex);
    XPoint y = pull_back(f, d.verts.back());
    return projected_diff(y, face.verts.back(), X.cells[face.carrier].sed);
}

ExtVec WaveOperator::chain(const IntVec& z) const { return hat.apply(to_ext(z)); }

ExtVec WaveOperator::cochain(const IntVec& a) const { return hat.transpose().apply(to_ext(a)); }

WaveOperator wave_chain(const StratifiedSimplicialStructure& S, int p, int q) {
    const TropicalSpace& X = S.space();
    if (p < 1 || q < 0 || q + 1 > S.dim()) throw std::invalid_argument("wave_chain: degree out of range");
    int r = X.chart_rank();
    WaveOperator W;
    W.p = p;
    W.q = q;
    W.src = build_complex(S, p - 1, Variant::Standard);
    W.dst = build_complex(S, p, Variant::Standard);
    W.hat = SparseExt(W.dst.dims[q], W.src.dims[q + 1]);
    for (int i = 0; i < S.count(q + 1); ++i) {
        const Simplex& d = S.simplex(q + 1, i);
        const SimplexFace& f = d.faces[q + 1];
        int tau = S.simplex(q, f.simplex).carrier;
        ExtVec v = wave_vector(S, q + 1, i);
        IntMatrix push = compound(X.tangent_pullback_inv(tau, f.Ainv), p - 1) * X.F(d.carrier, p - 1).L.matrix();
        const MultiTangent& Ft = X.F(tau, p);
        for (int c = 0; c < push.cols(); ++c) {
            ExtVec w = wedge_ext(to_ext(push.col(c)), p - 1, v, r);
            ExtVec co = in_basis(Ft, w);
            for (std::size_t t = 0; t < co.size(); ++t)
                W.hat.push(W.dst.offset[q][f.simplex] + int(t), W.src.offset[q + 1][i] + c, co[t]);
        }
    }
    W.hat.normalize();
    return W;
}

ExtVec free_coords_ext(const HomologyComputation& H, int q, const ExtVec& z) {
    int layers = 0;
    for (auto& e : z) layers = std::max(layers, e.dim());
    ExtVec out(H.group(q).betti);
    for (int l = 0; l <= layers; ++l) {
        RatVec zl(z.size());
        bool any = false;
        for (std::size_t i = 0; i < z.size(); ++i) {
            zl[i] = z[i].coef(l);
            any = any || zl[i] != 0;
        }
        if (!any) continue;
        RatVec c = H.free_coords(q, zl);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) out[i] += ExtRat::formal(l, c[i]);
    }
    return out;
}

namespace {

WaveMatrix assemble(const std::vector<ExtVec>& cols, int rows) {
    WaveMatrix M;
    M.cols = int(cols.size());
    M.rows.assign(rows, ExtVec(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) M.rows[i][j] = cols[j][i];
    return M;
}

}  // namespace

WaveMatrix wave_on_homology(const StratifiedSimplicialStructure& S, int p, int q) {
    WaveOperator W = wave_chain(S, p, q);
    HomologyComputation src(W.src), dst(W.dst);
    std::vector<ExtVec> cols;
    for (auto& g : src.group(q + 1).free_gens) cols.push_back(free_coords_ext(dst, q, W.chain(g)));
    return assemble(cols, dst.group(q).betti);
}

WaveMatrix wave_on_cohomology(const StratifiedSimplicialStructure& S, int p, int q) {
    WaveOperator W = wave_chain(S, p, q);
    HomologyComputation src(build_complex(S, p, Variant::Cochain));
    HomologyComputation dst(build_complex(S, p - 1, Variant::Cochain));
    std::vector<ExtVec> cols;
    for (auto& g : src.group(q).free_gens) cols.push_back(free_coords_ext(dst, q + 1, W.cochain(g)));
    return assemble(cols, dst.group(q + 1).betti);
}

PicardResult picard_rank(const StratifiedSimplicialStructure& S) {
    if (S.dim() < 2) throw std::invalid_argument("picard_rank: needs dimension at least 2");
    PicardResult P;
    P.matrix = wave_on_cohomology(S, 1, 1);
    P.h11 = P.matrix.cols;
    P.h02 = int(P.matrix.rows.size());
    P.kernel = kernel_basis_extended(P.matrix.rows, P.matrix.cols);
    P.rank = int(P.kernel.size());
    return P;
}

ExtVec cech_delta_via_lifts(const StratifiedSimplicialStructure& S, int q, const IntVec& alpha) {
    const TropicalSpace& X = S.space();
    if (q < 0 || q + 1 > S.dim()) throw std::invalid_argument("cech_delta_via_lifts: degree out of range");
    auto K = build_complex(S, 1, Variant::Cochain);
    if (int(alpha.size()) != K.dims[q]) throw std::invalid_argument("cech_delta_via_lifts: size mismatch");
    for (auto& e : K.d[q].apply(alpha))
        if (e != 0) throw std::invalid_argument("cech_delta_via_lifts: not a cocycle");
    int r = X.chart_rank();
    ExtVec out(S.count(q + 1));
    for (int i = 0; i < S.count(q + 1); ++i) {
        const Simplex& d = S.simplex(q + 1, i);
        // a point of the affine span of the simplex, ideal vertices pushed one unit out
        const XPoint& last = d.verts.back();
        XPoint y = last;
        for (int j = 0; j < r; ++j) {
            if (last.inf[j]) continue;
            ExtRat s;
            for (int k = 0; k <= q; ++k) s += d.verts[k].inf[j] ? ExtRat(-1) : d.verts[k].x[j] - last.x[j];
            y.x[j] += s / Rat(q + 2);
        }
        ExtRat total;
        for (int k = 0; k <= q + 1; ++k) {
            const SimplexFace& f = d.faces[k];
            const Simplex& face = S.simplex(q, f.simplex);
            ExtVec w = projected_diff(pull_back(f, y), face.verts.back(), X.cells[face.carrier].sed);
            ExtVec c = in_basis(X.F(face.carrier, 1), w);
            ExtRat val;
            for (std::size_t t = 0; t < c.size(); ++t) val += c[t] * Rat(alpha[K.offset[q][f.simplex] + int(t)]);
            if (k % 2) total -= val;
            else total += val;
        }
        out[i] = total;
    }
    return out;
}

ChainMapSign wave_chain_map_sign(const StratifiedSimplicialStructure& S, int p, int q) {
    if (q < 1) throw std::invalid_argument("wave_chain_map_sign: q >= 1 required");
    WaveOperator hi = wave_chain(S, p, q), lo = wave_chain(S, p, q - 1);
    SparseExt L = to_ext(hi.dst.d[q]) * hi.hat;
    SparseExt R = lo.hat * to_ext(hi.src.d[q + 1]);
    ChainMapSign s;
    bool zero = L.nnz() == 0 && R.nnz() == 0;
    if (zero) {
        s.ok = true;
    } else if (same(L, R)) {
        s = {true, 1};
    } else if (same(L, negated(R))) {
        s = {true, -1};
    }
    return s;
}

}  // namespace trop
