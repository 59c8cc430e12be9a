#include "trop/constructions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace trop {

namespace {

int nonzero_count(const IntVec& a) {
    int k = 0;
    for (auto& x : a) k += x != 0;
    return k;
}

IntVec unit4(int i) {
    IntVec e(4);
    e[i] = 1;
    return e;
}

IntVec plus(IntVec a, const IntVec& b, int s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

// integer v with <u, v> = 1 for primitive u
IntVec transversal(const IntVec& u) {
    int r = int(u.size());
    auto sf = smith_normal_form(IntMatrix::from_rows({u}, r));
    IntVec v(r);
    for (int i = 0; i < r; ++i) v[i] = sf.U(0, 0) * sf.V(i, 0);
    return v;
}

// rows of full rank chosen greedily
std::vector<int> independent_rows(const std::vector<RatVec>& M) {
    std::vector<int> keep;
    std::vector<RatVec> acc;
    for (std::size_t i = 0; i < M.size(); ++i) {
        acc.push_back(M[i]);
        if (rank_rational(acc) == int(acc.size()))
            keep.push_back(int(i));
        else
            acc.pop_back();
    }
    return keep;
}

}  // namespace

Quartic cone_quartic(std::vector<ExtRat> coeffs) {
    Quartic Q;
    Q.H = make_hypersurface(cone_triangulation_quartic(), true, std::move(coeffs));
    const auto& T = Q.H.T;
    Q.apex = T.index({1, 1, 1, 1});
    for (std::size_t m = 0; m < T.points.size(); ++m) {
        const IntVec& a = T.points[m];
        int nz = nonzero_count(a);
        if (nz == 4) continue;
        QuarticSlot s;
        s.a = a;
        s.type = nz == 1 ? SlotType::Vertex : nz == 2 ? SlotType::Edge : SlotType::FaceInterior;
        s.cell = Q.H.cell_of(0, {int(m), Q.apex});
        if (s.cell < 0) throw std::logic_error("cone_quartic: missing bounded 2-cell");
        int k = Q.H.chart[s.cell];
        IntVec u;
        for (int i = 0; i < 4; ++i)
            if (i != k) u.push_back(a[i] - 1);
        s.v = transversal(u);
        Q.slots.push_back(std::move(s));
    }
    return Q;
}

IntVec alpha_cycle(const Quartic& Q, const TropChainComplex& K, int slot) {
    const TropicalSpace& X = Q.H.X;
    const QuarticSlot& s = Q.slots.at(slot);
    std::vector<std::pair<int, IntVec>> terms;
    for (int fr : X.faces_of(s.cell)) {
        const FaceRel& f = X.faces[fr];
        IntVec w = X.face_inverse(fr) * s.v;
        for (auto& x : w) x *= f.eps;
        terms.push_back({f.child, w});
    }
    return cellular_chain(X, K, terms);
}

std::vector<RatVec> quartic_weight_matrix(const Quartic& Q, bool printed) {
    const auto& T = Q.H.T;
    int N = int(T.points.size());
    std::vector<RatVec> M;
    for (auto& s : Q.slots) {
        RatVec row(N);
        if (s.type == SlotType::Edge) {
            std::vector<int> nz;
            for (int i = 0; i < 4; ++i)
                if (s.a[i] != 0) nz.push_back(i);
            IntVec v = plus(unit4(nz[0]), unit4(nz[1]), -1);
            if (printed) {
                row[T.index(plus(s.a, v))] += 1;
                row[T.index(plus(s.a, v, -1))] -= 1;
            } else {
                row[T.index(s.a)] += 2;
                row[T.index(plus(s.a, v))] -= 1;
                row[T.index(plus(s.a, v, -1))] -= 1;
            }
        } else if (s.type == SlotType::Vertex) {
            int i = 0;
            while (s.a[i] == 0) ++i;
            int sg = printed ? 1 : -1;
            for (int j = 0; j < 4; ++j)
                if (j != i) row[T.index(plus(plus(s.a, unit4(i), -1), unit4(j)))] += sg;
            if (printed) {
                row[Q.apex] -= 3;
            } else {
                row[T.index(s.a)] += 2;
                row[Q.apex] += 1;
            }
        } else {
            continue;
        }
        M.push_back(row);
    }
    return M;
}

std::vector<ExtRat> quartic_wave_weights(const Quartic& Q, const std::vector<ExtRat>& coeffs, bool printed) {
    if (coeffs.size() != Q.H.T.points.size()) throw std::invalid_argument("quartic_wave_weights: missing coefficient");
    auto M = quartic_weight_matrix(Q, printed);
    std::vector<ExtRat> w;
    std::size_t row = 0;
    for (auto& s : Q.slots) {
        ExtRat x;
        if (s.type != SlotType::FaceInterior) {
            for (std::size_t m = 0; m < coeffs.size(); ++m)
                if (M[row][m] != 0) x += coeffs[m] * M[row][m];
            ++row;
        }
        w.push_back(x);
    }
    return w;
}

PicardDesign picard_designer(int rho) {
    if (rho < 1 || rho > 19) throw std::invalid_argument("picard_designer: rank must lie in 1..19");
    Quartic Q = cone_quartic();
    const auto& T = Q.H.T;
    int N = int(T.points.size());
    auto M = quartic_weight_matrix(Q);
    auto basis = independent_rows(M);
    if (basis.size() != 19) throw std::logic_error("picard_designer: weight map does not have rank 19");
    // base weights are rational; keep one row with a nonzero base value free of formals
    std::vector<ExtRat> base;
    for (auto& h : T.heights) base.push_back(ExtRat(-h));
    auto w0 = quartic_wave_weights(Q, base);
    std::vector<int> rows_of_slots;
    for (std::size_t i = 0; i < Q.slots.size(); ++i)
        if (Q.slots[i].type != SlotType::FaceInterior) rows_of_slots.push_back(int(i));
    int anchor = -1;
    for (int b : basis)
        if (!w0[rows_of_slots[b]].is_zero()) {
            anchor = b;
            break;
        }
    if (anchor < 0) throw std::logic_error("picard_designer: base weights vanish");
    std::vector<int> targets;
    for (int b : basis)
        if (b != anchor && int(targets.size()) < 19 - rho) targets.push_back(b);
    // right inverse of the basis rows on pivot columns
    std::vector<RatVec> B;
    for (int b : basis) B.push_back(M[b]);
    std::vector<int> cols;
    {
        std::vector<RatVec> acc;
        for (int m = 0; m < N && int(cols.size()) < 19; ++m) {
            RatVec col;
            for (auto& r : B) col.push_back(r[m]);
            acc.push_back(col);
            if (rank_rational(acc) == int(acc.size()))
                cols.push_back(m);
            else
                acc.pop_back();
        }
    }
    PicardDesign D;
    D.rho = rho;
    D.coeffs = base;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        // B[:, cols] d = e_target
        std::vector<RatVec> A(19, RatVec(20));
        for (int r = 0; r < 19; ++r) {
            for (int j = 0; j < 19; ++j) A[r][j] = B[r][cols[j]];
            A[r][19] = basis[r] == targets[i] ? 1 : 0;
        }
        for (int c = 0; c < 19; ++c) {
            int piv = c;
            while (A[piv][c] == 0) ++piv;
            std::swap(A[piv], A[c]);
            Rat inv = 1 / A[c][c];
            for (auto& x : A[c]) x *= inv;
            for (int r = 0; r < 19; ++r)
                if (r != c && A[r][c] != 0) {
                    Rat k = A[r][c];
                    for (int j = 0; j < 20; ++j) A[r][j] -= k * A[c][j];
                }
        }
        for (int j = 0; j < 19; ++j)
            if (A[j][19] != 0) D.coeffs[cols[j]] += ExtRat::formal(int(i) + 1, A[j][19]);
    }
    D.formal_count = int(targets.size());
    return D;
}

Hypersurface floor_quartic(bool formal_floor) {
    // slice-wise generic perturbation of a convex quadric; floors kept apart by 100 m3^2
    auto pts = simplex_points(3, 4);
    std::mt19937 rng(0);
    std::map<IntVec, Rat> eps;
    std::vector<Rat> h;
    for (auto& m : pts) {
        IntVec key{m[1], m[2], m[3]};
        if (!eps.count(key)) {
            Rat e(long(rng() % 81) - 40, 97);
            e.canonicalize();
            eps[key] = e;
        }
        Rat x(m[1]), y(m[2]);
        h.push_back(x * x + y * y + x * y + eps[key] + Rat(100) * Rat(m[3] * m[3]));
    }
    auto T = regular_triangulation(3, 4, h);
    std::vector<ExtRat> c;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ExtRat x(-h[i]);
        if (formal_floor) x -= ExtRat::formal(1, Rat(pts[i][3] * pts[i][3]));
        c.push_back(x);
    }
    return make_hypersurface(T, true, c);
}

}  // namespace trop
