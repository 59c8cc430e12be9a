#include "trop/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace trop {

namespace {

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

// Gauss-Jordan on a square rational system with several extended right hand sides; false if singular
bool solve_ext(std::vector<RatVec> A, std::vector<ExtVec>& rhs) {
    int n = int(A.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        std::swap(A[piv], A[c]);
        std::swap(rhs[piv], rhs[c]);
        Rat inv = 1 / A[c][c];
        for (auto& x : A[c]) x *= inv;
        for (auto& x : rhs[c]) x *= inv;
        for (int i = 0; i < n; ++i)
            if (i != c && A[i][c] != 0) {
                Rat k = A[i][c];
                for (int j = c; j < n; ++j) A[i][j] -= k * A[c][j];
                for (std::size_t j = 0; j < rhs[i].size(); ++j) rhs[i][j] -= rhs[c][j] * k;
            }
    }
    return true;
}

// affine function through the lifted points of a subset, in reduced coordinates m_1..m_n
std::optional<RatVec> interpolate(const RegularTriangulation& T, const std::vector<int>& sub) {
    int n = T.n;
    std::vector<RatVec> A;
    std::vector<ExtVec> rhs;
    for (int i : sub) {
        RatVec row{Rat(1)};
        for (int j = 1; j <= n; ++j) row.push_back(Rat(T.points[i][j]));
        A.push_back(row);
        rhs.push_back({ExtRat(T.heights[i])});
    }
    if (!solve_ext(A, rhs)) return std::nullopt;
    RatVec a;
    for (auto& r : rhs) a.push_back(r[0].rational());
    return a;
}

Rat affine_at(const RatVec& a, const IntVec& m) {
    Rat s = a[0];
    for (std::size_t j = 1; j < a.size(); ++j) s += a[j] * Rat(m[j]);
    return s;
}

std::vector<std::vector<int>> lower_simplices(const RegularTriangulation& T) {
    std::vector<std::vector<int>> out;
    int N = int(T.points.size());
    for_each_subset(N, T.n + 1, [&](const std::vector<int>& sub) {
        auto a = interpolate(T, sub);
        if (!a) return;
        bool below = true, touch = false;
        for (int p = 0; p < N && below; ++p) {
            if (std::binary_search(sub.begin(), sub.end(), p)) continue;
            Rat g = T.heights[p] - affine_at(*a, T.points[p]);
            if (g < 0) below = false;
            if (g == 0) touch = true;
        }
        if (!below) return;
        if (touch) throw std::invalid_argument("regular_triangulation: heights are not generic");
        out.push_back(sub);
    });
    return out;
}

}  // namespace

std::vector<IntVec> simplex_points(int n, int d) {
    std::vector<IntVec> out;
    IntVec m(n + 1);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            m[n] = left;
            out.push_back(m);
            return;
        }
        for (int k = left; k >= 0; --k) {
            m[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, d);
    return out;
}

int RegularTriangulation::index(const IntVec& m) const {
    auto it = std::find(points.begin(), points.end(), m);
    return it == points.end() ? -1 : int(it - points.begin());
}

Int RegularTriangulation::volume(const std::vector<int>& s) const {
    IntMatrix M(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) M(i - 1, j - 1) = points[s[i]][j] - points[s[0]][j];
    Int v = determinant(M);
    return v < 0 ? Int(-v) : v;
}

bool RegularTriangulation::primitive() const {
    for (auto& s : simplices)
        if (volume(s) != 1) return false;
    return true;
}

bool RegularTriangulation::regular() const {
    try {
        auto mine = simplices;
        for (auto& s : mine) std::sort(s.begin(), s.end());
        std::sort(mine.begin(), mine.end());
        auto hull = lower_simplices(*this);
        std::sort(hull.begin(), hull.end());
        return hull == mine;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

RegularTriangulation regular_triangulation(int n, int d, const std::vector<Rat>& heights) {
    RegularTriangulation T;
    T.n = n;
    T.d = d;
    T.points = simplex_points(n, d);
    if (heights.size() != T.points.size()) throw std::invalid_argument("regular_triangulation: one height per point");
    T.heights = heights;
    T.simplices = lower_simplices(T);
    Int total = 0;
    for (auto& s : T.simplices) total += T.volume(s);
    Int full = 1;
    for (int i = 1; i <= n; ++i) full *= d;
    if (total != full) throw std::logic_error("regular_triangulation: simplices do not cover the polytope");
    return T;
}

RegularTriangulation cone_triangulation_quartic() {
    auto pts = simplex_points(3, 4);
    std::vector<Rat> h;
    for (auto& m : pts) {
        bool inner = true;
        Int s = 0;
        for (auto& x : m) {
            inner = inner && x > 0;
            s += x * x;
        }
        h.push_back(inner ? Rat(-16) : Rat(s));
    }
    return regular_triangulation(3, 4, h);
}

// ---------------------------------------------------------------- dual complex

namespace {

// regions: also the n-cells dual to single points (the subdivision of R^n or TP^n induced by the polynomial)
Hypersurface dual_complex(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs, bool regions) {
    const int n = T.n;
    const int N = int(T.points.size());
    if (coeffs.empty())
        for (auto& h : T.heights) coeffs.push_back(ExtRat(-h));
    if (int(coeffs.size()) != N) throw std::invalid_argument("hypersurface: one coefficient per lattice point");

    // all faces of dimension >= 1
    std::set<std::vector<int>> faces;
    for (auto& s : T.simplices) {
        int k = int(s.size());
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            if (__builtin_popcount(mask) < (regions ? 1 : 2)) continue;
            std::vector<int> f;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) f.push_back(s[i]);
            std::sort(f.begin(), f.end());
            faces.insert(f);
        }
    }
    auto J = [&](const std::vector<int>& s) {
        std::uint32_t z = 0;
        for (int j = 0; j <= n; ++j) {
            bool all = true;
            for (int m : s) all = all && T.points[m][j] == 0;
            if (all) z |= 1u << j;
        }
        return z;
    };
    auto chart = [&](const std::vector<int>& s) {
        if (!compactify) return 0;
        std::uint32_t z = J(s);
        for (int j = 0; j <= n; ++j)
            if (!(z >> j & 1)) return j;
        throw std::logic_error("hypersurface: face inside every coordinate hyperplane");
    };
    // chart coordinate of homogeneous index i in chart k
    auto cidx = [](int i, int k) { return i < k ? i : i - 1; };

    struct Key {
        std::uint32_t S;
        std::vector<int> s;
        bool operator<(const Key& o) const { return std::tie(S, s) < std::tie(o.S, o.s); }
    };
    std::map<Key, int> id;
    std::vector<Key> keys;
    Hypersurface H;
    H.T = T;
    H.compact = compactify;
    H.coeffs = coeffs;
    std::vector<int>& charts = H.chart;
    TropicalSpace& X = H.X;

    // vertex (S, tau) in chart k
    auto vertex = [&](std::uint32_t S, const std::vector<int>& tau, int k) {
        std::vector<int> free;
        for (int j = 0; j <= n; ++j)
            if (j != k && !(S >> j & 1)) free.push_back(j);
        std::vector<RatVec> A;
        std::vector<ExtVec> rhs;
        for (std::size_t i = 1; i < tau.size(); ++i) {
            RatVec row;
            for (int j : free) row.push_back(Rat(T.points[tau[i]][j] - T.points[tau[0]][j]));
            A.push_back(row);
            rhs.push_back({coeffs[tau[0]] - coeffs[tau[i]]});
        }
        if (A.size() != free.size() || !solve_ext(A, rhs)) throw std::logic_error("hypersurface: singular vertex system");
        XPoint p(n);
        for (int j = 0; j <= n; ++j) {
            if (j == k) continue;
            if (S >> j & 1) p.inf[cidx(j, k)] = 1;
        }
        for (std::size_t t = 0; t < free.size(); ++t) p.x[cidx(free[t], k)] = rhs[t][0];
        return p;
    };

    // cells, ordered by dimension
    std::vector<Key> all;
    for (auto& s : faces) {
        std::uint32_t z = J(s);
        int ds = int(s.size()) - 1;
        for (std::uint32_t S = z;; S = (S - 1) & z) {
            int dim = n - __builtin_popcount(S) - ds;
            if (dim >= 0 && (compactify || S == 0)) all.push_back({S, s});
            if (S == 0) break;
        }
    }
    auto dim_of = [&](const Key& k) { return n - __builtin_popcount(k.S) - (int(k.s.size()) - 1); };
    std::stable_sort(all.begin(), all.end(), [&](const Key& a, const Key& b) { return dim_of(a) < dim_of(b); });

    for (auto& key : all) {
        int k = chart(key.s);
        Cell c;
        c.dim = dim_of(key);
        c.r = n;
        for (int j = 0; j <= n; ++j)
            if (key.S >> j & 1) c.sed.push_back(cidx(j, k));
        c.label = "S" + std::to_string(key.S) + ":";
        for (std::size_t i = 0; i < key.s.size(); ++i) c.label += (i ? "-" : "") + std::to_string(key.s[i]);
        // closure vertices: (S'', tau) with S <= S'' <= J(tau), tau >= s maximal in the face of S''
        std::set<XPoint> seen;
        for (auto& tau : faces) {
            if (!std::includes(tau.begin(), tau.end(), key.s.begin(), key.s.end())) continue;
            std::uint32_t zt = J(tau);
            if ((zt & key.S) != key.S) continue;
            std::uint32_t extra = zt & ~key.S;
            for (std::uint32_t E = extra;; E = (E - 1) & extra) {
                std::uint32_t S2 = key.S | E;
                if ((compactify || S2 == 0) && n - __builtin_popcount(S2) == int(tau.size()) - 1) {
                    XPoint p = vertex(S2, tau, k);
                    if (seen.insert(p).second) c.verts.push_back(p);
                }
                if (E == 0) break;
            }
        }
        if (!compactify) {
            std::uint32_t z = J(key.s);
            for (int j = 0; j <= n; ++j) {
                if (!(z >> j & 1)) continue;
                IntVec ray(n);
                if (j == 0)
                    for (auto& x : ray) x = 1;
                else
                    ray[cidx(j, 0)] = -1;
                c.rays.push_back(ray);
            }
        }
        if (regions && c.dim == n) c.weight = 1;
        if (!regions && c.dim == n - 1 && key.S == 0) {
            IntVec e;
            for (int j = 0; j <= n; ++j) e.push_back(T.points[key.s[1]][j] - T.points[key.s[0]][j]);
            c.weight = int(content(e).get_si());
        }
        id[key] = X.add_cell(std::move(c));
        keys.push_back(key);
        charts.push_back(k);
        H.sed.push_back(key.S);
        H.dual.push_back(key.s);
    }

    // chart change child (chart kc) -> parent (chart kp)
    auto chart_map = [&](int kc, int kp) {
        IntMatrix A(n, n);
        if (kc == kp) return IntMatrix::identity(n);
        for (int i = 0; i <= n; ++i) {
            if (i == kp) continue;
            if (i != kc) A(cidx(i, kp), cidx(i, kc)) += 1;
            A(cidx(i, kp), cidx(kp, kc)) -= 1;
        }
        return A;
    };

    for (std::size_t pi = 0; pi < keys.size(); ++pi) {
        const Key& P = keys[pi];
        int kp = charts[pi];
        // (a) same sedentarity, one more point
        for (int m = 0; m < N; ++m) {
            if (std::binary_search(P.s.begin(), P.s.end(), m)) continue;
            std::vector<int> s2 = P.s;
            s2.insert(std::upper_bound(s2.begin(), s2.end(), m), m);
            auto it = id.find({P.S, s2});
            if (it == id.end()) continue;
            // tangent direction of the parent along which the new term drops
            std::vector<int> free;
            for (int j = 0; j <= n; ++j)
                if (j != kp && !(P.S >> j & 1)) free.push_back(j);
            std::vector<RatVec> rows;
            for (std::size_t i = 1; i < P.s.size(); ++i) {
                RatVec row;
                for (int j : free) row.push_back(Rat(T.points[P.s[i]][j] - T.points[P.s[0]][j]));
                rows.push_back(row);
            }
            auto ker = kernel_basis_rational(rows, int(free.size()));
            RatVec dm;
            for (int j : free) dm.push_back(Rat(T.points[m][j] - T.points[P.s[0]][j]));
            RatVec u;
            for (auto& b : ker) {
                Rat s = 0;
                for (std::size_t j = 0; j < b.size(); ++j) s += b[j] * dm[j];
                if (s != 0) {
                    u = b;
                    if (s > 0)
                        for (auto& x : u) x = -x;
                    break;
                }
            }
            if (u.empty()) throw std::logic_error("hypersurface: no transversal direction");
            Int den = 1;
            for (auto& x : u) den = lcm(den, Int(x.get_den()));
            IntVec inward(n);
            for (std::size_t t = 0; t < free.size(); ++t) inward[cidx(free[t], kp)] = Int(u[t] * den);
            int ci = it->second;
            X.add_face_inward(ci, int(pi), chart_map(charts[ci], kp), ExtVec(n), inward);
        }
        // (b) one more sedentary coordinate
        if (!compactify) continue;
        std::uint32_t z = J(P.s);
        for (int j = 0; j <= n; ++j) {
            if (!(z >> j & 1) || (P.S >> j & 1)) continue;
            auto it = id.find({P.S | (1u << j), P.s});
            if (it == id.end()) continue;
            IntVec inward(n);
            inward[cidx(j, kp)] = 1;
            int ci = it->second;
            X.add_face_inward(ci, int(pi), chart_map(charts[ci], kp), ExtVec(n), inward);
        }
    }
    X.finalize();
    return H;
}

}  // namespace

Hypersurface make_hypersurface(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs) {
    return dual_complex(T, compactify, std::move(coeffs), false);
}

Hypersurface region_complex(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs) {
    return dual_complex(T, compactify, std::move(coeffs), true);
}

TropicalSpace hypersurface(const RegularTriangulation& T, bool compactify, std::vector<ExtRat> coeffs) {
    return make_hypersurface(T, compactify, std::move(coeffs)).X;
}

int Hypersurface::cell_of(std::uint32_t sed_set, std::vector<int> simplex) const {
    std::sort(simplex.begin(), simplex.end());
    for (std::size_t c = 0; c < dual.size(); ++c)
        if (sed[c] == sed_set && dual[c] == simplex) return int(c);
    return -1;
}

CartierDivisor section_divisor(const Hypersurface& H) {
    CartierDivisor D;
    int n = H.T.n;
    for (std::size_t c = 0; c < H.X.cells.size(); ++c) {
        TropPoly P;
        int k = H.chart[c];
        for (std::size_t m = 0; m < H.T.points.size(); ++m) {
            IntVec slope;
            for (int i = 0; i <= n; ++i)
                if (i != k) slope.push_back(H.T.points[m][i]);
            P.add(slope, H.coeffs[m]);
        }
        D.local.push_back(PLFunction::poly(P));
    }
    return D;
}

PLFunction hypersurface_polynomial(const RegularTriangulation& T, const std::vector<ExtRat>& coeffs) {
    if (!coeffs.empty() && coeffs.size() != T.points.size())
        throw std::invalid_argument("hypersurface_polynomial: one coefficient per lattice point");
    TropPoly P;
    for (std::size_t m = 0; m < T.points.size(); ++m) {
        IntVec slope(T.points[m].begin() + 1, T.points[m].end());
        P.add(slope, coeffs.empty() ? ExtRat(-T.heights[m]) : coeffs[m]);
    }
    return PLFunction::poly(P);
}

IntVec cellular_chain(const TropicalSpace& X, const TropChainComplex& K, const std::vector<std::pair<int, IntVec>>& terms) {
    int q = -1;
    IntVec z;
    for (auto& [cell, w] : terms) {
        int d = X.cells[cell].dim;
        if (q < 0) {
            q = d;
            z.assign(K.dims.at(q), 0);
        }
        if (d != q) throw std::invalid_argument("cellular_chain: cells of different dimension");
        const MultiTangent& F = X.F(cell, K.p);
        IntVec c = F.R * w;
        if (!(F.L.matrix() * c == w)) throw std::domain_error("cellular_chain: coefficient outside F_p");
        int off = K.offset.at(q).at(cell);
        if (off < 0) throw std::invalid_argument("cellular_chain: cell not in the complex");
        for (std::size_t i = 0; i < c.size(); ++i) z[off + i] += c[i];
    }
    return z;
}

}  // namespace trop
