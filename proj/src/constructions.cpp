#include "trop/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace trop {

ExtVec ext_vec(const std::vector<Rat>& v) {
    ExtVec e;
    for (auto& x : v) e.push_back(ExtRat(x));
    return e;
}

XPoint point(const std::vector<Rat>& v) { return XPoint::finite(ext_vec(v)); }

namespace {

IntVec unit(int r, int i, int s = 1) {
    IntVec v(r);
    v[i] = s;
    return v;
}

Cell make_cell(std::string label, int dim, int r, std::vector<XPoint> verts, std::vector<IntVec> rays = {}) {
    Cell c;
    c.label = std::move(label);
    c.dim = dim;
    c.r = r;
    c.verts = std::move(verts);
    c.rays = std::move(rays);
    return c;
}

ExtVec scaled(const IntVec& v, const ExtRat& s) {
    ExtVec e(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) e[i] = s * Rat(v[i]);
    return e;
}

ExtVec add(ExtVec a, const ExtVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

// ---------------------------------------------------------------- fans

TropicalSpace simplicial_fan(int r, const std::vector<IntVec>& rays, const std::vector<std::vector<int>>& maximal,
                             const std::vector<int>& weights) {
    std::set<std::vector<int>> cones;
    for (auto& m : maximal) {
        std::vector<int> c = m;
        std::sort(c.begin(), c.end());
        int k = int(c.size());
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) s.push_back(c[i]);
            cones.insert(s);
        }
    }
    std::vector<std::vector<int>> order(cones.begin(), cones.end());
    std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
    TropicalSpace X;
    std::map<std::vector<int>, int> id;
    XPoint origin(r);
    for (auto& c : order) {
        std::vector<IntVec> rs;
        std::string label = "cone";
        for (int i : c) {
            rs.push_back(rays.at(i));
            label += "_" + std::to_string(i);
        }
        if (c.empty()) label = "origin";
        id[c] = X.add_cell(make_cell(label, int(c.size()), r, {origin}, rs));
    }
    int top = 0;
    for (auto& m : maximal) top = std::max(top, int(m.size()));
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        auto c = maximal[i];
        std::sort(c.begin(), c.end());
        if (int(c.size()) == top) X.cells[id[c]].weight = weights.empty() ? 1 : weights.at(i);
    }
    for (auto& c : order)
        for (std::size_t k = 0; k < c.size(); ++k) {
            auto f = c;
            f.erase(f.begin() + k);
            X.add_face_identity(id[f], id[c], rays.at(c[k]));
        }
    X.finalize();
    return X;
}

TropicalSpace euclidean_space(int n) {
    std::vector<IntVec> rays;
    for (int i = 0; i < n; ++i) {
        rays.push_back(unit(n, i, 1));
        rays.push_back(unit(n, i, -1));
    }
    std::vector<std::vector<int>> cones;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        std::vector<int> c;
        for (int i = 0; i < n; ++i) c.push_back(2 * i + int(m >> i & 1));
        cones.push_back(c);
    }
    return simplicial_fan(n, rays, cones);
}

TropicalSpace tropical_line(int w1, int w2, int w3) {
    return simplicial_fan(2, {{-1, 0}, {0, -1}, {1, 1}}, {{0}, {1}, {2}}, {w1, w2, w3});
}

int Matroid::rank_of(std::uint32_t set) const {
    int best = 0;
    for (auto& b : bases) {
        int k = 0;
        for (int e : b) k += int(set >> e & 1);
        best = std::max(best, k);
    }
    return best;
}

std::uint32_t Matroid::closure(std::uint32_t set) const {
    int r = rank_of(set);
    std::uint32_t c = set;
    for (int e = 0; e < n; ++e)
        if (!(set >> e & 1) && rank_of(set | (1u << e)) == r) c |= 1u << e;
    return c;
}

bool Matroid::valid() const {
    if (bases.empty()) return false;
    std::set<std::uint32_t> B;
    for (auto& b : bases) {
        std::uint32_t m = 0;
        for (int e : b) {
            if (e < 0 || e >= n) return false;
            m |= 1u << e;
        }
        if (__builtin_popcount(m) != rank()) return false;
        B.insert(m);
    }
    for (auto a : B)
        for (auto b : B)
            for (int x = 0; x < n; ++x) {
                if (!((a & ~b) >> x & 1)) continue;
                bool ok = false;
                for (int y = 0; y < n && !ok; ++y)
                    if ((b & ~a) >> y & 1) ok = B.count((a & ~(1u << x)) | (1u << y)) > 0;
                if (!ok) return false;
            }
    return true;
}

bool Matroid::loopless() const {
    for (int e = 0; e < n; ++e)
        if (rank_of(1u << e) == 0) return false;
    return true;
}

std::vector<std::uint32_t> Matroid::proper_flats() const {
    std::set<std::uint32_t> fl;
    std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
        auto c = closure(s);
        if (c != full) fl.insert(c);
    }
    std::vector<std::uint32_t> v(fl.begin(), fl.end());
    std::stable_sort(v.begin(), v.end(), [&](auto a, auto b) { return rank_of(a) < rank_of(b); });
    return v;
}

Matroid uniform_matroid(int r, int n) {
    Matroid M;
    M.n = n;
    for (auto& s : subsets(n, r)) M.bases.push_back(s);
    return M;
}

Matroid graphic_matroid(int vertices, const std::vector<std::pair<int, int>>& edges) {
    Matroid M;
    M.n = int(edges.size());
    auto forest_rank = [&](std::uint32_t set) {
        std::vector<int> par(vertices);
        for (int i = 0; i < vertices; ++i) par[i] = i;
        std::function<int(int)> f = [&](int x) { return par[x] == x ? x : par[x] = f(par[x]); };
        int k = 0;
        for (int e = 0; e < M.n; ++e)
            if (set >> e & 1) {
                int a = f(edges[e].first), b = f(edges[e].second);
                if (a != b) {
                    par[a] = b;
                    ++k;
                }
            }
        return k;
    };
    int r = forest_rank((1u << M.n) - 1);
    for (auto& s : subsets(M.n, r)) {
        std::uint32_t m = 0;
        for (int e : s) m |= 1u << e;
        if (forest_rank(m) == r) M.bases.push_back(s);
    }
    return M;
}

TropicalSpace bergman_fan(const Matroid& M) {
    if (!M.valid()) throw std::invalid_argument("bergman_fan: invalid matroid");
    if (!M.loopless()) throw std::invalid_argument("bergman_fan: matroid has a loop");
    int r = M.n - 1;
    auto flats = M.proper_flats();
    std::vector<IntVec> rays;
    for (auto F : flats) {
        IntVec v(r);
        bool last = F >> (M.n - 1) & 1;
        for (int i = 0; i < r; ++i) v[i] = Int(int(F >> i & 1)) - Int(int(last));
        rays.push_back(v);
    }
    // maximal chains of proper flats
    std::vector<std::vector<int>> chains;
    std::vector<int> cur;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t below) {
        bool extended = false;
        for (std::size_t i = 0; i < flats.size(); ++i) {
            auto F = flats[i];
            if ((F & below) != below || F == below) continue;
            if (M.rank_of(F) != M.rank_of(below) + 1) continue;
            cur.push_back(int(i));
            rec(F);
            cur.pop_back();
            extended = true;
        }
        if (!extended) chains.push_back(cur);
    };
    rec(M.closure(0));
    if (M.rank() <= 1) chains = {{}};
    return simplicial_fan(r, rays, chains);
}

// ---------------------------------------------------------------- tori

TropicalSpace torus(const std::vector<ExtRat>& lengths) {
    int n = int(lengths.size());
    TropicalSpace X;
    std::vector<int> id(1u << n);
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
        std::vector<XPoint> verts;
        for (std::uint32_t T = 0; T < (1u << n); ++T) {
            if ((T & S) != T) continue;
            XPoint p(n);
            for (int i = 0; i < n; ++i)
                if (T >> i & 1) p.x[i] = lengths[i];
            verts.push_back(p);
        }
        std::string label = "box";
        for (int i = 0; i < n; ++i)
            if (S >> i & 1) label += std::to_string(i + 1);
        id[S] = X.add_cell(make_cell(label, __builtin_popcount(S), n, verts));
    }
    X.cells[id[(1u << n) - 1]].weight = 1;
    for (std::uint32_t S = 0; S < (1u << n); ++S)
        for (int i = 0; i < n; ++i) {
            if (!(S >> i & 1)) continue;
            std::uint32_t F = S & ~(1u << i);
            X.add_face_inward(id[F], id[S], IntMatrix::identity(n), ExtVec(n), unit(n, i, 1));
            ExtVec b(n);
            b[i] = lengths[i];
            X.add_face_inward(id[F], id[S], IntMatrix::identity(n), b, unit(n, i, -1));
        }
    X.finalize();
    return X;
}

TropicalSpace torus2(const ExtRat& a, const ExtRat& b, const ExtRat& c) {
    if (b.is_zero()) return torus({a, c});
    auto pt = [](const ExtRat& x, const ExtRat& y) { return XPoint::finite({x, y}); };
    ExtRat z;
    TropicalSpace X;
    auto I = IntMatrix::identity(2);
    int P0 = X.add_cell(make_cell("P0", 0, 2, {pt(z, z)}));
    int P1 = X.add_cell(make_cell("P1", 0, 2, {pt(z, z)}));
    int E1 = X.add_cell(make_cell("E1", 1, 2, {pt(z, z), pt(a - b, z)}));
    int E2 = X.add_cell(make_cell("E2", 1, 2, {pt(z, z), pt(b, z)}));
    int V = X.add_cell(make_cell("V", 1, 2, {pt(z, z), pt(z, c)}));
    int R = X.add_cell(make_cell("R", 2, 2, {pt(z, z), pt(a - b, z), pt(a, z), pt(a, c), pt(b, c), pt(z, c)}));
    X.cells[R].weight = 1;
    X.add_face_inward(P0, E1, I, {z, z}, {1, 0});
    X.add_face_inward(P1, E1, I, {a - b, z}, {-1, 0});
    X.add_face_inward(P1, E2, I, {z, z}, {1, 0});
    X.add_face_inward(P0, E2, I, {b, z}, {-1, 0});
    X.add_face_inward(P0, V, I, {z, z}, {0, 1});
    X.add_face_inward(P1, V, I, {z, c}, {0, -1});
    X.add_face_inward(E1, R, I, {z, z}, {0, 1});
    X.add_face_inward(E2, R, I, {a - b, z}, {0, 1});
    X.add_face_inward(E2, R, I, {z, c}, {0, -1});
    X.add_face_inward(E1, R, I, {b, c}, {0, -1});
    X.add_face_inward(V, R, I, {z, z}, {1, 0});
    X.add_face_inward(V, R, I, {a, z}, {-1, 0});
    X.finalize();
    return X;
}

// ---------------------------------------------------------------- Klein bottles

IntMatrix klein_H(int type) {
    if (type == 1) return IntMatrix::from_rows({{-1, 0}, {0, 1}});
    if (type == 2) return IntMatrix::from_rows({{-1, 1}, {0, 1}});
    throw std::invalid_argument("klein: type must be 1 or 2");
}

IntMatrix klein_T(int type, int n) {
    if (type == 1) return IntMatrix::from_rows({{1, 0}, {n, 1}});
    if (type == 2) return IntMatrix::from_rows({{1 + 2 * n, -n}, {4 * n, 1 - 2 * n}});
    throw std::invalid_argument("klein: type must be 1 or 2");
}

IntVec klein_v2(int type) { return type == 1 ? IntVec{0, 1} : IntVec{1, 2}; }

TropicalSpace klein_bottle(const KleinParams& P) {
    IntMatrix H = klein_H(P.type), T = klein_T(P.type, P.n);
    IntVec v2 = klein_v2(P.type);
    ExtVec A = scaled({1, 0}, P.l1), B = scaled(v2, P.l2), zero(2);
    IntVec mv2{-v2[0], -v2[1]};
    TropicalSpace X;
    int V = X.add_cell(make_cell("V", 0, 2, {XPoint(2)}));
    int a = X.add_cell(make_cell("a", 1, 2, {XPoint(2), XPoint::finite(A)}));
    int b = X.add_cell(make_cell("b", 1, 2, {XPoint(2), XPoint::finite(B)}));
    int Pc = X.add_cell(make_cell("P", 2, 2, {XPoint(2), XPoint::finite(A), XPoint::finite(add(A, B)), XPoint::finite(B)}));
    X.cells[Pc].weight = 1;
    auto I = IntMatrix::identity(2);
    // corner charts are forced by the gluing: a(end) -> T, b(end) -> H T
    X.add_face_inward(V, a, I, zero, {1, 0});
    X.add_face_inward(V, a, T, A, {-1, 0});
    X.add_face_inward(V, b, I, zero, v2);
    X.add_face_inward(V, b, H * T, B, mv2);
    X.add_face_inward(a, Pc, I, zero, v2);
    X.add_face_inward(a, Pc, H, add(A, B), mv2);
    X.add_face_inward(b, Pc, I, zero, {1, 0});
    X.add_face_inward(b, Pc, T, A, {-1, 0});
    X.finalize();
    return X;
}

TropicalCycle klein_parallel_cycle(const StratifiedSimplicialStructure& S, const KleinParams& P) {
    const TropicalSpace& X = S.space();
    int a = X.find("a"), b = X.find("b"), Pc = X.find("P");
    IntVec v2 = klein_v2(P.type);
    ExtRat half = P.l1 / Rat(2);
    auto on_line = [&](const XPoint& x) { return (x.x[0] - half) * Rat(v2[1]) == x.x[1] * Rat(v2[0]); };
    TropicalCycle Z{Model::Simplicial, 1, {}};
    for (int i = 0; i < S.count(1); ++i) {
        const Simplex& s = S.simplex(1, i);
        if (s.carrier == b) Z.weights.push_back({i, 1});
        else if (s.carrier == Pc && s.vertex_cells[0] == a && on_line(s.verts[0]) && on_line(s.verts[1]))
            Z.weights.push_back({i, -1});
    }
    return Z;
}

}  // namespace trop
