#include "doctest.h"
#include "trop/duality.hpp"

#include <random>

using namespace trop;

namespace {

Rat frac(long a, long b) {
    Rat x(a, b);
    x.canonicalize();
    return x;
}

RatVec pt(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

std::vector<RatVec> boundary_sample(const Polytope& P, int steps) {
    // points k/steps along each edge between vertices sharing r - 1 facets
    std::vector<RatVec> out;
    int r = int(P.verts[0].size());
    auto on = [&](const RatVec& x, const std::pair<IntVec, Rat>& f) {
        Rat s = 0;
        for (int i = 0; i < r; ++i) s += Rat(f.first[i]) * x[i];
        return s == f.second;
    };
    for (std::size_t a = 0; a < P.verts.size(); ++a)
        for (std::size_t b = a + 1; b < P.verts.size(); ++b) {
            int shared = 0;
            for (auto& f : P.facets) shared += on(P.verts[a], f) && on(P.verts[b], f);
            if (shared < r - 1 || r == 1) continue;
            for (int k = 0; k <= steps; ++k) {
                RatVec x(r);
                for (int i = 0; i < r; ++i) x[i] = P.verts[a][i] + (P.verts[b][i] - P.verts[a][i]) * frac(k, steps);
                out.push_back(x);
            }
        }
    if (r == 1) out = P.verts;
    return out;
}

Rat boundary_value(const Polytope& P, const std::vector<PLFunction>& fs, const RatVec& x) {
    for (std::size_t t = 0; t < P.facets.size(); ++t) {
        Rat s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += Rat(P.facets[t].first[i]) * x[i];
        if (s == P.facets[t].second) return fs[t].eval(x);
    }
    throw std::logic_error("not on the boundary");
}

PLFunction tent(const RatVec& a, const RatVec& b, int k) {
    // k * min(<w, x - a>, <w, b - x>) along the edge a b
    IntVec w;
    for (std::size_t i = 0; i < a.size(); ++i) w.push_back(Int(b[i] - a[i]));
    Rat wa = 0, wb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) wa += Rat(w[i]) * a[i], wb += Rat(w[i]) * b[i];
    IntVec mw = w;
    for (auto& x : mw) x = -x;
    TropPoly Q;  // max(-l1, -l2)
    Q.add(mw, ExtRat(wa));
    Q.add(w, ExtRat(-wb));
    PLFunction f;
    f.r = int(a.size());
    f.minus = Q;
    PLFunction g;
    g.r = f.r;
    for (int i = 0; i < std::abs(k); ++i) g = g + (k > 0 ? f : -f);
    return g;
}

}  // namespace

TEST_CASE("polytope facets from vertices") {
    auto sq = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1}), pt({1, 0})});
    CHECK(sq.verts.size() == 4);
    CHECK(sq.facets.size() == 4);
    CHECK(sq.contains(RatVec{frac(1, 2), frac(1, 3)}));
    CHECK_FALSE(sq.contains(pt({2, 0})));
    auto tri = Polytope::from_vertices({pt({0, 0}), pt({2, 0}), pt({0, 2})});
    CHECK(tri.facets.size() == 3);
    bool diag = false;
    for (auto& [u, off] : tri.facets) diag = diag || (u == IntVec{-1, -1} && off == -2);
    CHECK(diag);
    auto cube = Polytope::from_vertices({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 1, 0}),
                                         pt({1, 0, 1}), pt({0, 1, 1}), pt({1, 1, 1})});
    CHECK(cube.facets.size() == 6);
    CHECK_THROWS(Polytope::from_vertices({pt({0, 0}), pt({1, 1}), pt({2, 2})}));
}

TEST_CASE("extension of zero boundary data") {
    auto sq = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
    std::vector<PLFunction> zeros(4, PLFunction::affine({0, 0}, ExtRat(0)));
    auto h = extend_pl(sq, zeros);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) CHECK(h.eval(RatVec{frac(i, 4), frac(j, 4)}) == 0);

    auto seg = Polytope::from_vertices({pt({0}), pt({1})});
    REQUIRE(seg.facets.size() == 2);
    auto h1 = extend_pl(seg, {PLFunction::affine({0}, ExtRat(0)), PLFunction::affine({0}, ExtRat(0))});
    CHECK(h1.eval(pt({0})) == 0);
    CHECK(h1.eval(pt({1})) == 0);
    auto h2 = extend_pl(seg, {PLFunction::affine({0}, ExtRat(3)), PLFunction::affine({0}, ExtRat(-2))});
    for (auto& [u, off] : seg.facets) {
        RatVec x{off * Rat(u[0])};
        CHECK(h2.eval(x) == (x[0] == 0 ? 3 : -2));
    }
}

TEST_CASE("extension of max(x, y, 0) on the triangle boundary") {
    auto tri = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    TropPoly P;
    P.add({1, 0}, ExtRat(0));
    P.add({0, 1}, ExtRat(0));
    P.add({0, 0}, ExtRat(0));
    auto s = PLFunction::poly(P);
    std::vector<PLFunction> fs(tri.facets.size(), s);
    auto h = extend_pl(tri, fs);
    int checked = 0;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            RatVec x{frac(i, 10), frac(j, 10)};
            if (i != 0 && j != 0 && i + j != 10) continue;
            if (i + j > 10) continue;
            CHECK(h.eval(x) == s.eval(x));
            ++checked;
        }
    CHECK(checked == 30);
}

TEST_CASE("extension reproduces varying boundary data") {
    std::mt19937 rng(11);
    std::vector<std::vector<RatVec>> shapes = {
        {pt({0, 0}), pt({3, 0}), pt({0, 2})},
        {pt({0, 0}), pt({2, 0}), pt({3, 1}), pt({2, 3}), pt({0, 2})},
        {pt({0, 0}), pt({2, 0}), pt({2, 2}), pt({0, 2})},
    };
    for (auto& V : shapes) {
        auto P = Polytope::from_vertices(V);
        for (int trial = 0; trial < 4; ++trial) {
            // a global function plus a tent on every edge
            TropPoly g;
            for (int k = 0; k < 3; ++k)
                g.add({std::uniform_int_distribution<int>(-2, 2)(rng), std::uniform_int_distribution<int>(-2, 2)(rng)},
                      ExtRat(std::uniform_int_distribution<int>(-2, 2)(rng)));
            auto G = PLFunction::poly(g);
            std::vector<PLFunction> fs;
            for (auto& [u, off] : P.facets) {
                std::vector<RatVec> ends;
                for (auto& v : P.verts)
                    if (Rat(u[0]) * v[0] + Rat(u[1]) * v[1] == off) ends.push_back(v);
                REQUIRE(ends.size() == 2);
                fs.push_back(G + tent(ends[0], ends[1], std::uniform_int_distribution<int>(-2, 2)(rng)));
            }
            auto h = extend_pl(P, fs);
            for (auto& x : boundary_sample(P, 12)) CHECK(h.eval(x) == boundary_value(P, fs, x));
        }
    }
}

TEST_CASE("extension on a cube and input errors") {
    auto cube = Polytope::from_vertices({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 1, 0}),
                                         pt({1, 0, 1}), pt({0, 1, 1}), pt({1, 1, 1})});
    TropPoly P;
    P.add({1, 0, 0}, ExtRat(0));
    P.add({0, 1, 1}, ExtRat(-1));
    P.add({0, 0, 0}, ExtRat(0));
    std::vector<PLFunction> fs(6, PLFunction::poly(P));
    auto h = extend_pl(cube, fs);
    for (auto& x : boundary_sample(cube, 6)) CHECK(h.eval(x) == fs[0].eval(x));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            RatVec x{frac(i, 2), frac(j, 2), Rat(0)};
            CHECK(h.eval(x) == fs[0].eval(x));
        }

    auto sq = Polytope::from_vertices({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
    std::vector<PLFunction> bad(4, PLFunction::affine({0, 0}, ExtRat(0)));
    bad[0] = PLFunction::affine({0, 0}, ExtRat(1));
    CHECK_THROWS_AS(extend_pl(sq, bad), std::invalid_argument);
    std::vector<PLFunction> formal(4, PLFunction::affine({0, 0}, ExtRat::formal(1)));
    CHECK_THROWS_AS(extend_pl(sq, formal), std::invalid_argument);
    CHECK_THROWS(extend_pl(sq, {PLFunction::affine({0, 0}, ExtRat(0))}));
}
