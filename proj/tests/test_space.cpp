#include "doctest.h"
#include "trop/constructions.hpp"

#include <random>

using namespace trop;

namespace {

int cell_with_rays(const TropicalSpace& X, const std::vector<IntVec>& rays) {
    for (int c = 0; c < int(X.cells.size()); ++c) {
        auto r = X.cells[c].rays;
        if (r.size() != rays.size()) continue;
        if (std::is_permutation(r.begin(), r.end(), rays.begin())) return c;
    }
    return -1;
}

}  // namespace

TEST_CASE("a single point is valid") {
    TropicalSpace X = euclidean_space(0);
    CHECK(X.validate().ok());
    CHECK(X.cells.size() == 1);
    CHECK(X.F(0, 0).rank() == 1);
}

TEST_CASE("tangent lattices") {
    TropicalSpace X;
    Cell s;
    s.dim = 1;
    s.r = 2;
    s.verts = {point({0, 0}), point({1, 0})};
    int a = X.add_cell(s);
    s.verts = {point({0, 0}), point({2, 2})};
    int b = X.add_cell(s);
    // ray to -inf in T^1 from 0: the sedentary endpoint contributes only through its stratum
    Cell ray;
    ray.dim = 1;
    ray.r = 1;
    XPoint inf(1);
    inf.inf[0] = 1;
    ray.verts = {point({0}), inf};
    TropicalSpace Y;
    int c = Y.add_cell(ray);
    X.finalize();
    Y.finalize();
    CHECK(X.tangent(a).basis == std::vector<IntVec>{{1, 0}});
    CHECK(X.tangent(b).basis == std::vector<IntVec>{{1, 1}});
    CHECK(Y.tangent(c).basis.size() == 1);
    CHECK(abs(Y.tangent(c).basis[0][0]) == 1);
    CHECK(Y.recession(c) == std::vector<IntVec>{{-1}});
}

TEST_CASE("multi-tangent lattices of fans") {
    auto L = tropical_line();
    REQUIRE(L.validate().ok());
    int v = L.find("origin");
    CHECK(L.F(v, 0).rank() == 1);
    CHECK(L.F(v, 1).rank() == 2);
    CHECK(L.F(v, 2).rank() == 0);

    auto P = bergman_fan(uniform_matroid(3, 4));
    REQUIRE(P.validate().ok());
    CHECK(P.dim() == 2);
    int o = P.find("origin");
    CHECK(P.F(o, 2).rank() == 3);
    CHECK(P.F(o, 1).rank() == 3);
    int rays = 0, cones = 0;
    for (auto& c : P.cells) rays += c.dim == 1, cones += c.dim == 2;
    CHECK(rays == 4 + 6);  // fine structure: 4 singletons and 6 pairs
    CHECK(cones == 12);

    for (int n = 1; n <= 3; ++n) {
        auto R = euclidean_space(n);
        REQUIRE(R.validate().ok());
        for (int c = 0; c < int(R.cells.size()); ++c)
            for (int p = 0; p <= n; ++p) CHECK(R.F(c, p).rank() == binom(n, p));
    }
}

TEST_CASE("bergman fans of small matroids") {
    auto L = bergman_fan(uniform_matroid(2, 3));
    CHECK(L.dim() == 1);
    CHECK(L.cells.size() == 4);
    CHECK(L.check_balancing().balanced);

    auto K4 = graphic_matroid(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(K4.valid());
    CHECK(K4.rank() == 3);
    CHECK(K4.bases.size() == 16);
    CHECK(K4.proper_flats().size() == 13);
    auto F = bergman_fan(K4);
    REQUIRE(F.validate().ok());
    int two = 0;
    for (auto& c : F.cells) two += c.dim == 2;
    CHECK(two == 18);
    CHECK(F.check_balancing().balanced);

    auto B = bergman_fan(uniform_matroid(3, 3));
    CHECK(B.dim() == 2);
    for (int c = 0; c < int(B.cells.size()); ++c) CHECK(B.F(c, 1).rank() == 2);

    Matroid bad{3, {{0, 1}, {2}}};
    CHECK_FALSE(bad.valid());
    CHECK_THROWS(bergman_fan(bad));
}

TEST_CASE("iota: identity, inclusion, sedentary projection, functoriality") {
    auto X = euclidean_space(2);
    int o = X.find("origin");
    CHECK(X.iota(o, o, IntMatrix::identity(2), 1) == IntMatrix::identity(2));

    // a mobile edge in T x R meeting its sedentary face
    TropicalSpace Y;
    XPoint p(2), q(2);
    p.inf[0] = 1;
    q.x[1] = ExtRat(1);
    q.inf[0] = 1;
    Cell e;
    e.dim = 1;
    e.r = 2;
    e.verts = {XPoint(2), p};
    int edge = Y.add_cell(e);
    Cell v;
    v.r = 2;
    v.sed = {0};
    v.verts = {p};
    int vert = Y.add_cell(v);
    Cell v0;
    v0.r = 2;
    v0.verts = {XPoint(2)};
    int vert0 = Y.add_cell(v0);
    Y.cells[edge].weight = 1;
    Y.add_face_identity(vert, edge, {-1, 0});
    Y.add_face_identity(vert0, edge, {-1, 0});
    Y.finalize();
    // F_1(edge) = <e1>, projected away at the sedentary vertex
    CHECK(Y.F(edge, 1).rank() == 1);
    CHECK(Y.F(vert, 1).rank() == 0);
    CHECK(Y.iota(0, 1).rows() == 0);
    CHECK(Y.F(vert, 0).rank() == 1);
    CHECK(Y.iota(0, 0) == IntMatrix::identity(1));

    // functoriality over every flag of the quartic-free fixtures
    for (auto* S : {&X}) {
        for (std::size_t i = 0; i < S->faces.size(); ++i)
            for (std::size_t j = 0; j < S->faces.size(); ++j) {
                auto& f = S->faces[i];
                auto& g = S->faces[j];
                if (g.parent != f.child) continue;
                for (int p = 0; p <= 2; ++p) {
                    IntMatrix direct = S->iota(g.child, f.parent, f.A * g.A, p);
                    CHECK(S->iota(int(j), p) * S->iota(int(i), p) == direct);
                }
            }
    }
}

TEST_CASE("primitive generators") {
    auto X = simplicial_fan(2, {{1, 1}, {-1, 0}}, {{0}, {1}});
    for (std::size_t i = 0; i < X.faces.size(); ++i) {
        auto& f = X.faces[i];
        CHECK(X.primitive_generator(int(i)) == X.cells[f.parent].rays[0]);
    }

    // unimodular triangle: generator agrees with the opposite vertex difference modulo the edge
    TropicalSpace T;
    auto mk = [](int dim, std::vector<XPoint> vs) {
        Cell c;
        c.dim = dim;
        c.r = 2;
        c.verts = std::move(vs);
        return c;
    };
    int v0 = T.add_cell(mk(0, {point({0, 0})}));
    int v1 = T.add_cell(mk(0, {point({0, 0})}));
    int v2 = T.add_cell(mk(0, {point({0, 0})}));
    int e01 = T.add_cell(mk(1, {point({0, 0}), point({1, 0})}));
    int e12 = T.add_cell(mk(1, {point({1, 0}), point({0, 1})}));
    int e02 = T.add_cell(mk(1, {point({0, 0}), point({0, 1})}));
    int tri = T.add_cell(mk(2, {point({0, 0}), point({1, 0}), point({0, 1})}));
    T.cells[tri].weight = 1;
    auto I = IntMatrix::identity(2);
    T.add_face_inward(v0, e01, I, ext_vec({0, 0}), {1, 0});
    T.add_face_inward(v1, e01, I, ext_vec({1, 0}), {-1, 0});
    T.add_face_inward(v1, e12, I, ext_vec({1, 0}), {-1, 1});
    T.add_face_inward(v2, e12, I, ext_vec({0, 1}), {1, -1});
    T.add_face_inward(v0, e02, I, ext_vec({0, 0}), {0, 1});
    T.add_face_inward(v2, e02, I, ext_vec({0, 1}), {0, -1});
    T.add_face_inward(e01, tri, I, ext_vec({0, 0}), {0, 1});
    T.add_face_inward(e12, tri, I, ext_vec({0, 0}), {-1, -1});
    T.add_face_inward(e02, tri, I, ext_vec({0, 0}), {1, 0});
    T.finalize();
    REQUIRE(T.validate().ok());
    for (std::size_t i = 0; i < T.faces.size(); ++i) {
        auto& f = T.faces[i];
        if (f.parent != tri) continue;
        IntVec v = T.primitive_generator(int(i));
        // opposite vertex minus a vertex of the edge, modulo the edge lattice
        IntVec opp = f.child == e01 ? IntVec{0, 1} : f.child == e12 ? IntVec{-1, 0} : IntVec{1, 0};
        IntVec d(2);
        for (int j = 0; j < 2; ++j) d[j] = v[j] - opp[j];
        CHECK(lattice_coords(T.tangent(f.child), d).has_value());
    }
}

TEST_CASE("validation diagnostics") {
    // square with one missing edge cell
    TropicalSpace X = torus({ExtRat(1), ExtRat(1)});
    REQUIRE(X.validate().ok());
    TropicalSpace Y;
    auto mk = [](int dim, std::vector<XPoint> vs) {
        Cell c;
        c.dim = dim;
        c.r = 2;
        c.verts = std::move(vs);
        return c;
    };
    int sq = Y.add_cell(mk(2, {point({0, 0}), point({1, 0}), point({1, 1}), point({0, 1})}));
    Y.cells[sq].weight = 1;
    std::vector<int> vs;
    for (auto p : {point({0, 0}), point({1, 0}), point({1, 1}), point({0, 1})}) vs.push_back(Y.add_cell(mk(0, {point({0, 0})})));
    auto I = IntMatrix::identity(2);
    int bot = Y.add_cell(mk(1, {point({0, 0}), point({1, 0})}));
    int rgt = Y.add_cell(mk(1, {point({0, 0}), point({0, 1})}));
    int top = Y.add_cell(mk(1, {point({0, 0}), point({1, 0})}));
    Y.add_face_inward(vs[0], bot, I, ext_vec({0, 0}), {1, 0});
    Y.add_face_inward(vs[1], bot, I, ext_vec({1, 0}), {-1, 0});
    Y.add_face_inward(vs[1], rgt, I, ext_vec({0, 0}), {0, 1});
    Y.add_face_inward(vs[2], rgt, I, ext_vec({0, 1}), {0, -1});
    Y.add_face_inward(vs[3], top, I, ext_vec({0, 0}), {1, 0});
    Y.add_face_inward(vs[2], top, I, ext_vec({1, 0}), {-1, 0});
    Y.add_face_inward(bot, sq, I, ext_vec({0, 0}), {0, 1});
    Y.add_face_inward(rgt, sq, I, ext_vec({1, 0}), {-1, 0});
    Y.add_face_inward(top, sq, I, ext_vec({0, 1}), {0, -1});
    Y.finalize();
    auto rep = Y.validate();
    CHECK_FALSE(rep.ok());
    bool closure = false;
    for (auto& e : rep.errors) closure = closure || e.find("face closure violated") != std::string::npos;
    CHECK(closure);
}

TEST_CASE("balancing") {
    CHECK(tropical_line().check_balancing().balanced);
    auto bad = tropical_line(2, 1, 1);
    auto rep = bad.check_balancing();
    CHECK_FALSE(rep.balanced);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].sum == IntVec{-1, 0});
    CHECK(tropical_line(2, 2, 2).check_balancing().balanced);
    CHECK(bergman_fan(uniform_matroid(3, 4)).check_balancing().balanced);
    CHECK(torus({ExtRat(1), ExtRat(1)}).check_balancing().balanced);
    CHECK(klein_bottle({}).check_balancing().balanced);
}

TEST_CASE("balancing verdict does not depend on the choice of primitive generators") {
    std::mt19937 rng(5);
    for (auto* name : {"line", "bad", "plane"}) {
        TropicalSpace X = std::string(name) == "line" ? tropical_line()
                        : std::string(name) == "bad"  ? tropical_line(1, 3, 1)
                                                      : bergman_fan(uniform_matroid(3, 4));
        bool verdict = X.check_balancing().balanced;
        for (int trial = 0; trial < 5; ++trial) {
            bool ok = true;
            for (int c = 0; c < int(X.cells.size()); ++c) {
                if (X.cells[c].dim != X.dim() - 1) continue;
                IntVec sum(X.cells[c].r);
                for (int fi : X.cofaces_of(c)) {
                    auto& f = X.faces[fi];
                    IntVec v = X.primitive_generator(fi);
                    // perturb by a random element of L(face)
                    for (auto& b : X.tangent(c).basis) {
                        int k = std::uniform_int_distribution<int>(-3, 3)(rng);
                        for (int j = 0; j < int(v.size()); ++j) v[j] += k * b[j];
                    }
                    for (int j = 0; j < int(v.size()); ++j) sum[j] += X.cells[f.parent].weight * v[j];
                }
                ok = ok && lattice_coords(X.tangent(c), sum).has_value();
            }
            CHECK(ok == verdict);
        }
    }
}

TEST_CASE("fixtures validate") {
    CHECK(torus({ExtRat(1)}).validate().ok());
    CHECK(torus({ExtRat(1), ExtRat::formal(1)}).validate().ok());
    auto T2 = torus2(ExtRat(1), ExtRat::formal(1), ExtRat(1));
    auto rep = T2.validate();
    for (auto& e : rep.errors) MESSAGE(e);
    CHECK(rep.ok());
    for (int type : {1, 2})
        for (int n : {0, 1, 2, 3, 5, -2}) {
            auto K = klein_bottle({type, n});
            auto r = K.validate();
            for (auto& e : r.errors) MESSAGE(e);
            CHECK(r.ok());
        }
    CHECK(cell_with_rays(tropical_line(), {{1, 1}}) >= 0);
}
