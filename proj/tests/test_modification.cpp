#include "doctest.h"
#include "trop/constructions.hpp"
#include "trop/homology.hpp"

#include <set>

using namespace trop;

namespace {

RegularTriangulation plane(int d) {
    std::vector<Rat> h;
    for (auto& m : simplex_points(2, d)) h.push_back(Rat(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]));
    return regular_triangulation(2, d, h);
}

std::set<IntVec> rays_of_dim(const TropicalSpace& X, int d) {
    std::set<IntVec> out;
    for (auto& c : X.cells)
        if (c.dim == d && c.compact() == false)
            for (auto& u : c.rays) out.insert(u);
    return out;
}

// (p+1, q+1) shift of a Borel-Moore table
bool shifted(const Diamond& a, const Diamond& b) {
    for (int p = 0; p <= b.n; ++p)
        for (int q = 0; q <= b.n; ++q) {
            int want = p >= 1 && q >= 1 ? a.betti[p - 1][q - 1] : 0;
            if (b.betti[p][q] != want) return false;
            auto tw = p >= 1 && q >= 1 ? a.torsion[p - 1][q - 1] : std::vector<Int>{};
            if (b.torsion[p][q] != tw) return false;
        }
    return true;
}

bool unshifted(const Diamond& a, const Diamond& b) {
    for (int p = 0; p <= b.n; ++p)
        for (int q = 0; q <= b.n; ++q) {
            int want = p <= a.n && q <= a.n ? a.betti[p][q] : 0;
            if (b.betti[p][q] != want) return false;
        }
    return true;
}

IntMatrix dense_sum(int n, const std::vector<SparseInt>& terms) {
    IntMatrix R(n, n);
    for (auto& t : terms) {
        auto a = to_dense(t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) R(i, j) += a(i, j);
    }
    return R;
}

}  // namespace

TEST_CASE("region complexes subdivide the plane") {
    for (int d = 1; d <= 3; ++d) {
        auto H = region_complex(plane(d), false);
        CHECK(H.X.validate().ok());
        CHECK(H.X.check_balancing().balanced);
        int top = 0;
        for (auto& c : H.X.cells) top += c.dim == 2;
        CHECK(top == (d + 1) * (d + 2) / 2);
    }
}

TEST_CASE("modification of the plane along max(x, y, 0)") {
    auto T = plane(1);
    auto W = region_complex(T, false).X;
    auto M = open_modification(W, hypersurface_polynomial(T));
    CHECK(M.V.validate().ok());
    CHECK(M.V.check_balancing().balanced);
    CHECK(M.Vbar.validate().ok());
    CHECK(M.Vbar.check_balancing().balanced);
    // the divisor is the tropical line
    CHECK(M.D.weights.size() == 3);
    for (auto& [c, w] : M.D.weights) CHECK(w == 1);
    // V is the tropical plane: four rays summing to zero, six 2-cones
    std::set<IntVec> want{{-1, 0, 0}, {0, -1, 0}, {1, 1, 1}, {0, 0, -1}};
    CHECK(rays_of_dim(M.V, 1) == want);
    int cones = 0;
    for (auto& c : M.V.cells) cones += c.dim == 2;
    CHECK(cones == 6);
    for (auto& c : M.V.cells)
        if (c.dim == 2) CHECK(c.weight == 1);
    auto s = orlik_solomon_check(W, M, 0, 1);
    CHECK(s.rank_D == 1);
    CHECK(s.rank_V == 3);
    CHECK(s.rank_W == 2);
    CHECK(s.exact);
    auto s2 = orlik_solomon_check(W, M, 0, 2);
    CHECK(s2.exact);
    CHECK(s2.rank_D == 2);
}

TEST_CASE("modification along an affine function adds nothing") {
    auto W = region_complex(plane(1), false).X;
    auto M = open_modification(W, PLFunction::affine({2, -1}, ExtRat(3)));
    CHECK(M.D.weights.empty());
    CHECK(M.V.cells.size() == W.cells.size());
    CHECK(M.Vbar.cells.size() == W.cells.size());
    CHECK(M.V.validate().ok());
}

TEST_CASE("modifications keep the homology") {
    for (int d : {1, 4}) {
        auto T = plane(d);
        auto W = region_complex(T, false).X;
        auto M = open_modification(W, hypersurface_polynomial(T));
        CHECK(M.Vbar.check_balancing().balanced);
        for (auto v : {Variant::BorelMoore, Variant::Cochain}) {
            auto a = hodge_diamond(W, v), b = hodge_diamond(M.Vbar, v);
            CHECK(a.betti == b.betti);
            CHECK(a.torsion == b.torsion);
        }
    }
    // f must be affine on the cells of W
    auto W = euclidean_space(2);
    CHECK_THROWS(open_modification(W, hypersurface_polynomial(plane(2))));
}

TEST_CASE("product with T") {
    auto pt = product_with_T(euclidean_space(0));
    auto d = hodge_diamond(pt.X, Variant::BorelMoore);
    CHECK(d.betti[1][1] == 1);
    CHECK(d.betti[0][0] == 0);
    std::vector<TropicalSpace> ys{tropical_line(), torus({ExtRat(1), ExtRat(2)}), klein_bottle({1, 0})};
    for (auto& Y : ys) {
        auto P = product_with_T(Y);
        CHECK(P.X.validate().ok());
        CHECK(P.X.check_balancing().balanced);
        CHECK(shifted(hodge_diamond(Y, Variant::BorelMoore), hodge_diamond(P.X, Variant::BorelMoore)));
        CHECK(unshifted(hodge_diamond(Y, Variant::Cochain), hodge_diamond(P.X, Variant::Cochain)));
        for (int p = 0; p <= Y.dim(); ++p) {
            auto PM = product_chain_maps(Y, P, p);
            for (int q = 0; q <= PM.KY.top; ++q) {
                CHECK(to_dense(PM.phi[q] * PM.psi[q]) == IntMatrix::identity(PM.KY.dims[q]));
                // chain maps
                if (q >= 1) {
                    CHECK(to_dense(PM.KP.d[q + 1] * PM.psi[q]) == to_dense(PM.psi[q - 1] * PM.KY.d[q]));
                    CHECK(to_dense(PM.KY.d[q] * PM.phi[q]) == to_dense(PM.phi[q - 1] * PM.KP.d[q + 1]));
                }
            }
            for (int s = 0; s <= PM.KP.top; ++s) {
                int n = PM.KP.dims[s];
                IntMatrix lhs = IntMatrix::identity(n);
                if (s >= 1) {
                    auto pp = to_dense(PM.psi[s - 1] * PM.phi[s - 1]);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) lhs(i, j) -= pp(i, j);
                }
                std::vector<SparseInt> terms;
                if (s + 1 <= PM.KP.top) terms.push_back(PM.KP.d[s + 1] * PM.h[s]);
                if (s >= 1) terms.push_back(PM.h[s - 1] * PM.KP.d[s]);
                CHECK(lhs == dense_sum(n, terms));
            }
        }
    }
}
