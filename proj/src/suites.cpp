#include "trop/suites.hpp"

#include "trop/constructions.hpp"
#include "trop/duality.hpp"
#include "trop/homology.hpp"
#include "trop/wave.hpp"

#include <sstream>

namespace trop {

namespace {

Fixture fx(std::string name, TropicalSpace X, bool pd) {
    return {std::move(name), std::make_shared<TropicalSpace>(std::move(X)), pd};
}

bool zero(const IntVec& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string first_errors(const std::vector<std::string>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size() && i < 3; ++i) s += (i ? "; " : "") + e[i];
    return s;
}

}  // namespace

std::vector<Fixture> standard_fixtures(bool heavy) {
    std::vector<Fixture> out;
    for (int n = 1; n <= 3; ++n) out.push_back(fx("R" + std::to_string(n), euclidean_space(n), true));
    out.push_back(fx("bergman-U23", bergman_fan(uniform_matroid(2, 3)), true));
    out.push_back(fx("bergman-U34", bergman_fan(uniform_matroid(3, 4)), true));
    out.push_back(fx("bergman-K4", bergman_fan(graphic_matroid(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})), true));
    out.push_back(fx("line", tropical_line(), true));
    out.push_back(fx("line-222", tropical_line(2, 2, 2), false));
    out.push_back(fx("torus-2", torus({ExtRat(1), ExtRat(1)}), true));
    out.push_back(fx("torus-hex", torus2(ExtRat(3), ExtRat(1), ExtRat(2)), true));
    out.push_back(fx("torus-formal", torus2(ExtRat(1), ExtRat(Rat(1, 2)) + ExtRat::formal(1), ExtRat(1)), true));
    out.push_back(fx("torus-3", torus({ExtRat(1), ExtRat(1), ExtRat(1)}), true));
    out.push_back(fx("klein-1", klein_bottle({1, 0}), true));
    out.push_back(fx("klein-2", klein_bottle({2, 0}), true));
    out.push_back(fx("klein-1-3", klein_bottle({1, 3}), true));
    out.push_back(fx("klein-2-2", klein_bottle({2, 2}), true));
    std::vector<Rat> h;
    for (auto& m : simplex_points(2, 3)) h.push_back(Rat(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]));
    auto T3 = regular_triangulation(2, 3, h);
    out.push_back(fx("cubic-curve", hypersurface(T3, true), true));
    auto T1 = regular_triangulation(2, 1, {Rat(0), Rat(0), Rat(0)});
    auto W = region_complex(T1, false).X;
    out.push_back(fx("plane-modified", open_modification(W, hypersurface_polynomial(T1)).Vbar, false));
    out.push_back(fx("line-x-T", product_with_T(tropical_line()).X, false));
    if (heavy) out.push_back(fx("cone-quartic", cone_quartic().H.X, true));
    return out;
}

std::vector<Check> verify_space(const std::string& name, const TropicalSpace& X, bool pd) {
    std::vector<Check> out;
    auto add = [&](std::string what, bool ok, std::string detail = "") {
        out.push_back({name, std::move(what), ok, std::move(detail)});
    };
    auto v = X.validate();
    add("validate", v.ok(), first_errors(v.errors));
    if (!v.ok()) return out;
    auto bal = X.check_balancing();
    add("balancing", bal.balanced);
    const int n = X.dim();
    bool d2 = true;
    std::string why;
    for (int p = 0; p <= n; ++p)
        for (auto var : {Variant::Standard, Variant::BorelMoore, Variant::Cochain}) {
            auto c = check_d_squared(build_complex(X, p, var));
            if (!c.ok) {
                d2 = false;
                why = to_string(var) + " p=" + std::to_string(p) + ": " + first_errors(c.errors);
            }
        }
    add("cellular d^2 = 0", d2, why);
    if (bal.balanced) {
        auto K = build_complex(X, n, Variant::BorelMoore);
        add("fundamental chain closed", n == 0 || zero(K.d[n].apply(fundamental_chain(X))));
    }
    if (X.compact()) {
        StratifiedSimplicialStructure S(X);
        bool sd2 = true;
        for (int p = 0; p <= n; ++p)
            for (auto var : {Variant::Standard, Variant::Cochain}) sd2 = sd2 && check_d_squared(build_complex(S, p, var)).ok;
        add("simplicial d^2 = 0", sd2);
        auto a = hodge_diamond(X, Variant::Standard), b = hodge_diamond(S, Variant::Standard);
        add("cellular and simplicial diamonds agree", a.betti == b.betti && a.torsion == b.torsion);
        bool wave = true;
        for (int p = 1; p <= n; ++p)
            for (int q = 1; q < n; ++q) wave = wave && wave_chain_map_sign(S, p, q).ok;
        add("wave commutes with the boundary", wave);
        bool lifts = true;
        auto K = build_complex(S, 1, Variant::Cochain);
        HomologyComputation H(K);
        for (int q = 0; q < n; ++q) {
            auto W = wave_chain(S, 1, q);
            std::vector<IntVec> cocycles = H.group(q).free_gens;
            for (auto& g : H.group(q).torsion_gens) cocycles.push_back(g);
            for (auto& c : cocycles) {
                ExtVec rhs = W.cochain(c);
                for (auto& x : rhs) x = q % 2 ? x : -x;
                lifts = lifts && cech_delta_via_lifts(S, q, c) == rhs;
            }
        }
        add("lift coboundary equals the signed wave", lifts);
        if (pd) {
            bool iso = true;
            std::string bad;
            for (int p = 0; p <= n; ++p)
                for (int q = 0; q <= n; ++q) {
                    auto R = pd_check(S, p, q);
                    if (!R.iso) {
                        iso = false;
                        bad = "p=" + std::to_string(p) + " q=" + std::to_string(q) + ": " + R.reason;
                    }
                }
            add("Poincare duality", iso, bad);
        }
    } else if (pd) {
        bool iso = true;
        std::string bad;
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) {
                auto R = pd_check_fan(X, p, q);
                if (!R.iso) {
                    iso = false;
                    bad = "p=" + std::to_string(p) + " q=" + std::to_string(q) + ": " + R.reason;
                }
            }
        add("Poincare duality (fan)", iso, bad);
    }
    return out;
}

}  // namespace trop
