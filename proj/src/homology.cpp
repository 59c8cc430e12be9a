#include "trop/homology.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace trop {

bool ClassCoords::zero() const {
    for (auto& t : torsion)
        if (t != 0) return false;
    for (auto& f : free)
        if (f != 0) return false;
    return true;
}

std::string ClassCoords::str() const {
    std::ostringstream os;
    os << "torsion(";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
    os << ") free" << to_string(free);
    return os.str();
}

std::string HomologyGroup::str() const {
    std::ostringstream os;
    os << betti;
    if (!torsion.empty()) {
        os << " [";
        for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------- reduction

namespace {

struct Work {
    // d[k] : C_k -> C_{k-1}; columns as row -> value, rows as column sets
    std::vector<std::vector<std::map<int, Int>>> cols;
    std::vector<std::vector<std::set<int>>> rows;
    std::vector<std::vector<char>> alive;
};

}  // namespace

HomologyComputation::HomologyComputation(const TropChainComplex& K) {
    cochain_ = K.variant == Variant::Cochain;
    top_ = K.top;
    const int N = top_;
    dims_.assign(N + 1, 0);
    d_.assign(N + 1, SparseInt());
    for (int k = 0; k <= N; ++k) dims_[k] = K.dims[internal(k)];
    d_[0] = SparseInt(0, dims_[0]);
    for (int k = 1; k <= N; ++k) {
        // chain: d_k = K.d[k]; cochain: internal k <-> external N-k, d_k = d^{N-k}
        d_[k] = cochain_ ? K.d[N - k] : K.d[k];
        if (d_[k].rows != dims_[k - 1] || d_[k].cols != dims_[k])
            throw std::logic_error("HomologyComputation: inconsistent complex sizes");
    }

    Work w;
    w.cols.assign(N + 1, {});
    w.rows.assign(N + 1, {});
    w.alive.assign(N + 1, {});
    for (int k = 0; k <= N; ++k) w.alive[k].assign(dims_[k], 1);
    for (int k = 1; k <= N; ++k) {
        w.cols[k].assign(dims_[k], {});
        w.rows[k].assign(dims_[k - 1], {});
        for (int j = 0; j < dims_[k]; ++j)
            for (auto& [i, v] : d_[k].col[j]) {
                w.cols[k][j][i] = v;
                w.rows[k][i].insert(j);
            }
    }
    auto kill_row = [&](int k, int i) {  // row i of d_k
        if (k < 1 || k > N) return;
        for (int j : w.rows[k][i]) w.cols[k][j].erase(i);
        w.rows[k][i].clear();
    };
    auto kill_col = [&](int k, int j) {
        if (k < 1 || k > N) return;
        for (auto& [i, v] : w.cols[k][j]) w.rows[k][i].erase(j);
        w.cols[k][j].clear();
    };
    for (int k = N; k >= 1; --k) {
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<std::pair<std::size_t, int>> order;
            for (int j = 0; j < dims_[k]; ++j)
                if (w.alive[k][j] && !w.cols[k][j].empty()) order.push_back({w.cols[k][j].size(), j});
            std::sort(order.begin(), order.end());
            for (auto& [sz, a] : order) {
                (void)sz;
                if (!w.alive[k][a]) continue;
                auto& col = w.cols[k][a];
                int b = -1;
                std::size_t best = SIZE_MAX;
                for (auto& [i, v] : col)
                    if ((v == 1 || v == -1) && w.rows[k][i].size() < best) {
                        best = w.rows[k][i].size();
                        b = i;
                    }
                if (b < 0) continue;
                Step s;
                s.k = k;
                s.a = a;
                s.b = b;
                s.alpha = col.at(b);
                for (auto& [i, v] : col)
                    if (i != b) s.col.push_back({i, v});
                for (int j : w.rows[k][b])
                    if (j != a) s.row.push_back({j, w.cols[k][j].at(b)});
                // d' = d - col * row / alpha
                for (auto& [j, rv] : s.row) {
                    Int f = rv * s.alpha;  // alpha = +-1, so 1/alpha = alpha
                    auto& cj = w.cols[k][j];
                    for (auto& [i, cv] : s.col) {
                        Int nv = (cj.count(i) ? cj[i] : Int(0)) - cv * f;
                        if (nv == 0) {
                            if (cj.erase(i)) w.rows[k][i].erase(j);
                        } else {
                            cj[i] = nv;
                            w.rows[k][i].insert(j);
                        }
                    }
                }
                kill_col(k, a);
                kill_row(k, b);
                kill_row(k + 1, a);
                kill_col(k - 1, b);
                w.alive[k][a] = 0;
                w.alive[k - 1][b] = 0;
                steps_.push_back(std::move(s));
                progress = true;
            }
        }
    }

    // residual complex, dense
    res_.assign(N + 1, Residual());
    std::vector<std::vector<int>> pos(N + 1);
    for (int k = 0; k <= N; ++k) {
        pos[k].assign(dims_[k], -1);
        for (int i = 0; i < dims_[k]; ++i)
            if (w.alive[k][i]) {
                pos[k][i] = int(res_[k].alive.size());
                res_[k].alive.push_back(i);
            }
    }
    auto dense = [&](int k) {
        int r = k >= 1 ? int(res_[k - 1].alive.size()) : 0;
        int c = k <= N ? int(res_[k].alive.size()) : 0;
        IntMatrix M(r, c);
        if (k < 1 || k > N) return M;
        for (int jj = 0; jj < c; ++jj)
            for (auto& [i, v] : w.cols[k][res_[k].alive[jj]]) M(pos[k - 1][i], jj) = v;
        return M;
    };
    groups_.assign(N + 1, HomologyGroup());
    for (int q = 0; q <= N; ++q) {
        Residual& R = res_[q];
        int n = int(R.alive.size());
        IntMatrix Dq = dense(q);             // C_q -> C_{q-1}
        IntMatrix Dq1 = q < N ? dense(q + 1) : IntMatrix(n, 0);
        int rank = 0;
        IntMatrix V = IntMatrix::identity(n), Vinv = IntMatrix::identity(n);
        if (Dq.rows() > 0 && n > 0) {
            auto sf = smith_normal_form(Dq);
            rank = sf.rank;
            V = sf.V;
            Vinv = sf.Vinv;
        }
        int z = n - rank;
        R.Z = IntMatrix(n, z);
        R.Vtail_inv = IntMatrix(z, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < z; ++j) {
                R.Z(i, j) = V(i, rank + j);
                R.Vtail_inv(j, i) = Vinv(rank + j, i);
            }
        IntMatrix Bp = R.Vtail_inv * Dq1;  // z x dim C_{q+1}
        R.U2 = IntMatrix::identity(z);
        R.U2inv = IntMatrix::identity(z);
        R.diag.clear();
        R.rank2 = 0;
        if (z > 0 && Bp.cols() > 0) {
            auto s2 = smith_normal_form(Bp);
            R.U2 = s2.U;
            R.U2inv = s2.Uinv;
            R.rank2 = s2.rank;
            R.diag.assign(s2.diag.begin(), s2.diag.begin() + s2.rank);
        }
        HomologyGroup& G = groups_[cochain_ ? N - q : q];
        G.q = cochain_ ? N - q : q;
        G.betti = z - R.rank2;
        auto lift = [&](int i) {
            IntVec c(n);
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < z; ++j) c[r] += R.Z(r, j) * R.U2inv(j, i);
            IntVec x(dims_[q]);
            for (int r = 0; r < n; ++r) x[R.alive[r]] = c[r];
            return backward(q, x);
        };
        for (int i = 0; i < R.rank2; ++i)
            if (abs(R.diag[i]) > 1) {
                G.torsion.push_back(abs(R.diag[i]));
                G.torsion_gens.push_back(lift(i));
            }
        for (int i = R.rank2; i < z; ++i) G.free_gens.push_back(lift(i));
    }
}

template <class T>
std::vector<T> HomologyComputation::forward(int q, std::vector<T> z) const {
    for (auto& s : steps_) {
        if (s.k == q) {
            z[s.a] = T(0);
        } else if (s.k - 1 == q) {
            T yb = z[s.b];
            if (!(yb == T(0))) {
                T f = yb * T(s.alpha);
                for (auto& [i, v] : s.col) z[i] -= f * T(v);
            }
            z[s.b] = T(0);
        }
    }
    return z;
}

template <class T>
std::vector<T> HomologyComputation::backward(int q, std::vector<T> x) const {
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        const Step& s = *it;
        if (s.k != q) continue;
        T acc(0);
        for (auto& [j, v] : s.row) acc += T(v) * x[j];
        x[s.a] -= acc * T(s.alpha);
    }
    return x;
}

bool HomologyComputation::is_cycle(int q, const IntVec& z) const {
    int k = internal(q);
    if (int(z.size()) != dims_[k]) throw std::invalid_argument("chain of wrong size");
    if (k == 0) return true;
    for (auto& v : d_[k].apply(z))
        if (v != 0) return false;
    return true;
}

ClassCoords HomologyComputation::class_of(int q, const IntVec& z) const {
    if (!is_cycle(q, z)) throw std::invalid_argument("class_of: chain is not a cycle");
    int k = internal(q);
    const Residual& R = res_[k];
    IntVec f = forward(k, z);
    IntVec r(R.alive.size());
    for (std::size_t i = 0; i < R.alive.size(); ++i) r[i] = f[R.alive[i]];
    IntVec c = R.U2 * (R.Vtail_inv * r);
    ClassCoords out;
    for (int i = 0; i < R.rank2; ++i) {
        Int d = abs(R.diag[i]);
        if (d > 1) {
            Int m;
            mpz_fdiv_r(m.get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
            out.torsion.push_back(m);
        }
    }
    for (int i = R.rank2; i < int(c.size()); ++i) out.free.push_back(c[i]);
    return out;
}

RatVec HomologyComputation::free_coords(int q, const RatVec& z) const {
    int k = internal(q);
    if (int(z.size()) != dims_[k]) throw std::invalid_argument("chain of wrong size");
    if (k > 0) {
        std::vector<Rat> dz(d_[k].rows);
        for (int j = 0; j < d_[k].cols; ++j)
            for (auto& [i, v] : d_[k].col[j]) dz[i] += Rat(v) * z[j];
        for (auto& v : dz)
            if (v != 0) throw std::invalid_argument("free_coords: chain is not a cycle");
    }
    const Residual& R = res_[k];
    RatVec f = forward(k, z);
    int n = int(R.alive.size()), zc = R.Z.cols();
    RatVec y(zc);
    for (int j = 0; j < zc; ++j)
        for (int i = 0; i < n; ++i) y[j] += Rat(R.Vtail_inv(j, i)) * f[R.alive[i]];
    RatVec out;
    for (int i = R.rank2; i < zc; ++i) {
        Rat c = 0;
        for (int j = 0; j < zc; ++j) c += Rat(R.U2(i, j)) * y[j];
        out.push_back(c);
    }
    return out;
}

IntVec HomologyComputation::chain_of(int q, const ClassCoords& c) const {
    const HomologyGroup& G = group(q);
    if (c.torsion.size() != G.torsion.size() || int(c.free.size()) != G.betti)
        throw std::invalid_argument("chain_of: coordinate shape");
    IntVec x(dims_[internal(q)]);
    auto addm = [&](const IntVec& g, const Int& m) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += m * g[i];
    };
    for (std::size_t i = 0; i < G.torsion.size(); ++i) addm(G.torsion_gens[i], c.torsion[i]);
    for (int i = 0; i < G.betti; ++i) addm(G.free_gens[i], c.free[i]);
    return x;
}

int HomologyComputation::residual_size(int q) const { return int(res_[internal(q)].alive.size()); }

// ---------------------------------------------------------------- diamonds and cache

namespace {

std::mutex cache_mu;
std::optional<std::string> cache_override;

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

constexpr const char* kCacheVersion = "homology-v1";

}  // namespace

void set_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lk(cache_mu);
    cache_override = dir;
}

std::string cache_dir() {
    std::lock_guard<std::mutex> lk(cache_mu);
    if (cache_override) return *cache_override;
    const char* e = std::getenv("TROP_CACHE_DIR");
    return e ? std::string(e) : std::string();
}

std::string complex_hash(const TropChainComplex& K) {
    std::ostringstream os;
    os << kCacheVersion << ';' << to_string(K.variant) << ';' << K.p << ';' << K.top << ';';
    for (int d : K.dims) os << d << ',';
    for (auto& m : K.d) {
        os << '|' << m.rows << 'x' << m.cols << ':';
        for (int j = 0; j < m.cols; ++j)
            for (auto& [i, v] : m.col[j]) os << j << ' ' << i << ' ' << v << ';';
    }
    std::string s = os.str();
    std::ostringstream h;
    h << std::hex << std::setw(16) << std::setfill('0') << fnv(s) << std::setw(16) << fnv(s + "#");
    return h.str();
}

namespace {

using nlohmann::json;

std::optional<std::vector<HomologyGroup>> cache_load(const std::string& key) {
    std::string dir = cache_dir();
    if (dir.empty()) return std::nullopt;
    std::ifstream in(std::filesystem::path(dir) / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        json j = json::parse(in);
        if (j.at("version") != kCacheVersion) return std::nullopt;
        std::vector<HomologyGroup> out;
        for (auto& g : j.at("groups")) {
            HomologyGroup G;
            G.q = g.at("q");
            G.betti = g.at("betti");
            for (auto& t : g.at("torsion")) G.torsion.push_back(Int(t.get<std::string>()));
            out.push_back(G);
        }
        return out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void cache_store(const std::string& key, const std::vector<HomologyGroup>& gs) {
    std::string dir = cache_dir();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    json j;
    j["version"] = kCacheVersion;
    j["groups"] = json::array();
    for (auto& G : gs) {
        json t = json::array();
        for (auto& x : G.torsion) t.push_back(x.get_str());
        j["groups"].push_back({{"q", G.q}, {"betti", G.betti}, {"torsion", t}});
    }
    auto final_path = std::filesystem::path(dir) / (key + ".json");
    auto tmp = final_path;
    tmp += ".tmp" + std::to_string(std::hash<std::string>()(key + std::to_string(std::rand())));
    {
        std::ofstream out(tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

std::vector<HomologyGroup> groups_cached(const TropChainComplex& K) {
    std::string key = complex_hash(K);
    if (auto c = cache_load(key)) return *c;
    HomologyComputation H(K);
    std::vector<HomologyGroup> gs;
    for (int q = 0; q <= K.top; ++q) {
        HomologyGroup G = H.group(q);
        G.torsion_gens.clear();
        G.free_gens.clear();
        gs.push_back(G);
    }
    cache_store(key, gs);
    return gs;
}

template <class Src>
Diamond diamond_of(const Src& S, int n, int r, Variant v) {
    Diamond D;
    D.n = n;
    int P = std::max(n, 0);
    (void)r;
    D.betti.assign(P + 1, std::vector<int>(n + 1, 0));
    D.torsion.assign(P + 1, std::vector<std::vector<Int>>(n + 1));
    for (int p = 0; p <= P; ++p) {
        auto K = build_complex(S, p, v);
        auto gs = groups_cached(K);
        for (int q = 0; q <= n && q < int(gs.size()); ++q) {
            D.betti[p][q] = gs[q].betti;
            D.torsion[p][q] = gs[q].torsion;
        }
    }
    return D;
}

}  // namespace

Diamond hodge_diamond(const TropicalSpace& X, Variant v) { return diamond_of(X, X.dim(), X.chart_rank(), v); }

Diamond hodge_diamond(const StratifiedSimplicialStructure& S, Variant v) {
    return diamond_of(S, S.dim(), S.space().chart_rank(), v);
}

std::string Diamond::text() const {
    std::ostringstream os;
    auto cell = [&](int p, int q) {
        std::ostringstream c;
        c << betti[p][q];
        if (!torsion[p][q].empty()) {
            c << " [";
            for (std::size_t i = 0; i < torsion[p][q].size(); ++i) c << (i ? "," : "") << torsion[p][q][i];
            c << "]";
        }
        return c.str();
    };
    std::size_t w = 1;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) w = std::max(w, cell(p, q).size());
    for (int q = n; q >= 0; --q) {
        os << "q=" << q << " |";
        for (int p = 0; p <= n; ++p) os << ' ' << std::setw(int(w)) << cell(p, q);
        os << '\n';
    }
    os << "     ";
    for (int p = 0; p <= n; ++p) os << ' ' << std::setw(int(w)) << ("p" + std::to_string(p));
    os << '\n';
    return os.str();
}

std::string Diamond::csv() const {
    std::ostringstream os;
    os << "q";
    for (int p = 0; p <= n; ++p) os << ",p" << p;
    os << '\n';
    for (int q = 0; q <= n; ++q) {
        os << q;
        for (int p = 0; p <= n; ++p) {
            os << ',' << betti[p][q];
            if (!torsion[p][q].empty()) {
                os << " [";
                for (std::size_t i = 0; i < torsion[p][q].size(); ++i) os << (i ? " " : "") << torsion[p][q][i];
                os << ']';
            }
        }
        os << '\n';
    }
    return os.str();
}

template std::vector<Int> HomologyComputation::forward<Int>(int, std::vector<Int>) const;
template std::vector<Rat> HomologyComputation::forward<Rat>(int, std::vector<Rat>) const;
template std::vector<Int> HomologyComputation::backward<Int>(int, std::vector<Int>) const;
template std::vector<Rat> HomologyComputation::backward<Rat>(int, std::vector<Rat>) const;

}  // namespace trop
