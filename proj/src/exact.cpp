#include "trop/exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace trop {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, int cols) {
    if (cols < 0) cols = rows.empty() ? 0 : int(rows[0].size());
    IntMatrix m(int(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
        if (int(rows[i].size()) != cols) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols, int rows) {
    return from_rows(cols, rows).transpose();
}

IntVec IntMatrix::row(int i) const { return IntVec(a_.begin() + std::size_t(i) * cols_, a_.begin() + std::size_t(i + 1) * cols_); }

IntVec IntMatrix::col(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    for (auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}
void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}
void IntMatrix::add_row(int i, int j, const Int& k) {
    if (k == 0) return;
    for (int c = 0; c < cols_; ++c)
        if ((*this)(j, c) != 0) (*this)(i, c) += k * (*this)(j, c);
}
void IntMatrix::add_col(int i, int j, const Int& k) {
    if (k == 0) return;
    for (int r = 0; r < rows_; ++r)
        if ((*this)(r, j) != 0) (*this)(r, i) += k * (*this)(r, j);
}
void IntMatrix::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}
void IntMatrix::negate_col(int j) {
    for (int r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product size mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& x = a(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += x * b(k, j);
        }
    return c;
}

IntVec operator*(const IntMatrix& a, const IntVec& v) {
    if (a.cols() != int(v.size())) throw std::invalid_argument("matrix-vector size mismatch");
    IntVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            if (v[k] != 0 && a(i, k) != 0) r[i] += a(i, k) * v[k];
    return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack rows");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) { return hstack(a.transpose(), b.transpose()).transpose(); }

// ---------------------------------------------------------------- Hermite

HermiteForm hermite_normal_form(const IntMatrix& M) {
    HermiteForm hf;
    hf.H = M;
    hf.U = IntMatrix::identity(M.rows());
    IntMatrix& H = hf.H;
    IntMatrix& U = hf.U;
    int r = 0;
    for (int c = 0; c < H.cols() && r < H.rows(); ++c) {
        // gcd elimination below row r in column c
        while (true) {
            int best = -1;
            for (int i = r; i < H.rows(); ++i)
                if (H(i, c) != 0 && (best < 0 || abs(H(i, c)) < abs(H(best, c)))) best = i;
            if (best < 0) break;
            H.swap_rows(r, best);
            U.swap_rows(r, best);
            bool done = true;
            for (int i = r + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
                H.add_row(i, r, -q);
                U.add_row(i, r, -q);
                if (H(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            U.negate_row(r);
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
            H.add_row(i, r, -q);
            U.add_row(i, r, -q);
        }
        hf.pivot_cols.push_back(c);
        ++r;
    }
    hf.rank = r;
    return hf;
}

// ---------------------------------------------------------------- Smith

namespace {

struct SmithWork {
    IntMatrix A, U, V, Ui, Vi;
    bool track;
    void row_add(int i, int j, const Int& k) {  // row_i += k row_j
        A.add_row(i, j, k);
        if (track) {
            U.add_row(i, j, k);
            Ui.add_col(j, i, -k);
        }
    }
    void col_add(int i, int j, const Int& k) {  // col_i += k col_j
        A.add_col(i, j, k);
        if (track) {
            V.add_col(i, j, k);
            Vi.add_row(j, i, -k);
        }
    }
    void row_swap(int i, int j) {
        A.swap_rows(i, j);
        if (track) {
            U.swap_rows(i, j);
            Ui.swap_cols(i, j);
        }
    }
    void col_swap(int i, int j) {
        A.swap_cols(i, j);
        if (track) {
            V.swap_cols(i, j);
            Vi.swap_rows(i, j);
        }
    }
    void row_neg(int i) {
        A.negate_row(i);
        if (track) {
            U.negate_row(i);
            Ui.negate_col(i);
        }
    }
};

std::vector<Int> run_smith(SmithWork& w, int& rank) {
    IntMatrix& A = w.A;
    const int m = A.rows(), n = A.cols();
    int t = 0;
    while (t < m && t < n) {
        // minimal |entry| pivot, ties broken by fewest nonzeros in its row and column
        int bi = -1, bj = -1;
        long bestfill = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (A(i, j) == 0) continue;
                int cmp = bi < 0 ? -1 : mpz_cmpabs(A(i, j).get_mpz_t(), A(bi, bj).get_mpz_t());
                if (cmp > 0) continue;
                long fill = 0;
                for (int k = t; k < n; ++k) fill += A(i, k) != 0;
                for (int k = t; k < m; ++k) fill += A(k, j) != 0;
                if (cmp < 0 || fill < bestfill) {
                    bi = i;
                    bj = j;
                    bestfill = fill;
                }
            }
        if (bi < 0) break;
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        while (true) {
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
                w.row_add(i, t, -q);
                if (A(i, t) != 0) {
                    clean = false;
                    w.row_swap(t, i);
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
                w.col_add(j, t, -q);
                if (A(t, j) != 0) {
                    clean = false;
                    w.col_swap(t, j);
                }
            }
            if (!clean) continue;
            // divisibility of the remaining block
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            w.row_add(t, bad, 1);
        }
        if (A(t, t) < 0) w.row_neg(t);
        ++t;
    }
    rank = t;
    std::vector<Int> d;
    for (int i = 0; i < std::min(m, n); ++i) d.push_back(A(i, i));
    return d;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithWork w{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols()), IntMatrix::identity(M.rows()),
                IntMatrix::identity(M.cols()), true};
    SmithForm s;
    s.diag = run_smith(w, s.rank);
    s.D = std::move(w.A);
    s.U = std::move(w.U);
    s.V = std::move(w.V);
    s.Uinv = std::move(w.Ui);
    s.Vinv = std::move(w.Vi);
    return s;
}

std::vector<Int> invariant_factors(const IntMatrix& M) {
    SmithWork w{M, {}, {}, {}, {}, false};
    int rank = 0;
    auto d = run_smith(w, rank);
    d.resize(rank);
    return d;
}

int rank_of(const IntMatrix& M) {
    std::vector<RatVec> rows(M.rows(), RatVec(M.cols()));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) rows[i][j] = M(i, j);
    return rank_rational(std::move(rows));
}

Int determinant(const IntMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = M.rows();
    std::vector<RatVec> a(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = M(i, j);
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return Int(det);
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& M) {
    if (M.rows() != M.cols()) return std::nullopt;
    auto s = smith_normal_form(M);
    if (s.rank != M.rows()) return std::nullopt;
    for (auto& d : s.diag)
        if (d != 1) return std::nullopt;
    // U M V = I  =>  M^{-1} = V U
    return s.V * s.U;
}

// ---------------------------------------------------------------- lattices

IntMatrix LatticeBasis::matrix() const {
    IntMatrix m(ambient, rank());
    for (int j = 0; j < rank(); ++j)
        for (int i = 0; i < ambient; ++i) m(i, j) = basis[j][i];
    return m;
}

LatticeBasis saturate(const std::vector<IntVec>& gens, int ambient) {
    LatticeBasis L;
    L.ambient = ambient;
    std::vector<IntVec> nz;
    for (auto& g : gens) {
        if (int(g.size()) != ambient) throw std::invalid_argument("saturate: generator of wrong length");
        bool z = true;
        for (auto& x : g) z = z && x == 0;
        if (!z) nz.push_back(g);
    }
    if (nz.empty()) return L;
    auto s = smith_normal_form(IntMatrix::from_rows(nz, ambient));
    std::vector<IntVec> rows;
    for (int i = 0; i < s.rank; ++i) rows.push_back(s.Vinv.row(i));
    auto h = hermite_normal_form(IntMatrix::from_rows(rows, ambient));
    for (int i = 0; i < h.rank; ++i) L.basis.push_back(h.H.row(i));
    return L;
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
    if (a.ambient != b.ambient || a.rank() != b.rank()) return false;
    for (auto& v : a.basis)
        if (!lattice_coords(b, v)) return false;
    for (auto& v : b.basis)
        if (!lattice_coords(a, v)) return false;
    return true;
}

std::optional<IntVec> lattice_coords(const LatticeBasis& L, const IntVec& v) {
    if (int(v.size()) != L.ambient) throw std::invalid_argument("lattice_coords: wrong length");
    if (L.rank() == 0) {
        for (auto& x : v)
            if (x != 0) return std::nullopt;
        return IntVec{};
    }
    // solve B c = v via Smith form of B
    IntMatrix B = L.matrix();
    auto s = smith_normal_form(B);
    IntVec w = s.U * v;
    IntVec y(B.cols());
    for (int i = 0; i < B.rows(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), s.diag[i].get_mpz_t())) return std::nullopt;
            y[i] = w[i] / s.diag[i];
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

IntMatrix left_inverse(const LatticeBasis& L) {
    IntMatrix B = L.matrix();
    int k = B.cols();
    if (k == 0) return IntMatrix(0, L.ambient);
    auto s = smith_normal_form(B);
    if (s.rank != k) throw std::invalid_argument("left_inverse: dependent basis");
    for (int i = 0; i < k; ++i)
        if (s.diag[i] != 1) throw std::invalid_argument("left_inverse: lattice not saturated");
    IntMatrix P(k, B.rows());
    for (int i = 0; i < k; ++i) P(i, i) = 1;
    return s.V * P * s.U;
}

Int content(const IntVec& v) {
    Int g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = content(v);
    if (g == 0) return v;
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

// ---------------------------------------------------------------- wedges

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {
struct SubsetTable {
    std::vector<std::vector<int>> subs;
    std::vector<int> index;  // by mask
};
std::mutex g_sub_mu;
std::map<std::pair<int, int>, SubsetTable> g_subs;

const SubsetTable& table(int n, int p) {
    if (n < 0 || n > 20 || p < 0) throw std::invalid_argument("subset table out of range");
    std::lock_guard<std::mutex> lk(g_sub_mu);
    auto key = std::make_pair(n, p);
    auto it = g_subs.find(key);
    if (it != g_subs.end()) return it->second;
    SubsetTable t;
    t.index.assign(std::size_t(1) << n, -1);
    std::vector<int> cur;
    // lexicographic enumeration
    auto rec = [&](auto&& self, int start) -> void {
        if (int(cur.size()) == p) {
            std::uint32_t m = 0;
            for (int x : cur) m |= 1u << x;
            t.index[m] = int(t.subs.size());
            t.subs.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return g_subs.emplace(key, std::move(t)).first->second;
}
}  // namespace

const std::vector<std::vector<int>>& subsets(int n, int p) { return table(n, p).subs; }
int subset_index(int n, int p, std::uint32_t mask) { return table(n, p).index.at(mask); }

namespace {
// sign of the permutation sorting the concatenation of disjoint sorted I and J
int merge_sign(std::uint32_t I, std::uint32_t J) {
    int inv = 0;
    for (std::uint32_t j = J; j; j &= j - 1) {
        int b = __builtin_ctz(j);
        inv += __builtin_popcount(I >> (b + 1));  // elements of I larger than b
    }
    return inv % 2 ? -1 : 1;
}
std::uint32_t mask_of(const std::vector<int>& s) {
    std::uint32_t m = 0;
    for (int x : s) m |= 1u << x;
    return m;
}
}  // namespace

IntVec wedge(const IntVec& a, int p, const IntVec& b, int q, int n) {
    auto& sa = subsets(n, p);
    auto& sb = subsets(n, q);
    if (a.size() != sa.size() || b.size() != sb.size()) throw std::invalid_argument("wedge: size mismatch");
    IntVec r(binom(n, p + q));
    if (p + q > n) return r;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (a[i] == 0) continue;
        auto mi = mask_of(sa[i]);
        for (std::size_t j = 0; j < sb.size(); ++j) {
            if (b[j] == 0) continue;
            auto mj = mask_of(sb[j]);
            if (mi & mj) continue;
            int k = subset_index(n, p + q, mi | mj);
            Int t = a[i] * b[j];
            if (merge_sign(mi, mj) < 0) t = -t;
            r[k] += t;
        }
    }
    return r;
}

IntVec wedge_vectors(const std::vector<IntVec>& vs, int n) {
    IntVec acc{1};
    int deg = 0;
    for (auto& v : vs) {
        if (int(v.size()) != n) throw std::invalid_argument("wedge_vectors: wrong length");
        acc = wedge(acc, deg, v, 1, n);
        ++deg;
    }
    return acc;
}

LatticeBasis wedge_power(const LatticeBasis& L, int p) {
    if (p < 0 || p > L.rank()) throw std::invalid_argument("wedge_power: degree out of range");
    LatticeBasis W;
    W.ambient = int(binom(L.ambient, p));
    for (auto& s : subsets(L.rank(), p)) {
        std::vector<IntVec> vs;
        for (int i : s) vs.push_back(L.basis[i]);
        W.basis.push_back(wedge_vectors(vs, L.ambient));
    }
    return W;
}

IntMatrix compound(const IntMatrix& M, int p) {
    int r = M.rows(), c = M.cols();
    auto& sr = subsets(r, p);
    auto& sc = subsets(c, p);
    IntMatrix C(int(sr.size()), int(sc.size()));
    for (std::size_t j = 0; j < sc.size(); ++j) {
        std::vector<IntVec> vs;
        for (int k : sc[j]) vs.push_back(M.col(k));
        IntVec w = wedge_vectors(vs, r);
        for (std::size_t i = 0; i < sr.size(); ++i) C(int(i), int(j)) = w[i];
    }
    return C;
}

IntVec contract(const IntVec& l, int p, const IntVec& v, int pp, int n) {
    if (p > pp) throw std::invalid_argument("contract: p > p'");
    auto& sl = subsets(n, p);
    auto& sv = subsets(n, pp);
    if (l.size() != sl.size() || v.size() != sv.size()) throw std::invalid_argument("contract: size mismatch");
    IntVec r(binom(n, pp - p));
    for (std::size_t i = 0; i < sl.size(); ++i) {
        if (l[i] == 0) continue;
        auto mi = mask_of(sl[i]);
        for (std::size_t j = 0; j < sv.size(); ++j) {
            if (v[j] == 0) continue;
            auto mj = mask_of(sv[j]);
            if ((mi & mj) != mi) continue;
            auto mk = mj & ~mi;
            // <m, <l;v>> = <l ^ m, v>: e_I^* ^ e_K^* vs e_J
            Int t = l[i] * v[j];
            if (merge_sign(mi, mk) < 0) t = -t;
            r[subset_index(n, pp - p, mk)] += t;
        }
    }
    return r;
}

IntVec unit_wedge(int) { return IntVec{1}; }

std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

IntMatrix to_dense(const SparseInt& m) {
    IntMatrix d(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j)
        for (auto& [i, v] : m.col[j]) d(i, j) += v;
    return d;
}

SparseInt to_sparse(const IntMatrix& m) {
    SparseInt s(m.rows(), m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) s.col[j].emplace_back(i, m(i, j));
    return s;
}

// ---------------------------------------------------------------- ExtRat

ExtRat ExtRat::formal(int i, const Rat& coef) {
    if (i < 0) throw std::invalid_argument("formal index");
    ExtRat e;
    e.c_.assign(i + 1, Rat(0));
    e.c_[i] = coef;
    e.trim();
    return e;
}

ExtRat ExtRat::from_coeffs(std::vector<Rat> c) {
    ExtRat e;
    e.c_ = std::move(c);
    e.trim();
    return e;
}

void ExtRat::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat ExtRat::rational() const {
    if (!is_rational()) throw std::domain_error("ExtRat is not rational: " + str());
    return c_.empty() ? Rat(0) : c_[0];
}

ExtRat& ExtRat::operator+=(const ExtRat& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}
ExtRat& ExtRat::operator-=(const ExtRat& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}
ExtRat& ExtRat::operator*=(const Rat& k) {
    for (auto& x : c_) x *= k;
    trim();
    return *this;
}
ExtRat ExtRat::operator-() const {
    ExtRat r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

ExtRat operator*(const ExtRat& a, const ExtRat& b) {
    if (a.is_rational()) return b * a.rational();
    if (b.is_rational()) return a * b.rational();
    throw std::domain_error("product of two non-constant formal elements");
}

bool ExtRat::operator<(const ExtRat& o) const {
    std::size_t n = std::max(c_.size(), o.c_.size());
    for (std::size_t i = 0; i < n; ++i) {
        Rat x = coef(int(i)), y = o.coef(int(i));
        if (x != y) return x < y;
    }
    return false;
}

std::string ExtRat::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::string v = c_[i].get_str();
        if (!s.empty()) s += v[0] == '-' ? "" : "+";
        s += i == 0 ? v : (v + "*t" + std::to_string(i));
    }
    return s;
}

// ---------------------------------------------------------------- rational ranks

namespace {
// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(std::vector<RatVec>& a, int cols) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < int(a.size()); ++c) {
        int p = -1;
        for (int i = r; i < int(a.size()); ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < int(a.size()); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = c; j < cols; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::vector<RatVec> layers(const std::vector<ExtVec>& M, int cols) {
    int d = 0;
    for (auto& row : M) {
        if (int(row.size()) != cols) throw std::invalid_argument("extended matrix: ragged row");
        for (auto& x : row) d = std::max(d, x.dim());
    }
    std::vector<RatVec> out;
    for (auto& row : M)
        for (int k = 0; k <= d; ++k) {
            RatVec r(cols);
            for (int j = 0; j < cols; ++j) r[j] = row[j].coef(k);
            out.push_back(std::move(r));
        }
    return out;
}
}  // namespace

int rank_rational(std::vector<RatVec> rows) {
    if (rows.empty()) return 0;
    int cols = int(rows[0].size());
    return int(rref(rows, cols).size());
}

std::vector<RatVec> kernel_basis_rational(std::vector<RatVec> rows, int cols) {
    auto piv = rref(rows, cols);
    std::vector<char> is_piv(cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<RatVec> ker;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        RatVec v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][f];
        ker.push_back(std::move(v));
    }
    return ker;
}

int kernel_rank_extended(const std::vector<ExtVec>& M, int cols) {
    return cols - rank_rational(layers(M, cols));
}

std::vector<RatVec> kernel_basis_extended(const std::vector<ExtVec>& M, int cols) {
    return kernel_basis_rational(layers(M, cols), cols);
}

ExtVec wedge_ext(const ExtVec& a, int p, const ExtVec& b, int n) {
    auto& sa = subsets(n, p);
    ExtVec r(binom(n, p + 1));
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (a[i].is_zero()) continue;
        std::uint32_t mi = 0;
        for (int x : sa[i]) mi |= 1u << x;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero() || (mi >> j & 1)) continue;
            int above = __builtin_popcount(mi >> (j + 1));
            ExtRat t = a[i] * b[j];
            if (above % 2) t = -t;
            r[subset_index(n, p + 1, mi | (1u << j))] += t;
        }
    }
    return r;
}

ExtVec to_ext(const IntVec& v) {
    ExtVec e(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) e[i] = ExtRat(v[i]);
    return e;
}


}  // namespace trop
