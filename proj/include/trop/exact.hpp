#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace trop {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// dense row-major integer matrix
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols);
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols = -1);
    static IntMatrix from_cols(const std::vector<IntVec>& cols, int rows = -1);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    IntVec row(int i) const;
    IntVec col(int j) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    // row_i += k * row_j
    void add_row(int i, int j, const Int& k);
    void add_col(int i, int j, const Int& k);
    void negate_row(int i);
    void negate_col(int j);

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVec operator*(const IntMatrix& a, const IntVec& v);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

struct HermiteForm {
    IntMatrix H;  // U * M = H, echelon, positive pivots, reduced above pivots
    IntMatrix U;
    int rank = 0;
    std::vector<int> pivot_cols;
};
HermiteForm hermite_normal_form(const IntMatrix& M);

struct SmithForm {
    IntMatrix D, U, V;      // U * M * V = D
    IntMatrix Uinv, Vinv;
    std::vector<Int> diag;  // first `rank` entries are the nonzero invariant factors
    int rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& M);

// invariant factors only (no transforms)
std::vector<Int> invariant_factors(const IntMatrix& M);
int rank_of(const IntMatrix& M);
Int determinant(const IntMatrix& M);
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& M);

struct LatticeBasis {
    int ambient = 0;
    std::vector<IntVec> basis;
    int rank() const { return int(basis.size()); }
    IntMatrix matrix() const;  // ambient x rank, basis as columns
};

LatticeBasis saturate(const std::vector<IntVec>& gens, int ambient);
bool same_lattice(const LatticeBasis& a, const LatticeBasis& b);
// coordinates of v in the basis, if v lies in the lattice
std::optional<IntVec> lattice_coords(const LatticeBasis& L, const IntVec& v);
// integer R with R * B = I; requires a saturated basis
IntMatrix left_inverse(const LatticeBasis& L);
IntVec primitive(const IntVec& v);
Int content(const IntVec& v);

// exterior powers, lexicographic subset coordinates
long binom(int n, int k);
const std::vector<std::vector<int>>& subsets(int n, int p);
int subset_index(int n, int p, std::uint32_t mask);
IntVec wedge_vectors(const std::vector<IntVec>& vs, int n);
// a in wedge^p, b in wedge^q of Z^n
IntVec wedge(const IntVec& a, int p, const IntVec& b, int q, int n);
LatticeBasis wedge_power(const LatticeBasis& L, int p);
// compound matrix: induced map wedge^p Z^c -> wedge^p Z^r of an r x c matrix
IntMatrix compound(const IntMatrix& M, int p);
// <l; v> for l in wedge^p of the dual, v in wedge^pp
IntVec contract(const IntVec& l, int p, const IntVec& v, int pp, int n);
IntVec unit_wedge(int n);  // generator of the top power, always (1)

// element of Q + Q t_1 + ... + Q t_d, the t_i declared Q-independent
class ExtRat {
public:
    ExtRat() = default;
    ExtRat(long v) : c_{Rat(v)} { trim(); }
    ExtRat(const Int& v) : c_{Rat(v)} { trim(); }
    ExtRat(const Rat& v) : c_{v} { trim(); }
    static ExtRat formal(int i, const Rat& coef = 1);
    static ExtRat from_coeffs(std::vector<Rat> c);

    int dim() const { return c_.empty() ? 0 : int(c_.size()) - 1; }
    Rat coef(int i) const { return i < int(c_.size()) ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rat rational() const;  // throws unless is_rational

    ExtRat& operator+=(const ExtRat& o);
    ExtRat& operator-=(const ExtRat& o);
    ExtRat& operator*=(const Rat& k);
    ExtRat operator-() const;
    friend ExtRat operator+(ExtRat a, const ExtRat& b) { return a += b; }
    friend ExtRat operator-(ExtRat a, const ExtRat& b) { return a -= b; }
    friend ExtRat operator*(ExtRat a, const Rat& k) { return a *= k; }
    friend ExtRat operator*(const Rat& k, ExtRat a) { return a *= k; }
    friend ExtRat operator/(ExtRat a, const Rat& k) { return a *= Rat(1) / k; }
    // allowed only when one factor is rational
    friend ExtRat operator*(const ExtRat& a, const ExtRat& b);

    bool operator==(const ExtRat& o) const { return c_ == o.c_; }
    bool operator!=(const ExtRat& o) const { return !(*this == o); }
    // total order for containers only; carries no numeric meaning
    bool operator<(const ExtRat& o) const;

    std::string str() const;

private:
    void trim();
    std::vector<Rat> c_;
};

using ExtVec = std::vector<ExtRat>;

ExtVec to_ext(const IntVec& v);
// a in wedge^p, b in Q^n (extended); throws on products of two formal entries
ExtVec wedge_ext(const ExtVec& a, int p, const ExtVec& b, int n);

int rank_rational(std::vector<RatVec> rows);
// Q-rank of the kernel of M (rows x cols), one rational layer per formal basis element
int kernel_rank_extended(const std::vector<ExtVec>& M, int cols);
// Q-basis of that kernel
std::vector<RatVec> kernel_basis_extended(const std::vector<ExtVec>& M, int cols);
std::vector<RatVec> kernel_basis_rational(std::vector<RatVec> rows, int cols);

std::string to_string(const IntVec& v);

// column-major sparse matrix, entries kept nonzero and sorted by row
template <class T>
struct Sparse {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, T>>> col;

    Sparse() = default;
    Sparse(int r, int c) : rows(r), cols(c), col(c) {}
    void push(int i, int j, const T& v) {  // accumulate
        if (v == T(0)) return;
        auto& c = col[j];
        for (auto& e : c)
            if (e.first == i) {
                e.second += v;
                return;
            }
        c.emplace_back(i, v);
    }
    void normalize() {
        for (auto& c : col) {
            std::vector<std::pair<int, T>> out;
            std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
            for (auto& e : c) {
                if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
                else out.push_back(e);
            }
            c.clear();
            for (auto& e : out)
                if (!(e.second == T(0))) c.push_back(e);
        }
    }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (auto& c : col) n += c.size();
        return n;
    }
    Sparse transpose() const {
        Sparse t(cols, rows);
        for (int j = 0; j < cols; ++j)
            for (auto& [i, v] : col[j]) t.col[i].emplace_back(j, v);
        return t;
    }
    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(rows);
        for (int j = 0; j < cols; ++j) {
            if (x[j] == T(0)) continue;
            for (auto& [i, v] : col[j]) y[i] += v * x[j];
        }
        return y;
    }
};

using SparseInt = Sparse<Int>;

template <class T>
Sparse<T> operator*(const Sparse<T>& a, const Sparse<T>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("sparse product size mismatch");
    Sparse<T> c(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        std::map<int, T> acc;
        for (auto& [k, v] : b.col[j])
            for (auto& [i, w] : a.col[k]) acc[i] += w * v;
        for (auto& [i, v] : acc)
            if (!(v == T(0))) c.col[j].emplace_back(i, v);
    }
    return c;
}

IntMatrix to_dense(const SparseInt& m);
SparseInt to_sparse(const IntMatrix& m);

}  // namespace trop
