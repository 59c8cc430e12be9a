#include "trop/space.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trop {

XPoint XPoint::finite(const ExtVec& v) {
    XPoint p(int(v.size()));
    p.x = v;
    return p;
}

std::vector<int> XPoint::sed() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
        if (inf[i]) s.push_back(i);
    return s;
}

bool XPoint::operator<(const XPoint& o) const {
    if (inf != o.inf) return inf < o.inf;
    for (std::size_t i = 0; i < x.size() && i < o.x.size(); ++i) {
        if (inf[i]) continue;
        if (x[i] != o.x[i]) return x[i] < o.x[i];
    }
    return x.size() < o.x.size();
}

std::string XPoint::str() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) s += (i ? "," : "") + (inf[i] ? std::string("-inf") : x[i].str());
    return s + ")";
}

XPoint apply_affine(const IntMatrix& A, const ExtVec& b, const XPoint& p) {
    if (A.cols() != p.size() || A.rows() != int(b.size())) throw std::invalid_argument("apply_affine: size mismatch");
    XPoint q(A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        ExtRat acc = b[i];
        bool inf = false;
        for (int j = 0; j < A.cols(); ++j) {
            if (A(i, j) == 0) continue;
            if (p.inf[j]) {
                if (A(i, j) < 0) throw std::domain_error("apply_affine: +inf produced");
                inf = true;
            } else {
                acc += p.x[j] * Rat(A(i, j));
            }
        }
        q.inf[i] = inf;
        q.x[i] = inf ? ExtRat() : acc;
    }
    return q;
}

IntMatrix sed_projection(int r, const std::vector<int>& sed) {
    IntMatrix P = IntMatrix::identity(r);
    for (int j : sed) P(j, j) = 0;
    return P;
}

Rat proportion(const IntVec& w, const IntVec& g) {
    if (w.size() != g.size()) throw std::invalid_argument("proportion: size mismatch");
    int k = -1;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != 0) {
            k = int(i);
            break;
        }
    if (k < 0) throw std::invalid_argument("proportion: zero reference");
    Rat c(w[k], g[k]);
    c.canonicalize();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (Rat(w[i]) != c * g[i]) throw std::domain_error("proportion: vectors not parallel");
    return c;
}

LatticeBasis rational_span_lattice(const std::vector<ExtVec>& vecs, int r) {
    std::vector<IntVec> gens;
    for (auto& v : vecs) {
        int d = 0;
        for (auto& x : v) d = std::max(d, x.dim());
        for (int k = 0; k <= d; ++k) {
            Int den = 1;
            for (auto& x : v) den = lcm(den, x.coef(k).get_den());
            IntVec g(r);
            bool nz = false;
            for (int i = 0; i < r; ++i) {
                Rat q = v[i].coef(k) * den;
                g[i] = q.get_num();
                nz = nz || g[i] != 0;
            }
            if (nz) gens.push_back(g);
        }
    }
    return saturate(gens, r);
}

MultiTangent make_multitangent(LatticeBasis L) {
    MultiTangent m;
    m.R = left_inverse(L);
    m.L = std::move(L);
    return m;
}

namespace {

LatticeBasis cell_tangent(const Cell& c) {
    std::vector<ExtVec> diffs;
    const XPoint* base = nullptr;
    std::set<int> extra;
    for (auto& v : c.verts) {
        for (int j = 0; j < v.size(); ++j)
            if (v.inf[j] && !std::binary_search(c.sed.begin(), c.sed.end(), j)) extra.insert(j);
        if (v.sed() != c.sed) continue;
        if (!base) {
            base = &v;
            continue;
        }
        ExtVec d(c.r);
        for (int j = 0; j < c.r; ++j)
            if (!v.inf[j]) d[j] = v.x[j] - base->x[j];
        diffs.push_back(d);
    }
    for (int j : extra) {
        ExtVec e(c.r);
        e[j] = ExtRat(1);
        diffs.push_back(e);
    }
    for (auto& ray : c.rays) {
        ExtVec e(c.r);
        for (int j = 0; j < c.r; ++j) e[j] = ExtRat(ray[j]);
        diffs.push_back(e);
    }
    return rational_span_lattice(diffs, c.r);
}

IntVec default_lambda(const LatticeBasis& L) { return wedge_vectors(L.basis, L.ambient); }

int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace

int TropicalSpace::add_cell(Cell c) {
    std::sort(c.sed.begin(), c.sed.end());
    if (c.lambda.empty()) {
        auto L = cell_tangent(c);
        if (L.rank() == c.dim) c.lambda = default_lambda(L);
    }
    cells.push_back(std::move(c));
    finalized_ = false;
    return int(cells.size()) - 1;
}

void TropicalSpace::add_face(int child, int parent, IntMatrix A, ExtVec b, int eps) {
    faces.push_back(FaceRel{child, parent, std::move(A), std::move(b), eps});
    finalized_ = false;
}

void TropicalSpace::add_face_inward(int child, int parent, IntMatrix A, ExtVec b, const IntVec& inward) {
    const Cell& t = cells.at(child);
    const Cell& s = cells.at(parent);
    int r = s.r;
    // outward ^ A.Lambda_child = eps Lambda_parent
    IntVec pushed = compound(A, t.dim) * t.lambda;
    IntVec out(inward.size());
    for (std::size_t i = 0; i < inward.size(); ++i) out[i] = -inward[i];
    IntVec w = wedge(out, 1, pushed, t.dim, r);
    Rat c = proportion(w, s.lambda);
    if (c == 0) throw std::domain_error("add_face_inward: inward vector tangent to the face");
    add_face(child, parent, std::move(A), std::move(b), sign_of(c));
}

void TropicalSpace::add_face_identity(int child, int parent, const IntVec& inward) {
    int r = cells.at(parent).r;
    add_face_inward(child, parent, IntMatrix::identity(r), ExtVec(r), inward);
}

int TropicalSpace::find(const std::string& label) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].label == label) return int(i);
    return -1;
}

bool TropicalSpace::compact() const {
    for (auto& c : cells)
        if (!c.compact()) return false;
    return true;
}

std::vector<IntVec> TropicalSpace::recession(int c) const {
    const Cell& cell = cells[c];
    std::set<int> extra;
    for (auto& v : cell.verts)
        for (int j = 0; j < v.size(); ++j)
            if (v.inf[j] && !std::binary_search(cell.sed.begin(), cell.sed.end(), j)) extra.insert(j);
    std::vector<IntVec> out;
    for (int j : extra) {
        IntVec e(cell.r);
        e[j] = -1;
        out.push_back(e);
    }
    for (auto& ray : cell.rays) out.push_back(ray);
    return out;
}

std::vector<int> TropicalSpace::top_cells() const {
    std::vector<int> t;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].dim == dim_) t.push_back(int(i));
    return t;
}

void TropicalSpace::finalize() {
    const int n = int(cells.size());
    dim_ = 0;
    for (auto& c : cells) dim_ = std::max(dim_, c.dim);
    down_.assign(n, {});
    up_.assign(n, {});
    conflicts_.clear();
    for (std::size_t i = 0; i < faces.size(); ++i) {
        auto& f = faces[i];
        if (f.child < 0 || f.child >= n || f.parent < 0 || f.parent >= n)
            throw std::invalid_argument("face relation references a missing cell");
        down_[f.parent].push_back(int(i));
        up_[f.child].push_back(int(i));
    }
    rel_inv_.clear();
    for (auto& f : faces) {
        auto inv = unimodular_inverse(f.A);
        rel_inv_.push_back(inv ? *inv : IntMatrix());
    }
    tangent_.clear();
    interior_.clear();
    for (int c = 0; c < n; ++c) {
        const Cell& cell = cells[c];
        tangent_.push_back(cell_tangent(cell));
        XPoint p(cell.r);
        int cnt = 0;
        for (auto& v : cell.verts) {
            if (v.sed() != cell.sed) continue;
            for (int j = 0; j < cell.r; ++j)
                if (!v.inf[j]) p.x[j] += v.x[j];
            ++cnt;
        }
        if (cnt == 0) throw std::invalid_argument("cell " + std::to_string(c) + " has no vertex in its own stratum");
        for (int j = 0; j < cell.r; ++j) p.x[j] = p.x[j] / Rat(cnt);
        for (int j : cell.sed) {
            p.inf[j] = 1;
            p.x[j] = ExtRat();
        }
        for (auto& g : recession(c))
            for (int j = 0; j < cell.r; ++j)
                if (!p.inf[j]) p.x[j] += ExtRat(g[j]);
        interior_.push_back(p);
    }
    // all embeddings into cofaces, by composing relations
    emb_.assign(n, {});
    for (int c = 0; c < n; ++c) {
        int r = cells[c].r;
        std::map<std::pair<int, XPoint>, std::size_t> seen;
        std::deque<Embedding> queue;
        queue.push_back(Embedding{c, IntMatrix::identity(r), IntMatrix::identity(r), ExtVec(r), interior_[c]});
        auto M0 = sed_projection(r, cells[c].sed);
        while (!queue.empty()) {
            Embedding e = std::move(queue.front());
            queue.pop_front();
            auto key = std::make_pair(e.cell, e.image);
            auto it = seen.find(key);
            if (it != seen.end()) {
                const Embedding& old = emb_[c][it->second];
                if (!(M0 * old.Ainv == M0 * e.Ainv))
                    conflicts_.push_back("inconsistent chart maps from cell " + std::to_string(c) + " into cell " +
                                         std::to_string(e.cell));
                continue;
            }
            seen[key] = emb_[c].size();
            for (int fi : up_[e.cell]) {
                const FaceRel& f = faces[fi];
                if (rel_inv_[fi].rows() == 0) continue;
                Embedding g;
                g.cell = f.parent;
                g.A = f.A * e.A;
                g.Ainv = e.Ainv * rel_inv_[fi];
                g.b = ExtVec(f.A.rows());
                for (int i = 0; i < f.A.rows(); ++i) {
                    g.b[i] = f.b[i];
                    for (int j = 0; j < f.A.cols(); ++j)
                        if (f.A(i, j) != 0) g.b[i] += e.b[j] * Rat(f.A(i, j));
                }
                g.image = apply_affine(f.A, f.b, e.image);
                queue.push_back(std::move(g));
            }
            emb_[c].push_back(std::move(e));
        }
    }
    // multi-tangent lattices
    F_.assign(n, {});
    for (int c = 0; c < n; ++c) {
        int r = cells[c].r;
        auto P = sed_projection(r, cells[c].sed);
        for (int p = 0; p <= r; ++p) {
            std::vector<IntVec> gens;
            for (auto& e : emb_[c]) {
                if (e.image.sed() != cells[e.cell].sed) continue;
                const LatticeBasis& T = tangent_[e.cell];
                if (p > T.rank()) continue;
                IntMatrix C = compound(P * e.Ainv, p);
                for (auto& w : wedge_power(T, p).basis) gens.push_back(C * w);
            }
            F_[c].push_back(make_multitangent(saturate(gens, int(binom(r, p)))));
        }
    }
    finalized_ = true;
}

const MultiTangent& TropicalSpace::F(int c, int p) const {
    if (!finalized_) throw std::logic_error("TropicalSpace not finalized");
    return F_.at(c).at(p);
}

IntMatrix TropicalSpace::tangent_pullback_inv(int child, const IntMatrix& Ainv) const {
    return sed_projection(cells[child].r, cells[child].sed) * Ainv;
}

IntMatrix TropicalSpace::iota_inv(int child, int parent, const IntMatrix& Ainv, int p) const {
    const MultiTangent& Fs = F(parent, p);
    const MultiTangent& Ft = F(child, p);
    IntMatrix img = compound(tangent_pullback_inv(child, Ainv), p) * Fs.L.matrix();
    IntMatrix coords = Ft.R * img;
    if (!(Ft.L.matrix() * coords == img))
        throw std::domain_error("iota: image outside F_p of cell " + std::to_string(child));
    return coords;
}

IntMatrix TropicalSpace::iota(int child, int parent, const IntMatrix& A, int p) const {
    auto inv = unimodular_inverse(A);
    if (!inv) throw std::invalid_argument("iota: chart map not unimodular");
    return iota_inv(child, parent, *inv, p);
}

IntMatrix TropicalSpace::iota(int fr, int p) const {
    const FaceRel& f = faces.at(fr);
    return iota_inv(f.child, f.parent, rel_inv_.at(fr), p);
}

IntVec TropicalSpace::primitive_generator(int fr) const {
    const FaceRel& f = faces.at(fr);
    const Cell& t = cells[f.child];
    const Cell& s = cells[f.parent];
    if (t.lambda.empty() || s.lambda.empty()) throw std::domain_error("primitive_generator: missing orientation");
    const LatticeBasis& Ls = tangent_[f.parent];
    IntMatrix Rs = left_inverse(Ls);
    std::vector<IntVec> pushed;
    for (auto& v : tangent_[f.child].basis) pushed.push_back(f.A * v);
    // coordinates of A.L(child) in L(parent), completed to a basis
    int k = Ls.rank();
    IntMatrix N(k, int(pushed.size()));
    for (std::size_t j = 0; j < pushed.size(); ++j) {
        IntVec c = Rs * pushed[j];
        for (int i = 0; i < k; ++i) N(i, int(j)) = c[i];
    }
    auto sf = smith_normal_form(N);
    if (sf.rank != int(pushed.size()) || k != sf.rank + 1)
        throw std::domain_error("primitive_generator: face is not of codimension one in its parent");
    IntVec u = sf.Uinv.col(k - 1);
    IntVec w = Ls.matrix() * u;
    IntVec pl = compound(f.A, t.dim) * t.lambda;
    Rat c = proportion(wedge(w, 1, pl, t.dim, s.r), s.lambda);
    if (c != 1 && c != -1) throw std::domain_error("primitive_generator: face lattice not saturated in parent");
    Int m = -f.eps * c.get_num();
    for (auto& x : w) x *= m;
    // reduce modulo A.L(child)
    if (!pushed.empty()) {
        auto h = hermite_normal_form(IntMatrix::from_rows(pushed, s.r));
        for (int i = 0; i < h.rank; ++i) {
            int pc = h.pivot_cols[i];
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w[pc].get_mpz_t(), h.H(i, pc).get_mpz_t());
            for (int j = 0; j < s.r; ++j) w[j] -= q * h.H(i, j);
        }
    }
    return w;
}

ValidationReport TropicalSpace::validate() const {
    ValidationReport rep;
    auto err = [&](const std::string& s) { rep.errors.push_back(s); };
    if (!finalized_) {
        err("space not finalized");
        return rep;
    }
    const int n = int(cells.size());
    int r0 = chart_rank();
    for (int c = 0; c < n; ++c) {
        const Cell& cell = cells[c];
        std::string tag = "cell " + std::to_string(c) + (cell.label.empty() ? "" : " (" + cell.label + ")");
        if (cell.r != r0) err(tag + ": chart rank differs from the other cells");
        if (cell.verts.empty()) err(tag + ": no vertex");
        std::vector<int> common;
        bool first = true;
        for (auto& v : cell.verts) {
            if (v.size() != cell.r) {
                err(tag + ": vertex of wrong length");
                continue;
            }
            auto s = v.sed();
            if (first) common = s;
            else {
                std::vector<int> tmp;
                std::set_intersection(common.begin(), common.end(), s.begin(), s.end(), std::back_inserter(tmp));
                common = tmp;
            }
            first = false;
        }
        if (common != cell.sed) err(tag + ": sedentarity does not match its vertices");
        if (tangent_[c].rank() != cell.dim) err(tag + ": tangent lattice rank differs from dimension");
        if (!cell.lambda.empty()) {
            IntVec g = wedge_vectors(tangent_[c].basis, cell.r);
            try {
                Rat q = proportion(cell.lambda, g);
                if (q != 1 && q != -1) err(tag + ": orientation is not a lattice generator");
            } catch (const std::exception&) {
                err(tag + ": orientation not in the top wedge of the tangent lattice");
            }
        }
        if (cell.dim == dim_ && cell.weight == 0) err(tag + ": top cell without weight");
        for (auto& ray : cell.rays)
            if (int(ray.size()) != cell.r) err(tag + ": ray of wrong length");
    }
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const FaceRel& f = faces[i];
        std::string tag = "face " + std::to_string(i) + " (" + std::to_string(f.child) + "<" + std::to_string(f.parent) + ")";
        const Cell& t = cells[f.child];
        const Cell& s = cells[f.parent];
        if (t.dim + 1 != s.dim) err(tag + ": not of codimension one");
        if (f.A.rows() != s.r || f.A.cols() != t.r || int(f.b.size()) != s.r) {
            err(tag + ": chart map has wrong size");
            continue;
        }
        if (rel_inv_[i].rows() == 0) err(tag + ": chart map not unimodular");
        if (f.eps != 1 && f.eps != -1) err(tag + ": incidence sign must be +-1");
        for (auto& v : t.verts) {
            XPoint img;
            try {
                img = apply_affine(f.A, f.b, v);
            } catch (const std::exception& e) {
                err(tag + ": " + e.what());
                continue;
            }
            if (std::find(s.verts.begin(), s.verts.end(), img) == s.verts.end())
                err(tag + ": vertex " + v.str() + " maps to " + img.str() + ", not a vertex of the parent");
        }
        for (auto& ray : t.rays) {
            if (!lattice_coords(tangent_[f.parent], f.A * ray)) err(tag + ": ray leaves the parent");
        }
    }
    for (auto& c : conflicts_) err(c);
    // face closure: boundary of boundary vanishes with constant coefficients
    for (int c = 0; c < n; ++c) {
        std::map<int, long> acc;
        for (int fi : down_[c])
            for (int gi : down_[faces[fi].child]) acc[faces[gi].child] += long(faces[fi].eps) * faces[gi].eps;
        for (auto& [k, v] : acc)
            if (v != 0) err("cell " + std::to_string(c) + ": face closure violated at cell " + std::to_string(k));
        const Cell& cell = cells[c];
        if (cell.dim == 1 && cell.compact() && down_[c].size() != 2)
            err("cell " + std::to_string(c) + ": compact edge without two endpoints");
        if (cell.dim >= 1 && down_[c].empty()) err("cell " + std::to_string(c) + ": no faces");
        // every vertex of the cell is reached through its faces
        if (cell.dim >= 2) {
            std::set<XPoint> reached;
            for (int fi : down_[c])
                for (auto& v : cells[faces[fi].child].verts) reached.insert(apply_affine(faces[fi].A, faces[fi].b, v));
            for (auto& v : cell.verts)
                if (!reached.count(v)) err("cell " + std::to_string(c) + ": face closure violated at vertex " + v.str());
        }
    }
    return rep;
}

BalancingReport TropicalSpace::check_balancing() const {
    BalancingReport rep;
    for (int c = 0; c < int(cells.size()); ++c) {
        const Cell& t = cells[c];
        if (t.dim != dim_ - 1 || tangent_[c].rank() != t.dim) continue;
        IntVec sum(t.r);
        bool any = false;
        for (int fi : up_[c]) {
            const FaceRel& f = faces[fi];
            const Cell& s = cells[f.parent];
            if (s.dim != dim_) continue;
            if (apply_affine(f.A, f.b, interior_[c]).sed() != s.sed) continue;
            if (s.weight == 0) throw std::domain_error("check_balancing: missing weight on cell " + std::to_string(f.parent));
            IntVec v = tangent_pullback_inv(c, rel_inv_[fi]) * primitive_generator(fi);
            for (int j = 0; j < t.r; ++j) sum[j] += s.weight * v[j];
            any = true;
        }
        if (!any) continue;
        bool ok = lattice_coords(tangent_[c], sum).has_value();
        rep.entries.push_back({c, sum, ok});
        rep.balanced = rep.balanced && ok;
    }
    return rep;
}

}  // namespace trop
