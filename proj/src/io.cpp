#include "trop/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace trop {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

bool looks_float(const std::string& s) {
    for (char c : s)
        if (c == '.' || c == 'e' || c == 'E') return true;
    return false;
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(at(path, key), "missing field");
    return *it;
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array");
    return j;
}

int small_int(const Json& j, const std::string& path) {
    Int v = parse_integer(j, path);
    if (!v.fits_sint_p()) throw InputError(path, "integer out of range");
    return int(v.get_si());
}

Json int_json(const Int& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

Json ivec_json(const IntVec& v) {
    Json a = Json::array();
    for (auto& x : v) a.push_back(int_json(x));
    return a;
}

IntVec ivec(const Json& j, const std::string& path) {
    IntVec v;
    std::size_t i = 0;
    for (auto& x : array(j, path)) v.push_back(parse_integer(x, at(path, i++)));
    return v;
}

Json point_json(const XPoint& p) {
    Json a = Json::array();
    for (int i = 0; i < p.size(); ++i) a.push_back(p.inf[i] ? std::string("-inf") : p.x[i].str());
    return a;
}

XPoint point(const Json& j, int r, const std::string& path) {
    array(j, path);
    if (int(j.size()) != r) throw InputError(path, "expected " + std::to_string(r) + " coordinates");
    XPoint p(r);
    for (int i = 0; i < r; ++i) {
        if (j[i].is_string() && j[i].get<std::string>() == "-inf")
            p.inf[i] = 1;
        else
            p.x[i] = parse_ext(j[i], at(path, i));
    }
    return p;
}

Json poly_json(const TropPoly& P) {
    Json a = Json::array();
    for (std::size_t t = 0; t < P.size(); ++t) a.push_back({{"slope", ivec_json(P.slopes[t])}, {"const", P.consts[t].str()}});
    return a;
}

TropPoly poly(const Json& j, int r, const std::string& path) {
    TropPoly P;
    std::size_t i = 0;
    for (auto& t : array(j, path)) {
        std::string p = at(path, i++);
        IntVec m = ivec(field(t, "slope", p), at(p, "slope"));
        if (int(m.size()) != r) throw InputError(at(p, "slope"), "expected " + std::to_string(r) + " entries");
        P.add(m, parse_ext(field(t, "const", p), at(p, "const")));
    }
    return P;
}

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

// ---------------------------------------------------------------- numbers

Rat parse_rational(const std::string& s, const std::string& path) {
    if (looks_float(s)) throw InputError(path, "floating-point literal '" + s + "'; use an exact fraction");
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool ok = i > digits;
    if (ok && i < s.size() && s[i] == '/') {
        std::size_t d = ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        ok = i > d;
    }
    if (!ok || i != s.size()) throw InputError(path, "not a rational number '" + s + "'");
    Rat r;
    try {
        r = Rat(s[0] == '+' ? s.substr(1) : s);
    } catch (std::exception&) {
        throw InputError(path, "not a rational number '" + s + "'");
    }
    if (r.get_den() == 0) throw InputError(path, "zero denominator");
    r.canonicalize();
    return r;
}

ExtRat parse_ext(const std::string& s0, const std::string& path) {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw InputError(path, "empty number");
    if (looks_float(s)) throw InputError(path, "floating-point literal '" + s0 + "'; use an exact fraction");
    ExtRat out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        int sign = 1;
        if (term[0] == '+' || term[0] == '-') {
            sign = term[0] == '-' ? -1 : 1;
            term = term.substr(1);
        }
        auto tpos = term.find('t');
        if (tpos == std::string::npos) {
            out += ExtRat(parse_rational(term, path) * sign);
            continue;
        }
        Rat coef = 1;
        if (tpos > 0) {
            if (tpos < 2 || term[tpos - 1] != '*') throw InputError(path, "malformed formal term '" + term + "'");
            coef = parse_rational(term.substr(0, tpos - 1), path);
        }
        std::string idx = term.substr(tpos + 1);
        if (idx.empty() || idx.size() > 6 || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(c); }))
            throw InputError(path, "malformed formal index in '" + term + "'");
        int k = std::stoi(idx);
        if (k < 1) throw InputError(path, "formal indices start at 1");
        out += ExtRat::formal(k, coef * sign);
    }
    return out;
}

Int parse_integer(const Json& j, const std::string& path) {
    if (j.is_number_float()) throw InputError(path, "floating-point literal; use an integer");
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>())) : Int(long(j.get<std::int64_t>()));
    if (j.is_string()) {
        Rat r = parse_rational(j.get<std::string>(), path);
        if (r.get_den() != 1) throw InputError(path, "not an integer '" + j.get<std::string>() + "'");
        return r.get_num();
    }
    throw InputError(path, "expected an integer");
}

Rat parse_rational(const Json& j, const std::string& path) {
    if (j.is_number_float()) throw InputError(path, "floating-point literal; use an exact fraction");
    if (j.is_number_integer()) return Rat(parse_integer(j, path));
    if (j.is_string()) return parse_rational(j.get<std::string>(), path);
    throw InputError(path, "expected a rational number");
}

ExtRat parse_ext(const Json& j, const std::string& path) {
    if (j.is_number_float()) throw InputError(path, "floating-point literal; use an exact fraction");
    if (j.is_number_integer()) return ExtRat(parse_integer(j, path));
    if (j.is_string()) return parse_ext(j.get<std::string>(), path);
    throw InputError(path, "expected a number");
}

std::vector<ExtRat> parse_ext_list(const std::string& s, const std::string& path) {
    std::vector<ExtRat> out;
    std::stringstream ss(s);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) out.push_back(parse_ext(item, at(path, i++)));
    return out;
}

// ---------------------------------------------------------------- documents

Json to_json(const TropicalSpace& X) {
    Json cells = Json::array();
    for (std::size_t i = 0; i < X.cells.size(); ++i) {
        const Cell& c = X.cells[i];
        Json verts = Json::array(), rays = Json::array();
        for (auto& v : c.verts) verts.push_back(point_json(v));
        for (auto& u : c.rays) rays.push_back(ivec_json(u));
        cells.push_back({{"id", i},
                         {"label", c.label},
                         {"dim", c.dim},
                         {"sed", c.sed},
                         {"verts", verts},
                         {"rays", rays},
                         {"weight", c.weight},
                         {"orientation", ivec_json(c.lambda)}});
    }
    Json faces = Json::array();
    for (auto& f : X.faces) {
        Json A = Json::array(), b = Json::array();
        for (int i = 0; i < f.A.rows(); ++i) A.push_back(ivec_json(f.A.row(i)));
        for (auto& x : f.b) b.push_back(x.str());
        faces.push_back({{"child", f.child}, {"parent", f.parent}, {"A", A}, {"b", b}, {"sign", f.eps}});
    }
    return {{"format", kFormatName},
            {"version", kFormatVersion},
            {"formal_dim", X.formal_dim},
            {"chart_rank", X.chart_rank()},
            {"cells", cells},
            {"faces", faces}};
}

Json to_json(const PLFunction& f) {
    return {{"r", f.r}, {"plus", poly_json(f.plus)}, {"minus", poly_json(f.minus)}};
}

Json to_json(const Document& d) {
    Json j = to_json(d.space);
    if (!d.functions.empty()) {
        Json fs = Json::object();
        for (auto& [name, f] : d.functions) fs[name] = to_json(f);
        j["functions"] = fs;
    }
    if (!d.generator.is_null()) j["generator"] = d.generator;
    return j;
}

TropicalSpace space_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto fmt = field(j, "format", path);
    if (!fmt.is_string() || fmt.get<std::string>() != kFormatName) throw InputError(at(path, "format"), std::string("expected '") + kFormatName + "'");
    if (small_int(field(j, "version", path), at(path, "version")) != kFormatVersion)
        throw InputError(at(path, "version"), "unsupported version");
    TropicalSpace X;
    X.formal_dim = small_int(field(j, "formal_dim", path), at(path, "formal_dim"));
    int r = small_int(field(j, "chart_rank", path), at(path, "chart_rank"));
    if (r < 0 || r > 16) throw InputError(at(path, "chart_rank"), "out of range");
    const std::string cp = at(path, "cells");
    const Json& cells = array(field(j, "cells", path), cp);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string p = at(cp, i);
        const Json& c = cells[i];
        if (small_int(field(c, "id", p), at(p, "id")) != int(i)) throw InputError(at(p, "id"), "cells must be listed by id");
        Cell cell;
        auto& lab = field(c, "label", p);
        if (!lab.is_string()) throw InputError(at(p, "label"), "expected a string");
        cell.label = lab.get<std::string>();
        cell.dim = small_int(field(c, "dim", p), at(p, "dim"));
        cell.r = r;
        std::size_t k = 0;
        for (auto& s : array(field(c, "sed", p), at(p, "sed"))) {
            int v = small_int(s, at(at(p, "sed"), k++));
            if (v < 0 || v >= r) throw InputError(at(p, "sed"), "coordinate out of range");
            cell.sed.push_back(v);
        }
        if (!std::is_sorted(cell.sed.begin(), cell.sed.end())) throw InputError(at(p, "sed"), "must be sorted");
        k = 0;
        for (auto& v : array(field(c, "verts", p), at(p, "verts"))) cell.verts.push_back(point(v, r, at(at(p, "verts"), k++)));
        if (cell.verts.empty()) throw InputError(at(p, "verts"), "a cell needs a vertex");
        k = 0;
        for (auto& u : array(field(c, "rays", p), at(p, "rays"))) {
            std::string up = at(at(p, "rays"), k++);
            cell.rays.push_back(ivec(u, up));
            if (int(cell.rays.back().size()) != r) throw InputError(up, "expected " + std::to_string(r) + " entries");
        }
        cell.weight = small_int(field(c, "weight", p), at(p, "weight"));
        if (c.contains("orientation")) cell.lambda = ivec(c["orientation"], at(p, "orientation"));
        if (!cell.lambda.empty() && long(cell.lambda.size()) != binom(r, cell.dim))
            throw InputError(at(p, "orientation"), "wrong number of wedge coordinates");
        X.add_cell(std::move(cell));
    }
    const std::string fp = at(path, "faces");
    const Json& faces = array(field(j, "faces", path), fp);
    int n = int(X.cells.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        std::string p = at(fp, i);
        const Json& f = faces[i];
        int child = small_int(field(f, "child", p), at(p, "child"));
        int parent = small_int(field(f, "parent", p), at(p, "parent"));
        if (child < 0 || child >= n) throw InputError(at(p, "child"), "unknown cell");
        if (parent < 0 || parent >= n) throw InputError(at(p, "parent"), "unknown cell");
        const Json& A = array(field(f, "A", p), at(p, "A"));
        if (int(A.size()) != r) throw InputError(at(p, "A"), "expected " + std::to_string(r) + " rows");
        IntMatrix M(r, r);
        for (int a = 0; a < r; ++a) {
            std::string rp = at(at(p, "A"), a);
            IntVec row = ivec(A[a], rp);
            if (int(row.size()) != r) throw InputError(rp, "expected " + std::to_string(r) + " entries");
            for (int b = 0; b < r; ++b) M(a, b) = row[b];
        }
        const Json& b = array(field(f, "b", p), at(p, "b"));
        if (int(b.size()) != r) throw InputError(at(p, "b"), "expected " + std::to_string(r) + " entries");
        ExtVec bv;
        for (int a = 0; a < r; ++a) bv.push_back(parse_ext(b[a], at(at(p, "b"), a)));
        int eps = small_int(field(f, "sign", p), at(p, "sign"));
        if (eps != 1 && eps != -1) throw InputError(at(p, "sign"), "must be 1 or -1");
        if (X.cells[child].lambda.empty() || X.cells[parent].lambda.empty())
            throw InputError(p, "orientations are required on both cells");
        X.add_face(child, parent, std::move(M), std::move(bv), eps);
    }
    try {
        X.finalize();
    } catch (std::exception& e) {
        throw InputError(path, std::string("inconsistent space: ") + e.what());
    }
    return X;
}

PLFunction function_from_json(const Json& j, const std::string& path) {
    PLFunction f;
    f.r = small_int(field(j, "r", path), at(path, "r"));
    f.plus = poly(field(j, "plus", path), f.r, at(path, "plus"));
    f.minus = poly(field(j, "minus", path), f.r, at(path, "minus"));
    if (f.plus.empty() && f.minus.empty()) throw InputError(path, "empty function");
    return f;
}

Document document_from_json(const Json& j) {
    Document d;
    d.space = space_from_json(j);
    auto rep = d.space.validate();
    if (!rep.ok()) {
        std::string msg = "space does not validate:";
        for (auto& e : rep.errors) msg += "\n  " + e;
        throw InputError("", msg);
    }
    if (j.contains("functions")) {
        const Json& fs = j["functions"];
        if (!fs.is_object()) throw InputError("functions", "expected an object");
        for (auto& [name, f] : fs.items()) {
            auto g = function_from_json(f, "functions." + name);
            if (g.r != d.space.chart_rank()) throw InputError("functions." + name + ".r", "must equal chart_rank");
            d.functions[name] = g;
        }
    }
    if (j.contains("generator")) {
        // only exact data is allowed here as well
        std::function<void(const Json&, const std::string&)> scan = [&](const Json& x, const std::string& p) {
            if (x.is_number_float()) throw InputError(p, "floating-point literal");
            if (x.is_object())
                for (auto& [k, v] : x.items()) scan(v, at(p, k));
            if (x.is_array())
                for (std::size_t i = 0; i < x.size(); ++i) scan(x[i], at(p, i));
        };
        scan(j["generator"], "generator");
        d.generator = j["generator"];
    }
    return d;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string emit(const Document& d) { return canonical(to_json(d)); }

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col), "syntax error");
    }
    return document_from_json(j);
}

Document read_document(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw InputError(file, "cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void write_text(const std::string& file, const std::string& text) {
    if (file.empty() || file == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::string tmp = file + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + file);
        out << text;
    }
    std::filesystem::rename(tmp, file);
}

std::string content_hash(const std::string& text) {
    std::ostringstream h;
    h << std::hex << std::setw(16) << std::setfill('0') << fnv(text) << std::setw(16) << fnv(text + "#");
    return h.str();
}

}  // namespace trop
