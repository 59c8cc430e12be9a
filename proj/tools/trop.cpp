#include "trop/constructions.hpp"
#include "trop/duality.hpp"
#include "trop/homology.hpp"
#include "trop/io.hpp"
#include "trop/suites.hpp"
#include "trop/wave.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

using namespace trop;

namespace {

constexpr const char* kVersion = "trop 1.0 / schema 1";

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input, output, variant = "std", model = "cell", format = "json", cache_dir;
    int p = -1, q = -1;
    bool compactify = false, timings = false, diamond = false;
    int target_rank = -1;
    // generate
    std::string bases, lattice, points, heights, coeffs, function = "f";
    int n = -1, type = 1, twist = 0;
    std::string l1 = "1", l2 = "1";
    int uniform_r = -1, uniform_n = -1;
    bool formal = false, generic = false, heavy = false, pd = false;
};

Variant variant_of(const std::string& s) {
    if (s == "std") return Variant::Standard;
    if (s == "bm") return Variant::BorelMoore;
    if (s == "cochain") return Variant::Cochain;
    throw InputError("--variant", "expected std, bm or cochain");
}

Json diamond_json(const Diamond& d) {
    Json tors = Json::array();
    for (auto& row : d.torsion) {
        Json r = Json::array();
        for (auto& t : row) {
            Json l = Json::array();
            for (auto& x : t) l.push_back(x.get_str());
            r.push_back(l);
        }
        tors.push_back(r);
    }
    return {{"n", d.n}, {"betti", d.betti}, {"torsion", tors}};
}

Json ext_rows(const std::vector<ExtVec>& rows) {
    Json out = Json::array();
    for (auto& r : rows) {
        Json a = Json::array();
        for (auto& x : r) a.push_back(x.str());
        out.push_back(a);
    }
    return out;
}

Json rat_rows(const std::vector<RatVec>& rows) {
    Json out = Json::array();
    for (auto& r : rows) {
        Json a = Json::array();
        for (auto& x : r) a.push_back(x.get_str());
        out.push_back(a);
    }
    return out;
}

class Runner {
public:
    explicit Runner(Options o) : o_(std::move(o)), t0_(std::chrono::steady_clock::now()) {}

    Document load() {
        if (o_.input.empty()) throw InputError("--input", "required");
        std::ifstream in(o_.input);
        if (!in) throw InputError(o_.input, "cannot open");
        std::stringstream ss;
        ss << in.rdbuf();
        Document d = parse_document(ss.str());
        hash_ = content_hash(emit(d));
        lap("parse");
        return d;
    }

    void lap(const std::string& what) {
        auto now = std::chrono::steady_clock::now();
        timings_[what] = std::chrono::duration<double>(now - t0_).count();
        t0_ = now;
    }

    void report(const std::string& command, Json results) {
        Json r = {{"command", command}, {"version", kVersion}, {"results", std::move(results)}};
        if (!hash_.empty()) r["input_hash"] = hash_;
        if (o_.timings) r["timings"] = timings_;
        write_text(o_.output, canonical(r));
    }

    void text(const std::string& s) { write_text(o_.output, s); }

    const Options& o() const { return o_; }

private:
    Options o_;
    std::string hash_;
    Json timings_ = Json::object();
    std::chrono::steady_clock::time_point t0_;
};

// ---------------------------------------------------------------- generate

Document generated(TropicalSpace X, Json gen) {
    Document d;
    d.space = std::move(X);
    d.generator = std::move(gen);
    return d;
}

std::vector<std::vector<int>> parse_bases(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<int> b;
        for (char c : item) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("--bases", "elements are digits 0-9");
            b.push_back(c - '0');
        }
        out.push_back(b);
    }
    if (out.empty()) throw InputError("--bases", "empty");
    return out;
}

std::vector<Rat> squares_heights(int n, int d) {
    std::vector<Rat> h;
    for (auto& m : simplex_points(n, d)) {
        Int s = 0;
        for (auto& x : m) s += x * x;
        h.push_back(Rat(s));
    }
    return h;
}

Document generate(const std::string& kind, const Options& o) {
    if (kind == "bergman") {
        Matroid M;
        Json gen = {{"kind", "bergman"}};
        if (o.uniform_r > 0) {
            M = uniform_matroid(o.uniform_r, o.uniform_n);
            gen["uniform"] = {o.uniform_r, o.uniform_n};
        } else {
            M.bases = parse_bases(o.bases);
            int n = 0;
            for (auto& b : M.bases)
                for (int e : b) n = std::max(n, e + 1);
            M.n = o.n > 0 ? o.n : n;
            gen["bases"] = o.bases;
            gen["n"] = M.n;
        }
        if (!M.valid()) throw InputError("--bases", "not the bases of a matroid");
        if (!M.loopless()) throw InputError("--bases", "the matroid has loops");
        return generated(bergman_fan(M), gen);
    }
    if (kind == "torus") {
        std::vector<std::vector<ExtRat>> rows;
        std::stringstream ss(o.lattice);
        std::string row;
        while (std::getline(ss, row, ';')) rows.push_back(parse_ext_list(row, "--lattice"));
        Json gen = {{"kind", "torus"}, {"lattice", o.lattice}};
        if (rows.size() == 1) return generated(torus(rows[0]), gen);
        if (rows.size() == 2 && rows[0].size() == 2 && rows[1].size() == 2 && rows[0][1].is_zero())
            return generated(torus2(rows[0][0], rows[1][0], rows[1][1]), gen);
        throw InputError("--lattice", "expected diagonal lengths 'l1,l2,..' or rows 'a,0;b,c'");
    }
    if (kind == "klein") {
        if (o.type != 1 && o.type != 2) throw InputError("--type", "1 or 2");
        KleinParams P{o.type, o.twist, parse_ext(o.l1, "--l1"), parse_ext(o.l2, "--l2")};
        return generated(klein_bottle(P), {{"kind", "klein"}, {"type", o.type}, {"n", o.twist}, {"l1", o.l1}, {"l2", o.l2}});
    }
    if (kind == "hypersurface") {
        int n = 0, d = 0;
        if (std::sscanf(o.points.c_str(), "%d:%d", &n, &d) != 2 || n < 1 || n > 4 || d < 1)
            throw InputError("--points", "expected n:d, the lattice points of d times the standard n-simplex");
        std::vector<Rat> h;
        if (o.heights == "squares" || o.heights.empty()) {
            h = squares_heights(n, d);
        } else {
            for (auto& x : parse_ext_list(o.heights, "--heights")) {
                if (!x.is_rational()) throw InputError("--heights", "heights must be rational");
                h.push_back(x.rational());
            }
        }
        if (h.size() != simplex_points(n, d).size())
            throw InputError("--heights", "expected " + std::to_string(simplex_points(n, d).size()) + " values");
        auto T = regular_triangulation(n, d, h);
        std::vector<ExtRat> c;
        if (!o.coeffs.empty()) c = parse_ext_list(o.coeffs, "--coeffs");
        Json gen = {{"kind", "hypersurface"}, {"points", o.points}, {"heights", o.heights.empty() ? "squares" : o.heights},
                    {"compactify", o.compactify}};
        if (!o.coeffs.empty()) gen["coeffs"] = o.coeffs;
        Document doc = generated(hypersurface(T, o.compactify, c), gen);
        if (!o.compactify) doc.functions["f"] = hypersurface_polynomial(T, c);
        return doc;
    }
    if (kind == "regions") {
        Options q = o;
        q.compactify = false;
        Document h = generate("hypersurface", q);
        int n = 0, d = 0;
        std::sscanf(o.points.c_str(), "%d:%d", &n, &d);
        std::vector<Rat> hs = o.heights == "squares" || o.heights.empty() ? squares_heights(n, d) : std::vector<Rat>{};
        if (hs.empty())
            for (auto& x : parse_ext_list(o.heights, "--heights")) hs.push_back(x.rational());
        auto T = regular_triangulation(n, d, hs);
        std::vector<ExtRat> c;
        if (!o.coeffs.empty()) c = parse_ext_list(o.coeffs, "--coeffs");
        Document doc = generated(region_complex(T, false, c).X, h.generator);
        doc.generator["kind"] = "regions";
        doc.functions["f"] = hypersurface_polynomial(T, c);
        return doc;
    }
    if (kind == "quartic") {
        Json gen = {{"kind", "cone-quartic"}};
        std::vector<ExtRat> c;
        if (o.target_rank >= 0) {
            c = picard_designer(o.target_rank).coeffs;
            gen["target_rank"] = o.target_rank;
        } else if (o.generic) {
            int i = 1;
            for (auto& h : cone_triangulation_quartic().heights) c.push_back(ExtRat(-h) + ExtRat::formal(i++));
            gen["generic"] = true;
        }
        return generated(cone_quartic(c).H.X, gen);
    }
    if (kind == "floor-quartic") return generated(floor_quartic(o.formal).X, {{"kind", "floor-quartic"}, {"formal", o.formal}});
    if (kind == "modify") {
        Document W = read_document(o.input);
        auto it = W.functions.find(o.function);
        if (it == W.functions.end()) throw InputError("--function", "no function '" + o.function + "' in the input");
        auto M = open_modification(W.space, it->second);
        return generated(o.compactify ? M.Vbar : M.V,
                         {{"kind", "modify"}, {"function", o.function}, {"compactify", o.compactify}, {"base", content_hash(emit(W))}});
    }
    if (kind == "product-T") {
        Document Y = read_document(o.input);
        return generated(product_with_T(Y.space).X, {{"kind", "product-T"}, {"base", content_hash(emit(Y))}});
    }
    throw InputError("generate", "unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------- commands

Json homology_results(const TropicalSpace& X, const Options& o, Variant v, std::string* text) {
    const int n = X.dim();
    std::unique_ptr<StratifiedSimplicialStructure> S;
    if (o.model == "simp") {
        if (!X.compact()) throw InputError("--model", "the simplicial model needs a compact space");
        S = std::make_unique<StratifiedSimplicialStructure>(X);
    } else if (o.model != "cell") {
        throw InputError("--model", "expected cell or simp");
    }
    Json res = {{"variant", to_string(v)}, {"model", o.model}};
    if (o.p >= 0 && !o.diamond) {
        if (o.p > n) throw InputError("--p", "out of range");
        HomologyComputation H(S ? build_complex(*S, o.p, v) : build_complex(X, o.p, v));
        Json groups = Json::object();
        for (int q = 0; q <= n; ++q) {
            if (o.q >= 0 && q != o.q) continue;
            groups[std::to_string(q)] = H.group(q).str();
        }
        res["p"] = o.p;
        res["groups"] = groups;
        if (text)
            for (auto& [q, g] : groups.items()) *text += "H(" + std::to_string(o.p) + "," + q + ") = " + g.get<std::string>() + "\n";
        return res;
    }
    Diamond d = S ? hodge_diamond(*S, v) : hodge_diamond(X, v);
    res["diamond"] = diamond_json(d);
    if (text) *text += o.format == "csv" ? d.csv() : d.text();
    return res;
}

int cmd_homology(Runner& R, bool cohomology) {
    Document d = R.load();
    const Options& o = R.o();
    Variant v = cohomology ? Variant::Cochain : variant_of(o.variant);
    if (cohomology && o.variant != "std" && o.variant != "cochain") throw InputError("--variant", "cohomology uses the cochain complex");
    std::string text;
    bool want_text = o.format == "text" || o.format == "csv";
    Json res = homology_results(d.space, o, v, want_text ? &text : nullptr);
    R.lap("homology");
    if (want_text)
        R.text(text);
    else
        R.report(cohomology ? "cohomology" : "homology", res);
    return 0;
}

const TropicalSpace& need_compact(const Document& d, const char* cmd) {
    if (!d.space.compact()) throw InputError("--input", std::string(cmd) + " needs a compact space");
    return d.space;
}

int cmd_wave(Runner& R) {
    Document d = R.load();
    const auto& X = need_compact(d, "wave");
    const Options& o = R.o();
    int p = o.p >= 0 ? o.p : 1, q = o.q >= 0 ? o.q : 1;
    if (p < 1 || p > X.dim() || q < 0 || q + 1 > X.dim()) throw InputError("--p/--q", "need 1 <= p <= n and 0 <= q < n");
    StratifiedSimplicialStructure S(X);
    auto W = variant_of(o.variant) == Variant::Cochain ? wave_on_cohomology(S, p, q) : wave_on_homology(S, p, q);
    R.lap("wave");
    R.report("wave", {{"p", p}, {"q", q}, {"variant", o.variant}, {"matrix", ext_rows(W.rows)}, {"cols", W.cols},
                      {"kernel_rank", W.kernel_rank()}});
    return 0;
}

int cmd_picard(Runner& R) {
    Document d = R.load();
    const auto& X = need_compact(d, "picard");
    StratifiedSimplicialStructure S(X);
    auto P = picard_rank(S);
    HomologyComputation H(build_complex(S, 1, Variant::Standard));
    Json tors = Json::array();
    for (auto& t : H.group(1).torsion) tors.push_back(t.get_str());
    Json res = {{"rank", P.rank}, {"h11", P.h11}, {"h02", P.h02}, {"kernel_basis", rat_rows(P.kernel)}, {"h11_torsion", tors}};
    if (!tors.empty()) res["note"] = "H_{1,1} has torsion; the rank counts the free part only";
    R.lap("picard");
    R.report("picard", res);
    return 0;
}

int cmd_pd(Runner& R) {
    Document d = R.load();
    const auto& X = d.space;
    const Options& o = R.o();
    std::unique_ptr<StratifiedSimplicialStructure> S;
    if (X.compact()) S = std::make_unique<StratifiedSimplicialStructure>(X);
    std::string csv = "p,q,source,target,iso\n";
    bool all = true;
    for (int p = 0; p <= X.dim(); ++p)
        for (int q = 0; q <= X.dim(); ++q) {
            if ((o.p >= 0 && p != o.p) || (o.q >= 0 && q != o.q)) continue;
            auto r = S ? pd_check(*S, p, q) : pd_check_fan(X, p, q);
            all = all && r.iso;
            csv += std::to_string(p) + "," + std::to_string(q) + "," + r.source + "," + r.target + "," + (r.iso ? "1" : "0") + "\n";
        }
    R.text(csv);
    if (!all) throw VerificationFailure("Poincare duality fails in some bidegree");
    return 0;
}

int cmd_divisor(Runner& R) {
    Document d = R.load();
    const Options& o = R.o();
    auto it = d.functions.find(o.function);
    if (it == d.functions.end()) throw InputError("--function", "no function '" + o.function + "' in the input");
    const auto& X = d.space;
    auto D = divisor(X, it->second);
    Json w = Json::array();
    for (auto& [c, x] : D.weights) w.push_back({{"cell", X.cells[c].label}, {"weight", x.get_str()}});
    Json res = {{"function", o.function}, {"weights", w}, {"closed", is_closed(X, D)}};
    bool ok = is_closed(X, D);
    if (X.compact()) {
        StratifiedSimplicialStructure S(X);
        auto L = lefschetz_diagram_check(S, CartierDivisor::uniform(X, it->second));
        res["class"] = L.divisor_class.str();
        res["chern_class"] = L.chern_class.str();
        res["diagram_commutes"] = L.ok;
        ok = ok && L.ok;
    }
    R.lap("divisor");
    R.report("divisor", res);
    if (!ok) throw VerificationFailure("divisor checks failed");
    return 0;
}

int cmd_verify(Runner& R) {
    const Options& o = R.o();
    std::vector<Check> checks;
    if (!o.input.empty()) {
        Document d = R.load();
        checks = verify_space(o.input, d.space, o.pd);
    } else {
        for (auto& f : standard_fixtures(o.heavy)) {
            auto c = verify_space(f.name, *f.X, f.pd);
            checks.insert(checks.end(), c.begin(), c.end());
        }
    }
    R.lap("verify");
    Json out = Json::array();
    bool all = true;
    for (auto& c : checks) {
        all = all && c.ok;
        Json e = {{"fixture", c.fixture}, {"check", c.name}, {"ok", c.ok}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        out.push_back(e);
    }
    R.report("verify", {{"checks", out}, {"passed", all}});
    if (!all) throw VerificationFailure("some checks failed");
    return 0;
}

int cmd_report(Runner& R) {
    Document d = R.load();
    const auto& X = d.space;
    std::string out;
    auto section = [&](const std::string& title, Variant v) {
        Diamond D = hodge_diamond(X, v);
        out += "# " + title + "\n" + D.text() + "\n# " + title + " (csv)\n" + D.csv() + "\n";
    };
    out += "# cells " + std::to_string(X.cells.size()) + ", dimension " + std::to_string(X.dim()) + (X.compact() ? ", compact" : "") + "\n";
    if (X.compact()) {
        section("homology", Variant::Standard);
    } else {
        section("Borel-Moore homology", Variant::BorelMoore);
        section("homology", Variant::Standard);
    }
    section("cohomology", Variant::Cochain);
    R.lap("report");
    R.text(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropical homology toolkit"};
    app.require_subcommand(1);
    Options o;
    std::string kind;

    auto common = [&](CLI::App* c, bool input = true) {
        if (input) c->add_option("--input", o.input, "interchange file");
        c->add_option("--output", o.output, "output file (default stdout)");
        c->add_option("--cache-dir", o.cache_dir, "homology cache directory");
        c->add_flag("--timings", o.timings, "add timings to the report");
    };
    auto pq = [&](CLI::App* c) {
        c->add_option("--p", o.p);
        c->add_option("--q", o.q);
    };

    auto* gen = app.add_subcommand("generate", "build a space and write it in the interchange format");
    gen->add_option("kind", kind, "bergman | torus | klein | hypersurface | regions | quartic | floor-quartic | modify | product-T")->required();
    common(gen);
    gen->add_option("--bases", o.bases, "bases as digit strings, e.g. 01,02,12");
    gen->add_option("--n", o.n, "ground set size");
    gen->add_option("--uniform-r", o.uniform_r);
    gen->add_option("--uniform-n", o.uniform_n);
    gen->add_option("--lattice", o.lattice, "'l1,l2,..' or 'a,0;b,c'");
    gen->add_option("--type", o.type);
    gen->add_option("--twist", o.twist, "Klein twist n");
    gen->add_option("--l1", o.l1);
    gen->add_option("--l2", o.l2);
    gen->add_option("--points", o.points, "n:d");
    gen->add_option("--heights", o.heights, "comma separated, or 'squares'");
    gen->add_option("--coeffs", o.coeffs, "comma separated coefficients, formal terms allowed");
    gen->add_flag("--compactify", o.compactify);
    gen->add_option("--target-rank", o.target_rank, "Picard rank of the quartic");
    gen->add_flag("--generic", o.generic, "formal generic coefficients");
    gen->add_flag("--formal", o.formal, "formal floor spacing");
    gen->add_option("--function", o.function, "function block to modify along");

    auto* hom = app.add_subcommand("homology", "tropical homology groups");
    common(hom);
    pq(hom);
    hom->add_option("--variant", o.variant, "std | bm | cochain");
    hom->add_option("--model", o.model, "cell | simp");
    hom->add_option("--format", o.format, "json | text | csv");
    hom->add_flag("--diamond", o.diamond);
    auto* coh = app.add_subcommand("cohomology", "tropical cohomology groups");
    common(coh);
    pq(coh);
    coh->add_option("--model", o.model, "cell | simp");
    coh->add_option("--format", o.format, "json | text | csv");
    coh->add_flag("--diamond", o.diamond);
    auto* wav = app.add_subcommand("wave", "eigenwave on (co)homology");
    common(wav);
    pq(wav);
    wav->add_option("--variant", o.variant, "std | cochain");
    auto* pic = app.add_subcommand("picard", "Picard rank with a kernel certificate");
    common(pic);
    auto* pdc = app.add_subcommand("pd-check", "Poincare duality per bidegree, CSV");
    common(pdc);
    pq(pdc);
    auto* div = app.add_subcommand("divisor", "divisor of a PL function block");
    common(div);
    div->add_option("--function", o.function);
    auto* ver = app.add_subcommand("verify", "invariant suites on the input or on all fixtures");
    common(ver);
    ver->add_flag("--heavy", o.heavy, "include the quartic surface");
    ver->add_flag("--pd", o.pd, "also require Poincare duality for --input");
    auto* rep = app.add_subcommand("report", "diamond tables and CSV");
    common(rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!o.cache_dir.empty()) set_cache_dir(o.cache_dir);
        if (o.model != "cell" && o.model != "simp") throw InputError("--model", "expected cell or simp");
        Runner R(o);
        if (*gen) {
            Document d = generate(kind, o);
            write_text(o.output, emit(d));
            return 0;
        }
        if (*hom) return cmd_homology(R, false);
        if (*coh) return cmd_homology(R, true);
        if (*wav) return cmd_wave(R);
        if (*pic) return cmd_picard(R);
        if (*pdc) return cmd_pd(R);
        if (*div) return cmd_divisor(R);
        if (*ver) return cmd_verify(R);
        if (*rep) return cmd_report(R);
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
