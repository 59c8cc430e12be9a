#include "doctest.h"
#include "trop/constructions.hpp"
#include "trop/homology.hpp"
#include "trop/io.hpp"
#include "trop/suites.hpp"

using namespace trop;

namespace {

Document doc_of(const TropicalSpace& X) {
    Document d;
    d.space = X;
    return d;
}

std::string error_of(const std::string& text) {
    try {
        parse_document(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

std::string path_of(const std::string& text) {
    try {
        parse_document(text);
    } catch (const InputError& e) {
        return e.path();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("numbers: exact parsing, floats rejected") {
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("-6/4") == Rat(-3, 2));
    CHECK(parse_ext("1/2+3*t1-t2") == ExtRat(Rat(1, 2)) + ExtRat::formal(1, 3) - ExtRat::formal(2));
    CHECK(parse_ext("t3") == ExtRat::formal(3));
    CHECK(parse_ext("-t1") == -ExtRat::formal(1));
    for (auto s : {"0.5", "1e3", "1/2+0.1*t1", "2.", "abc", "1/0", "t0", ""}) CHECK_THROWS_AS(parse_ext(s), InputError);
    CHECK_THROWS_AS(parse_rational(Json(0.5), "x"), InputError);
    CHECK(parse_integer(Json(7)) == 7);
    CHECK_THROWS_AS(parse_integer(Json("1/2")), InputError);
    for (auto x : {ExtRat(Rat(-7, 3)), ExtRat::formal(2, Rat(-1, 5)) + ExtRat(4), ExtRat(0), ExtRat::formal(1)})
        CHECK(parse_ext(x.str()) == x);
    auto l = parse_ext_list("1, 1/2+t1 ,3");
    REQUIRE(l.size() == 3);
    CHECK(l[1] == ExtRat(Rat(1, 2)) + ExtRat::formal(1));
}

TEST_CASE("round trip of every fixture keeps text and homology") {
    for (auto& f : standard_fixtures(false)) {
        CAPTURE(f.name);
        std::string a = emit(doc_of(*f.X));
        Document d = parse_document(a);
        CHECK(emit(d) == a);
        CHECK(d.space.cells.size() == f.X->cells.size());
        auto v = f.X->compact() ? Variant::Standard : Variant::BorelMoore;
        auto x = hodge_diamond(*f.X, v), y = hodge_diamond(d.space, v);
        CHECK(x.betti == y.betti);
        CHECK(x.torsion == y.torsion);
    }
}

TEST_CASE("canonical text ignores key order and whitespace") {
    auto X = torus2(ExtRat(1), ExtRat(Rat(1, 2)) + ExtRat::formal(1), ExtRat(1));
    std::string a = emit(doc_of(X));
    Json j = Json::parse(a);
    nlohmann::ordered_json o = nlohmann::ordered_json::parse(j.dump());
    std::string shuffled;
    {
        nlohmann::ordered_json r;
        std::vector<std::string> keys;
        for (auto& [k, _] : o.items()) keys.push_back(k);
        for (auto it = keys.rbegin(); it != keys.rend(); ++it) r[*it] = o[*it];
        shuffled = r.dump();
    }
    CHECK(shuffled != a);
    CHECK(emit(parse_document(shuffled)) == a);
    CHECK(emit(parse_document(j.dump(4))) == a);
    CHECK(content_hash(a) == content_hash(emit(parse_document(shuffled))));
    CHECK(content_hash(a) != content_hash(emit(doc_of(torus({ExtRat(1), ExtRat(2)})))));
}

TEST_CASE("functions and generator survive") {
    std::vector<Rat> h = {Rat(0), Rat(0), Rat(0)};
    auto T = regular_triangulation(2, 1, h);
    Document d = doc_of(region_complex(T, false).X);
    d.functions["f"] = hypersurface_polynomial(T);
    d.generator = {{"kind", "regions"}, {"points", "2:1"}};
    std::string a = emit(d);
    Document e = parse_document(a);
    CHECK(emit(e) == a);
    REQUIRE(e.functions.count("f"));
    auto D = divisor(e.space, e.functions.at("f"));
    CHECK(D.weights.size() == 3);
    Json j = Json::parse(a);
    j["generator"]["scale"] = 0.5;
    CHECK(error_of(j.dump()).find("floating-point") != std::string::npos);
}

TEST_CASE("hand written torus") {
    // square torus, one vertex, two loops, one square
    const char* text = R"({
      "format": "trop-space", "version": 1, "formal_dim": 0, "chart_rank": 2,
      "cells": [
        {"id": 0, "label": "v", "dim": 0, "sed": [], "verts": [["0","0"]], "rays": [], "weight": 0, "orientation": [1]},
        {"id": 1, "label": "a", "dim": 1, "sed": [], "verts": [["0","0"],["1","0"]], "rays": [], "weight": 0, "orientation": [1,0]},
        {"id": 2, "label": "b", "dim": 1, "sed": [], "verts": [["0","0"],["0","1"]], "rays": [], "weight": 0, "orientation": [0,1]},
        {"id": 3, "label": "s", "dim": 2, "sed": [], "verts": [["0","0"],["1","0"],["0","1"],["1","1"]], "rays": [], "weight": 1, "orientation": [1]}
      ],
      "faces": [
        {"child": 0, "parent": 1, "A": [[1,0],[0,1]], "b": ["0","0"], "sign": -1},
        {"child": 0, "parent": 1, "A": [[1,0],[0,1]], "b": ["1","0"], "sign": 1},
        {"child": 0, "parent": 2, "A": [[1,0],[0,1]], "b": ["0","0"], "sign": -1},
        {"child": 0, "parent": 2, "A": [[1,0],[0,1]], "b": ["0","1"], "sign": 1},
        {"child": 1, "parent": 3, "A": [[1,0],[0,1]], "b": ["0","0"], "sign": 1},
        {"child": 1, "parent": 3, "A": [[1,0],[0,1]], "b": ["0","1"], "sign": -1},
        {"child": 2, "parent": 3, "A": [[1,0],[0,1]], "b": ["0","0"], "sign": -1},
        {"child": 2, "parent": 3, "A": [[1,0],[0,1]], "b": ["1","0"], "sign": 1}
      ]
    })";
    std::string err = error_of(text);
    INFO(err);
    REQUIRE(err.empty());
    Document d = parse_document(text);
    int counts[3] = {0, 0, 0};
    for (auto& c : d.space.cells) ++counts[c.dim];
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 2);
    CHECK(counts[2] == 1);
    CHECK(d.space.compact());
    auto D = hodge_diamond(d.space, Variant::Standard);
    CHECK(D.betti == std::vector<std::vector<int>>{{1, 2, 1}, {2, 4, 2}, {1, 2, 1}});

    std::string bad = text;
    auto at = bad.find("[[1,0],[0,1]]");
    bad.replace(at, 13, R"([["1/2",0],[0,1]])");
    CHECK(path_of(bad) == "faces[0].A[0][0]");
    std::string fl = text;
    fl.replace(fl.find(R"x(["1","1"]])x"), 9, R"x([1.0,"1"])x");
    CHECK(error_of(fl).find("floating-point") != std::string::npos);
    CHECK(path_of(fl).rfind("cells[3].verts", 0) == 0);
}

TEST_CASE("schema and syntax errors carry locations") {
    CHECK(path_of("{\n  \"format\": \"trop-space\",\n  \"version\": 1,,\n}") == "line 3, column 16");
    CHECK(path_of(R"({"format": "other", "version": 1})") == "format");
    CHECK(path_of(R"({"format": "trop-space", "version": 9})") == "version");
    CHECK(path_of(R"({"format": "trop-space", "version": 1, "formal_dim": 0, "chart_rank": 1, "cells": [], "faces": [
        {"child": 0, "parent": 1, "A": [[1]], "b": ["0"], "sign": 1}]})") == "faces[0].child");
    auto X = euclidean_space(2);
    Json j = Json::parse(emit(doc_of(X)));
    j["cells"][0]["sed"] = {5};
    CHECK(path_of(j.dump()) == "cells[0].sed");
    j = Json::parse(emit(doc_of(X)));
    j["cells"][1]["rays"][0] = {"1/2", "0"};
    CHECK(path_of(j.dump()).rfind("cells[1].rays[0]", 0) == 0);
}
