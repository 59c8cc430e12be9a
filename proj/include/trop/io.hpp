#pragma once

#include "trop/duality.hpp"
#include "trop/space.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trop {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kFormatName = "trop-space";

// schema or value error; path like "cells[2].verts[0][1]", or "line 4, column 7" for syntax errors
class InputError : public std::runtime_error {
public:
    InputError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// "3", "-1/2", "1/2+3*t1-t2", "t3"; floating-point literals are rejected
Rat parse_rational(const std::string& s, const std::string& path = "");
ExtRat parse_ext(const std::string& s, const std::string& path = "");
Int parse_integer(const Json& j, const std::string& path = "");
Rat parse_rational(const Json& j, const std::string& path);
ExtRat parse_ext(const Json& j, const std::string& path);
// comma separated
std::vector<ExtRat> parse_ext_list(const std::string& s, const std::string& path = "");

struct Document {
    TropicalSpace space;
    std::map<std::string, PLFunction> functions;
    Json generator;  // free-form description of how the space was made, or null
};

Json to_json(const TropicalSpace& X);
Json to_json(const PLFunction& f);
Json to_json(const Document& d);
TropicalSpace space_from_json(const Json& j, const std::string& path = "");
PLFunction function_from_json(const Json& j, const std::string& path);
// parses, builds and validates; throws InputError
Document document_from_json(const Json& j);

// canonical text: sorted keys, two-space indentation, trailing newline
std::string emit(const Document& d);
std::string canonical(const Json& j);
Document parse_document(const std::string& text);
Document read_document(const std::string& file);
void write_text(const std::string& file, const std::string& text);

std::string content_hash(const std::string& text);

}  // namespace trop
