#pragma once

#include "qhe/field.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qhe {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

/// One term of a linear combination of parallel paths. A path lists arrows in
/// traversal order; a length-zero path is the idempotent of `vertex`.
struct PathTerm {
    Scalar coeff;
    int vertex = -1;
    std::vector<int> arrows;
};

using PathCombination = std::vector<PathTerm>;

struct Presentation {
    std::string name;
    Field field;
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<PathCombination> relations;
    int degree_cap = 12;
    std::vector<int> arrow_degree;  // defaults to 1 per arrow
    bool explicit_grading = false;
    std::optional<PathCombination> trace;

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;

    int path_source(const PathTerm& t) const;
    int path_target(const PathTerm& t) const;
    int path_degree(const PathTerm& t) const;
};

Presentation parse_presentation(const nlohmann::json& j);
Presentation load_presentation(const std::string& path);
nlohmann::json to_json(const Presentation& p);

}  // namespace qhe
