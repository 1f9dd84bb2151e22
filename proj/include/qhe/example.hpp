#pragma once

#include "qhe/quiver.hpp"

#include <map>
#include <string>
#include <vector>

namespace qhe {

/// A ℤ-periodic quiver with relations written with a free level index i:
/// an arrow instance is (name, shift) meaning name^{i+shift}, vertex
/// instances are (vertex, shift) meaning vertex_{i+shift}. Drawn level i
/// corresponds to category level level_sign * i.
struct PeriodicArrow {
    std::string name;
    std::string from, to;
    int from_shift = 0, to_shift = 0;
    bool dotted = false;
};

struct PeriodicTerm {
    Scalar coeff;
    std::vector<std::pair<std::string, int>> path;  // traversal order
};

struct PeriodicQuiver {
    std::string name;
    int level_sign = 1;
    std::vector<PeriodicArrow> arrows;
    std::vector<std::vector<PeriodicTerm>> relations;
};

/// Reads {"level_sign", "arrows": [{"name","from":[v,s],"to":[v,s],"style"}],
/// "relations": [[{"coeff","path":[[name,s],...]}]]}.
PeriodicQuiver parse_periodic_quiver(const nlohmann::json& j, const Field& f);

struct GoldenComparison {
    bool ok = false;
    int arrow_instances = 0;
    int arrows = 0;
    int relation_instances = 0;
    int slots_compared = 0;
    std::vector<std::string> redundant;   // periodic generators that are not arrows
    std::string failure;
};

/// Generators must match slot by slot; relations are compared as ideals,
/// degree by degree, on slots at least N levels inside the object set.
GoldenComparison compare_presentation(const WindowedCategory& c, const QuiverPresentation& p,
                                      const PeriodicQuiver& g, const std::map<std::string, std::string>& vertex_map);

/// Every arrow lies in a slot holding a periodic generator of the same
/// style; extra periodic generators are listed as redundant.
GoldenComparison compare_generators(const WindowedCategory& c, const QuiverPresentation& p, const PeriodicQuiver& g,
                                    const std::map<std::string, std::string>& vertex_map);

nlohmann::json to_json(const GoldenComparison& g);

/// The easy quiver example: ℭ(A₂) and ℭ(K~) against the periodic quiver
/// with its three relation families, 𝔇(K~) against the picture with dotted
/// arrows. Reads a2.json, k.json and golden/a2_periodic.json from the
/// corpus directory.
struct ExampleRun {
    bool pass = false;
    nlohmann::json report;
    nlohmann::json c_presentation, d_presentation;
};
ExampleRun run_example_a2(const std::string& corpus_dir);

}  // namespace qhe
