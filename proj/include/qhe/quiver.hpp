#pragma once

#include "qhe/envelope.hpp"

#include <string>
#include <vector>

namespace qhe {

/// An arrow of the Gabriel quiver: a basis element of the category whose
/// class is part of a basis of rad/rad^2.
struct QuiverArrow {
    std::string name;
    int source = 0, target = 0;   // objects
    int element = 0;              // basis element of the category
    bool dual = false;            // lies in the ℭ* part of 𝔇
};

/// A path is a list of arrow indices in traversal order.
using QuiverPath = std::vector<int>;

struct PathRelation {
    int source = 0, target = 0, degree = 0;
    std::vector<std::pair<QuiverPath, Scalar>> terms;
};

/// Quiver and relations of the full subcategory on the given objects. The
/// relation ideal is assumed homogeneous in path length; `homogeneous` says
/// whether the path values of different lengths were independent.
struct QuiverPresentation {
    std::vector<int> objects;
    std::vector<QuiverArrow> arrows;
    std::vector<PathRelation> relations;   // minimal, canonically normalized
    int top_degree = 0;                    // first length at which every path vanishes
    bool homogeneous = true;
    bool generated = true;                 // arrows generate every deep slot
    std::string failure;
};

/// Objects at least `inset` levels inside the interior.
std::vector<int> deep_objects(const WindowedCategory& c, int inset);

QuiverPresentation extract_presentation(const WindowedCategory& c, const std::vector<int>& objects,
                                        bool with_relations = true, int max_degree = 12);

/// The degree-d part of the ideal generated by the given relations, per
/// slot: used to compare two relation sets after canonical normalization.
/// Returns for each (source, target, degree) the reduced echelon rows over
/// the path basis of that slot, with paths listed in `paths`.
struct IdealComponent {
    int source = 0, target = 0, degree = 0;
    std::vector<QuiverPath> paths;
    Echelon rows;
};
std::vector<IdealComponent> ideal_components(const Field& f, const std::vector<QuiverArrow>& arrows,
                                             const std::vector<int>& objects,
                                             const std::vector<PathRelation>& relations, int max_degree);

std::string path_name(const QuiverPresentation& p, const QuiverPath& path);
nlohmann::json to_json(const QuiverPresentation& p, const WindowedCategory& c);

/// Every product of two composable dotted elements (the ℭ* part) between
/// the presentation objects vanishes.
CheckReport dotted_products_vanish(const WindowedCategory& d, const QuiverPresentation& p);

}  // namespace qhe
