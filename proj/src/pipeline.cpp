#include "qhe/pipeline.hpp"

#include "qhe/errors.hpp"
#include "qhe/extensions.hpp"
#include "qhe/filtration.hpp"

#include <fstream>
#include <iterator>

namespace qhe {

std::uint64_t digest_bytes(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::input, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return digest_bytes(bytes);
}

AlgebraPtr apply_filtration(const FiniteDimAlgebra& raw, const std::string& filtration) {
    if (filtration == "radical") return std::make_shared<const FiniteDimAlgebra>(radical_filtration(raw));
    if (filtration == "grading") return std::make_shared<const FiniteDimAlgebra>(grading_filtration(raw));
    return std::make_shared<const FiniteDimAlgebra>(validate_filtration(raw, load_filtration_file(raw, filtration)));
}

LoadedAlgebra load_algebra(const std::string& path, const std::string& filtration) {
    LoadedAlgebra out;
    out.digest = file_digest(path);
    out.presentation = load_presentation(path);
    out.filtration = filtration;
    out.algebra = apply_filtration(compute_basis(out.presentation), filtration);
    return out;
}

std::optional<Vec> trace_functional(const Presentation& p, const FiniteDimAlgebra& a) {
    if (!p.trace) return std::nullopt;
    std::vector<std::pair<std::string, Scalar>> terms;
    for (const auto& t : *p.trace) {
        std::string label;
        if (t.arrows.empty()) {
            label = "e_" + p.vertices[t.vertex];
        } else {
            for (size_t k = 0; k < t.arrows.size(); ++k) label += (k ? "." : "") + p.arrows[t.arrows[k]].name;
        }
        terms.emplace_back(label, t.coeff);
    }
    return functional_from_labels(a, terms);
}

Target parse_target(const std::string& s) {
    if (s == "A") return Target::A;
    if (s == "C") return Target::C;
    if (s == "D") return Target::D;
    throw Error(ErrorKind::input, "unknown target '" + s + "'");
}

const char* to_string(Target t) {
    switch (t) {
        case Target::A: return "A";
        case Target::C: return "C";
        case Target::D: return "D";
    }
    return "?";
}

TargetCategories build_target(const AlgebraPtr& a, Target t, int half_width, Exec exec) {
    TargetCategories out;
    out.target = t;
    out.base = t == Target::D ? std::make_shared<const FiniteDimAlgebra>(tilde_extension(*a)) : a;
    out.N = out.base->filtration_length();
    out.half_width = half_width > 0 ? half_width : 4 * out.N;
    if (t == Target::A) return out;
    if (out.half_width < 2 * out.N + 1)
        throw Error(ErrorKind::precondition, "window half-width " + std::to_string(out.half_width) +
                                                 " is below 2N + 1 = " + std::to_string(2 * out.N + 1));
    out.c = build_C(out.base, Window::symmetric(out.half_width, out.N), exec);
    if (t == Target::D) out.d = build_D(*out.c, exec);
    return out;
}

OrderSpec order_for(Target t, OrderBase base) { return {base, t == Target::D}; }

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::input:
        case ErrorKind::dimension_not_stabilized:
        case ErrorKind::non_admissible_relations:
        case ErrorKind::non_split_simple:
            return 2;
        case ErrorKind::precondition:
        case ErrorKind::boundary_truncated:
        case ErrorKind::splitting_not_closed:
        case ErrorKind::not_graded:
        case ErrorKind::filtration_mismatch:
        case ErrorKind::not_an_ideal:
        case ErrorKind::not_multiplicative:
        case ErrorKind::layer_not_semisimple:
            return 3;
        default:
            return 1;
    }
}

}  // namespace qhe
