#pragma once

#include "qhe/envelope.hpp"
#include "qhe/errors.hpp"
#include "qhe/presentation.hpp"
#include "qhe/qh.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace qhe {

/// FNV-1a over the bytes of a file; seeds every sampled check so that runs
/// on the same input are identical.
std::uint64_t file_digest(const std::string& path);
std::uint64_t digest_bytes(std::string_view bytes);

/// A parsed input with its filtered algebra. `filtration` is "radical",
/// "grading" or the path of a layer file.
struct LoadedAlgebra {
    Presentation presentation;
    AlgebraPtr algebra;
    std::string filtration;
    std::uint64_t digest = 0;
};

LoadedAlgebra load_algebra(const std::string& path, const std::string& filtration = "radical");
AlgebraPtr apply_filtration(const FiniteDimAlgebra& raw, const std::string& filtration);

/// λ from the presentation's "trace" entry, in the basis of `a`.
std::optional<Vec> trace_functional(const Presentation& p, const FiniteDimAlgebra& a);

enum class Target { A, C, D };
Target parse_target(const std::string& s);
const char* to_string(Target t);

/// The category a command acts on. For D the envelope is built from Ã and
/// `c` holds ℭ(Ã); `window_half_width` <= 0 means 4N of the algebra used.
struct TargetCategories {
    Target target = Target::C;
    AlgebraPtr base;        // A, or Ã for target D
    int N = 0;
    int half_width = 0;
    std::optional<WindowedCategory> c, d;
    const WindowedCategory& category() const { return target == Target::D ? *d : *c; }
};

/// Throws Precondition when the half-width is below 2N + 1.
TargetCategories build_target(const AlgebraPtr& a, Target t, int half_width, Exec exec = Exec::parallel);

/// The order used on a target: the level order on ℭ, refined by tilde on 𝔇
/// (its second order is the exact opposite).
OrderSpec order_for(Target t, OrderBase base);

/// Exit code of a library error kind: 2 for bad input, 3 for unmet
/// preconditions, 1 when the claim itself failed.
int exit_code_for(ErrorKind k);

}  // namespace qhe
