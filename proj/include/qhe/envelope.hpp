#pragma once

#include "qhe/algebra.hpp"
#include "qhe/kernels.hpp"
#include "qhe/module.hpp"
#include "qhe/trace_form.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <string>
#include <vector>

namespace qhe {

/// Finite level window [lo, hi]. Interior levels stay `margin` away from
/// both ends.
struct Window {
    int lo = 0;
    int hi = 0;
    int N = 1;
    int margin = 2;

    static Window symmetric(int half_width, int N);
    int levels() const { return hi - lo + 1; }
    bool contains(int i) const { return lo <= i && i <= hi; }
    bool interior(int i) const { return lo + margin <= i && i <= hi - margin; }
    std::vector<int> interior_levels() const;
    /// Throws Precondition when no interior level exists.
    void validate() const;
};

struct Object {
    int vertex = 0;
    int level = 0;
};

enum class Part { C, dual };

/// Where a basis element of a windowed category comes from: a basis element
/// of the base algebra placed in the slot from level src to level dst. For
/// dual elements the slot is that of the element being dualized, so the
/// dual itself runs from dst to src.
struct CatLabel {
    int base = 0;
    Part part = Part::C;
    int src = 0;
    int dst = 0;
};

/// A finite window of one of the ℤ-indexed categories, stored as the
/// finite-dimensional algebra with identity Σ e_(k,i). Object (k,i) is vertex
/// (i - lo) * n + k of `alg`.
struct WindowedCategory {
    std::string kind;  // "C", "B" (unquotiented) or "D"
    AlgebraPtr base;
    Window window;
    int N = 1;
    std::vector<Object> objects;
    std::vector<CatLabel> labels;
    AlgebraPtr alg;
    AlgebraPtr op;
    std::map<std::tuple<int, int, int, int>, int> index;  // (base, part, src, dst) -> basis element

    int num_base_vertices() const { return base->num_vertices(); }
    int object(int vertex, int level) const;  // -1 outside the window
    bool interior(int obj) const { return window.interior(objects[obj].level); }
    /// Basis element with the given origin, or -1.
    int find(const CatLabel& l) const;
    std::string object_name(int obj) const;
};

std::string object_name(const FiniteDimAlgebra& base, int vertex, int level);

/// ℭ = 𝔅/𝔍 on the window. The base algebra carries the filtration in its
/// levels. Going up by s > 0 the slot is I_s, the diagonal slot is A and
/// going down by 0 < t < N it is A/I_{N-t}.
WindowedCategory build_C(const AlgebraPtr& base, const Window& w, Exec exec = Exec::parallel);

/// The un-quotiented 𝔅 (all of A going down), used to test 𝔍.
WindowedCategory build_B(const AlgebraPtr& base, const Window& w, Exec exec = Exec::parallel);

/// Trivial extension ℭ ⊕ ℭ* of a windowed category.
WindowedCategory build_D(const WindowedCategory& c, Exec exec = Exec::parallel);

/// Levels of a basis element's slot as an element of the category itself:
/// (source level, target level).
std::pair<int, int> slot_levels(const WindowedCategory& c, int b);

struct CheckReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string failure;
    void fail(std::string why) {
        if (ok) failure = std::move(why);
        ok = false;
    }
};

/// hom between levels at distance >= N vanishes (exhaustive).
CheckReport band_check(const WindowedCategory& c);

/// Shift by one level preserves hom dimensions, labels and structure
/// constants wherever both sides lie in the window.
CheckReport shift_check(const WindowedCategory& c);

/// Copy of c with one non-identity basis element removed: a negative
/// control for shift_check.
WindowedCategory corrupt_drop_element(const WindowedCategory& c, int b);

/// Products in ℭ do not depend on the chosen lifts: perturbing the lift of a
/// down-going factor by an element of the killed ideal changes nothing
/// after reduction. Exhaustive over composable pairs and perturbation
/// directions.
CheckReport lift_independence_check(const WindowedCategory& c);

/// 𝔍 ⊂ 𝔅 is a two-sided ideal: exhaustive over composable pairs with one
/// factor in 𝔍. Also checks that 𝔅/𝔍 reproduces ℭ slot by slot.
CheckReport ideal_J_check(const AlgebraPtr& base, const Window& w);

/// The restricted dual ℭ* as a bimodule: for each basis element c, the
/// left and right actions on c* computed from the definition
/// (a·f·b)(c) = f(b c a).
struct RestrictedDual {
    const WindowedCategory* cat = nullptr;
    /// left[a] lists (f, a·f) pairs, indices of ℭ basis elements for the
    /// dual basis.
    std::vector<std::vector<std::pair<int, SparseVec>>> left, right;
    int dim() const { return cat ? cat->alg->dim() : 0; }
    /// dim of (ℭ* ) in the slot from object x to object y.
    int slot_dim(int x, int y) const { return static_cast<int>(cat->alg->hom(y, x).size()); }
};

RestrictedDual restricted_dual(const WindowedCategory& c);

/// Compares the dual part of 𝔇 with the restricted dual of ℭ: exhaustive
/// action comparison plus sampled triple checks of (a·f·b)(c) = f(b c a).
CheckReport check_restricted_dual(const WindowedCategory& c, const WindowedCategory& d, std::size_t samples,
                                  std::uint64_t seed);

/// Bilinear form (u, v) = Λ(u v) restricted to slot blocks.
struct SlotBlock {
    int x = 0, y = 0;   // objects; the block pairs hom(x,y) with hom(y,x)
    int rows = 0, cols = 0;
    int rank = 0;
    bool symmetric = true;
    bool nondegenerate() const { return rows == cols && rank == rows; }
};

struct FormCertificate {
    bool ok = false;
    std::string kind;        // "C" or "D"
    Vec functional;          // Λ on the basis of the category
    std::vector<SlotBlock> blocks;  // interior slot pairs with x <= y
    AssociativityReport associativity;
    bool formula_ok = true;  // 𝔇: Gram equals f(b) + g(a)
    std::string failure;
};

/// Form on ℭ from a trace form of the base algebra: Λ(c) = λ(base(c)) on
/// diagonal slots. Throws PreconditionUnmet unless the trace form is
/// non-degenerate and satisfies the pairing condition.
FormCertificate form_on_C(const WindowedCategory& c, const TraceForm& t, std::size_t samples, std::uint64_t seed);

/// Canonical form of 𝔇, plus the comparison with ((a,f),(b,g)) = f(b) + g(a).
FormCertificate form_on_D(const WindowedCategory& d, std::size_t samples, std::uint64_t seed);

enum class Side { left, right };
const char* to_string(Side s);

/// Representable modules. Left modules live over alg, right ones over op.
/// Throws BoundaryTruncated for non-interior objects.
ModuleRep projective(const WindowedCategory& c, Side side, int obj);
/// Dual of the opposite-side projective.
ModuleRep injective(const WindowedCategory& c, Side side, int obj);

const AlgebraPtr& side_algebra(const WindowedCategory& c, Side side);
const AlgebraPtr& other_algebra(const WindowedCategory& c, Side side);

/// Dimension vector of a module over the category, levels lo..hi by vertices.
std::vector<std::vector<int>> level_dims(const WindowedCategory& c, const ModuleRep& m);

nlohmann::json to_json(const WindowedCategory& c, bool with_products = true);

}  // namespace qhe
