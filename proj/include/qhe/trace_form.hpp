#pragma once

#include "qhe/algebra.hpp"

#include <optional>
#include <string>

namespace qhe {

enum class FormVerdict { ok, not_symmetric, degenerate, not_associative };

const char* to_string(FormVerdict v);

/// (u, v) = λ(u v) on the basis.
struct TraceForm {
    Vec functional;
    Mat gram;
    FormVerdict verdict = FormVerdict::ok;
    int rank = 0;
    std::pair<int, int> witness{-1, -1};  // asymmetric pair
    Vec radical_vector;                    // non-zero element of the radical of the form
};

Mat gram_matrix(const FiniteDimAlgebra& a, const Vec& functional);

/// Builds the Gram matrix of λ(uv) and certifies symmetry, associativity
/// ((uv, w) = (u, vw) on composable triples) and non-degeneracy.
TraceForm check_symmetric(const FiniteDimAlgebra& a, const Vec& functional);

/// Functional given by a presentation's trace entry, in coordinates of a's basis.
Vec functional_from_labels(const FiniteDimAlgebra& a, const std::vector<std::pair<std::string, Scalar>>& terms);

struct PairingCheck {
    bool ok = false;
    int failing_j = -1;
    std::string detail;
};

/// For j = 0..N the pairing A/I_j × I_{N-j} → k is non-degenerate and
/// I_{N-j} is the orthogonal complement of I_j. The filtration is read from
/// the levels of a.
PairingCheck check_pairing_condition(const FiniteDimAlgebra& a, const TraceForm& t);

/// Searches the linear space of symmetric functionals (λ(uv) = λ(vu)) for a
/// non-degenerate one. Returns nullopt together with a common radical vector
/// when every symmetric functional is degenerate.
struct SymmetricSearch {
    std::optional<Vec> functional;
    int symmetric_dim = 0;      // dimension of the space of symmetric functionals
    Vec common_radical;         // set when no functional can be non-degenerate
};
SymmetricSearch find_symmetric_form(const FiniteDimAlgebra& a, unsigned long seed);

}  // namespace qhe
