#pragma once

#include "qhe/algebra.hpp"

#include <string>
#include <vector>

namespace qhe {

/// Ã: for every vertex k a new vertex k~ and an arrow t_k : k → k~, with the
/// relations of A kept. The basis is that of A, the idempotents of the new
/// vertices and t_k · p for each basis element p ending at k. Levels and
/// grades of t_k · p are those of p plus one.
FiniteDimAlgebra tilde_extension(const FiniteDimAlgebra& a);

struct TildeCertificate {
    bool centralizer_ok = false;     // e Ã e ≅ A, e = sum of untilded idempotents
    bool quotient_ok = false;        // Ã / (tilded idempotents) ≅ A
    int nilpotency_degree = 0;       // smallest m with rad(Ã)^m = 0
    bool nilpotency_ok = false;      // equals N + 1
    bool loewy_ok = false;           // N^r_k < N + 1 at untilded k
    std::string failure;
    bool ok() const { return centralizer_ok && quotient_ok && nilpotency_ok && loewy_ok; }
};

TildeCertificate certify_tilde(const FiniteDimAlgebra& a, const FiniteDimAlgebra& tilde);

/// Ā = A ⊕ A*, (a, f)(b, g) = (ab, a·g + f·b) with (a·f)(c) = f(ca) and
/// (f·b)(c) = f(bc). The dual basis element b* runs opposite to b and has
/// degree N - 1 - deg b.
FiniteDimAlgebra trivial_extension_finite(const FiniteDimAlgebra& a);

/// Canonical trace of a trivial extension: coefficient 1 on every (e_k)*.
Vec canonical_trace(const FiniteDimAlgebra& te);

/// Dimensions of the graded components Ā_i, i = min..max degree; index 0 of
/// the result is degree `lowest`.
struct GradedDims {
    int lowest = 0;
    std::vector<int> dims;
};
GradedDims graded_components(const FiniteDimAlgebra& te);

std::string dual_label(const std::string& label);

}  // namespace qhe
