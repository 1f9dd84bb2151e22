#pragma once

#include "qhe/algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qhe {

/// Summary of the filtration A = I_0 ⊃ I_1 ⊃ ... ⊃ I_N = 0 carried by the
/// levels of an adapted basis (I_j is spanned by the basis elements of
/// level >= j).
struct IdealFiltration {
    std::string kind;          // "radical", "grading" or "file"
    int N = 0;
    std::vector<int> dims;     // dim I_0, ..., dim I_N
};

IdealFiltration describe_filtration(const FiniteDimAlgebra& a, const std::string& kind);

/// I_0, ..., I_N from the levels of a.
std::vector<Echelon> level_chain(const FiniteDimAlgebra& a);

/// rad^0 = A, rad^1, ..., rad^L = 0 computed by explicit multiplication.
std::vector<Echelon> radical_powers(const FiniteDimAlgebra& a);

/// Re-bases a so that every member of the chain (I_0 = A down to I_N = 0,
/// all two-sided ideals) is spanned by a subset of the basis, then sets the
/// levels. Keeps the basis untouched when it is already adapted.
FiniteDimAlgebra adapt_to_filtration(const FiniteDimAlgebra& a, const std::vector<Echelon>& chain);

/// Checks the ideal, multiplicativity and layer semisimplicity conditions
/// and returns the adapted algebra. Throws FiltrationError naming the index.
FiniteDimAlgebra validate_filtration(const FiniteDimAlgebra& a, const std::vector<Echelon>& chain);

/// Radical filtration; requires admissible relations.
FiniteDimAlgebra radical_filtration(const FiniteDimAlgebra& a);

/// I_j = span of the basis elements of degree >= j; requires homogeneous relations.
FiniteDimAlgebra grading_filtration(const FiniteDimAlgebra& a);

/// Reads {"layers": [I_1, I_2, ...]} where each layer lists basis labels or
/// coordinate vectors (decimal strings) over the basis of a.
std::vector<Echelon> load_filtration_file(const FiniteDimAlgebra& a, const std::string& path);

/// True when both algebras have the same basis and identical levels.
bool same_levels(const FiniteDimAlgebra& a, const FiniteDimAlgebra& b);

/// Loewy lengths (N^l_k, N^r_k) of A e_k and e_k A; a must carry its
/// radical filtration.
std::vector<std::pair<int, int>> loewy_lengths(const FiniteDimAlgebra& a);

/// soc^0 = 0 ⊂ soc^1 ⊂ ... ⊂ soc^L = A for the left regular module.
std::vector<Echelon> socle_filtration(const FiniteDimAlgebra& a);

/// Radical and socle filtration of the left regular module coincide.
bool is_rigid(const FiniteDimAlgebra& a);

}  // namespace qhe
