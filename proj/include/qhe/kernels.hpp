#pragma once

#include "qhe/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qhe {

/// Execution policy for the kernels that have both an OpenMP and a serial
/// implementation. The serial path is the reference the tests compare to.
enum class Exec { serial, parallel };

int available_threads();

struct Triple {
    int u, v, w;  // checks (u v) w = u (v w)
};

/// Composable triples drawn uniformly by middle element, seeded.
std::vector<Triple> sample_triples(const FiniteDimAlgebra& a, std::size_t count, std::uint64_t seed);
/// Every composable triple.
std::vector<Triple> all_triples(const FiniteDimAlgebra& a);

struct AssociativityReport {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

AssociativityReport check_associativity(const FiniteDimAlgebra& a, const std::vector<Triple>& triples, Exec exec);

/// Trace-form associativity λ((uv)w) = λ(u(vw)) on the given triples.
AssociativityReport check_form_associativity(const FiniteDimAlgebra& a, const Vec& functional,
                                             const std::vector<Triple>& triples, Exec exec);

}  // namespace qhe
