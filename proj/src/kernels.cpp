#include "qhe/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <random>

namespace qhe {

int available_threads() { return omp_get_max_threads(); }

std::vector<Triple> sample_triples(const FiniteDimAlgebra& a, std::size_t count, std::uint64_t seed) {
    std::vector<Triple> out;
    if (a.dim() == 0) return out;
    std::mt19937_64 rng(seed);
    out.reserve(count);
    while (out.size() < count) {
        int v = static_cast<int>(rng() % a.dim());
        const auto& left = a.from(a.element(v).target);
        const auto& right = a.into(a.element(v).source);
        int u = left[rng() % left.size()];
        int w = right[rng() % right.size()];
        out.push_back({u, v, w});
    }
    return out;
}

std::vector<Triple> all_triples(const FiniteDimAlgebra& a) {
    std::vector<Triple> out;
    for (int v = 0; v < a.dim(); ++v)
        for (int u : a.from(a.element(v).target))
            for (int w : a.into(a.element(v).source)) out.push_back({u, v, w});
    return out;
}

namespace {

bool associative_on(const FiniteDimAlgebra& a, const Triple& t) {
    const SparseVec* uv = a.product(t.u, t.v);
    const SparseVec* vw = a.product(t.v, t.w);
    SparseVec lhs = uv ? a.multiply(*uv, SparseVec{{t.w, Scalar(1)}}) : SparseVec{};
    SparseVec rhs = vw ? a.multiply(SparseVec{{t.u, Scalar(1)}}, *vw) : SparseVec{};
    return lhs == rhs;
}

Scalar eval(const FiniteDimAlgebra& a, const Vec& lambda, const SparseVec& x) {
    Scalar s = 0;
    for (const auto& [b, c] : x) s += lambda[b] * c;
    return a.field().reduce(s);
}

bool form_associative_on(const FiniteDimAlgebra& a, const Vec& lambda, const Triple& t) {
    const SparseVec* uv = a.product(t.u, t.v);
    const SparseVec* vw = a.product(t.v, t.w);
    Scalar l = uv ? eval(a, lambda, a.multiply(*uv, SparseVec{{t.w, Scalar(1)}})) : Scalar(0);
    Scalar r = vw ? eval(a, lambda, a.multiply(SparseVec{{t.u, Scalar(1)}}, *vw)) : Scalar(0);
    return l == r;
}

template <class Check>
AssociativityReport run(const FiniteDimAlgebra& a, const std::vector<Triple>& triples, Exec exec, Check check) {
    AssociativityReport rep;
    rep.checked = triples.size();
    const long n = static_cast<long>(triples.size());
    std::vector<char> bad(triples.size(), 0);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 256)
        for (long i = 0; i < n; ++i) bad[i] = !check(triples[i]);
    } else {
        for (long i = 0; i < n; ++i) bad[i] = !check(triples[i]);
    }
    for (long i = 0; i < n; ++i) {
        if (!bad[i]) continue;
        if (rep.failures++ == 0) {
            const auto& t = triples[i];
            rep.first_failure =
                "(" + a.element(t.u).label + ", " + a.element(t.v).label + ", " + a.element(t.w).label + ")";
        }
    }
    return rep;
}

}  // namespace

AssociativityReport check_associativity(const FiniteDimAlgebra& a, const std::vector<Triple>& triples, Exec exec) {
    return run(a, triples, exec, [&](const Triple& t) { return associative_on(a, t); });
}

AssociativityReport check_form_associativity(const FiniteDimAlgebra& a, const Vec& functional,
                                             const std::vector<Triple>& triples, Exec exec) {
    return run(a, triples, exec, [&](const Triple& t) { return form_associative_on(a, functional, t); });
}

}  // namespace qhe
