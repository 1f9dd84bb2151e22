#pragma once

#include "qhe/envelope.hpp"
#include "qhe/extensions.hpp"
#include "qhe/filtration.hpp"
#include "qhe/pipeline.hpp"

#include <memory>
#include <string>

#ifndef QHE_CORPUS_DIR
#define QHE_CORPUS_DIR "corpus"
#endif

namespace testing {

inline std::string corpus(const std::string& name) { return std::string(QHE_CORPUS_DIR) + "/" + name + ".json"; }

inline qhe::AlgebraPtr load(const std::string& name) { return qhe::load_algebra(corpus(name)).algebra; }

inline qhe::AlgebraPtr tilde(const qhe::AlgebraPtr& a) {
    return std::make_shared<const qhe::FiniteDimAlgebra>(qhe::tilde_extension(*a));
}

inline qhe::WindowedCategory C_at(const qhe::AlgebraPtr& a, int factor = 4) {
    const int N = a->filtration_length();
    return qhe::build_C(a, qhe::Window::symmetric(factor * N, N));
}

/// 𝔇(Ã) with its ℭ(Ã).
struct DPair {
    qhe::AlgebraPtr tilde;
    qhe::WindowedCategory c, d;
};
inline DPair D_at(const qhe::AlgebraPtr& a, int factor = 4) {
    DPair p;
    p.tilde = tilde(a);
    p.c = C_at(p.tilde, factor);
    p.d = qhe::build_D(p.c);
    return p;
}

/// Small window without the usual margin, for exhaustive oracles.
inline qhe::Window small_window(int levels, int N, int margin) {
    qhe::Window w;
    w.lo = 0;
    w.hi = levels - 1;
    w.N = N;
    w.margin = margin;
    return w;
}

}  // namespace testing
