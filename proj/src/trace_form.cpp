#include "qhe/trace_form.hpp"

#include "qhe/errors.hpp"

#include <random>

namespace qhe {

const char* to_string(FormVerdict v) {
    switch (v) {
        case FormVerdict::ok: return "ok";
        case FormVerdict::not_symmetric: return "NotSymmetric";
        case FormVerdict::degenerate: return "Degenerate";
        case FormVerdict::not_associative: return "NotAssociative";
    }
    return "?";
}

namespace {

Scalar evaluate(const Field& f, const Vec& lambda, const SparseVec& x) {
    Scalar s = 0;
    for (const auto& [b, c] : x) s += lambda[b] * c;
    return f.reduce(s);
}

}  // namespace

Mat gram_matrix(const FiniteDimAlgebra& a, const Vec& functional) {
    const int n = a.dim();
    if (static_cast<int>(functional.size()) != n)
        throw Error(ErrorKind::dimension_mismatch, "functional length differs from the algebra dimension");
    Mat g(n, n);
    for (int u = 0; u < n; ++u)
        for (const auto& [v, p] : a.row(u)) g(u, v) = evaluate(a.field(), functional, p);
    return g;
}

TraceForm check_symmetric(const FiniteDimAlgebra& a, const Vec& functional) {
    const Field& f = a.field();
    TraceForm t;
    t.functional = functional;
    t.gram = gram_matrix(a, functional);
    const int n = a.dim();
    for (int u = 0; u < n && t.verdict == FormVerdict::ok; ++u)
        for (int v = u + 1; v < n; ++v)
            if (t.gram(u, v) != t.gram(v, u)) {
                t.verdict = FormVerdict::not_symmetric;
                t.witness = {u, v};
                break;
            }
    if (t.verdict == FormVerdict::ok) {
        // (uv, w) = (u, vw); implied by associativity but checked on the form itself
        for (int v = 0; v < n && t.verdict == FormVerdict::ok; ++v)
            for (int u : a.from(a.element(v).target)) {
                for (int w : a.into(a.element(v).source)) {
                    const SparseVec* uv = a.product(u, v);
                    const SparseVec* vw = a.product(v, w);
                    Scalar l = uv ? evaluate(f, functional, a.multiply(*uv, SparseVec{{w, Scalar(1)}})) : Scalar(0);
                    Scalar r = vw ? evaluate(f, functional, a.multiply(SparseVec{{u, Scalar(1)}}, *vw)) : Scalar(0);
                    if (l != r) {
                        t.verdict = FormVerdict::not_associative;
                        t.witness = {u, w};
                        break;
                    }
                }
                if (t.verdict != FormVerdict::ok) break;
            }
    }
    auto kernel = kernel_basis(f, t.gram);
    t.rank = n - static_cast<int>(kernel.size());
    if (!kernel.empty()) {
        t.radical_vector = kernel.front();
        if (t.verdict == FormVerdict::ok) t.verdict = FormVerdict::degenerate;
    }
    return t;
}

Vec functional_from_labels(const FiniteDimAlgebra& a, const std::vector<std::pair<std::string, Scalar>>& terms) {
    Vec lambda(a.dim());
    for (const auto& [label, c] : terms) {
        int b = a.find_label(label);
        if (b < 0) throw Error(ErrorKind::input, "trace refers to '" + label + "', which is not a basis element");
        lambda[b] = a.field().add(lambda[b], c);
    }
    return lambda;
}

PairingCheck check_pairing_condition(const FiniteDimAlgebra& a, const TraceForm& t) {
    PairingCheck out;
    const Field& f = a.field();
    const int N = a.filtration_length();
    const int n = a.dim();
    for (int j = 0; j <= N; ++j) {
        std::vector<int> low, high;  // lifts of a basis of A/I_j, basis of I_{N-j}
        for (int b = 0; b < n; ++b) {
            if (a.element(b).level < j) low.push_back(b);
            if (a.element(b).level >= N - j) high.push_back(b);
        }
        if (low.size() != high.size()) {
            out.failing_j = j;
            out.detail = "dim A/I_j = " + std::to_string(low.size()) + " but dim I_{N-j} = " +
                         std::to_string(high.size());
            return out;
        }
        if (!low.empty()) {
            Mat block(static_cast<int>(low.size()), static_cast<int>(high.size()));
            for (size_t r = 0; r < low.size(); ++r)
                for (size_t c = 0; c < high.size(); ++c) block(r, c) = t.gram(low[r], high[c]);
            if (rank(f, block) != static_cast<int>(low.size())) {
                out.failing_j = j;
                out.detail = "pairing between A/I_j and I_{N-j} is degenerate";
                return out;
            }
        }
        // I_j ⟂ I_{N-j} on both sides
        for (int b = 0; b < n; ++b) {
            if (a.element(b).level < j) continue;
            for (int c : high)
                if (!Field::is_zero(t.gram(b, c)) || !Field::is_zero(t.gram(c, b))) {
                    out.failing_j = j;
                    out.detail = "I_{N-j} is not orthogonal to I_j";
                    return out;
                }
        }
    }
    out.ok = true;
    return out;
}

SymmetricSearch find_symmetric_form(const FiniteDimAlgebra& a, unsigned long seed) {
    const Field& f = a.field();
    const int n = a.dim();
    SymmetricSearch out;
    // linear conditions λ(uv - vu) = 0
    std::vector<Vec> rows;
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) {
            Vec r(n);
            if (const SparseVec* p = a.product(u, v))
                for (const auto& [w, c] : *p) r[w] = f.add(r[w], c);
            if (const SparseVec* p = a.product(v, u))
                for (const auto& [w, c] : *p) r[w] = f.sub(r[w], c);
            if (!is_zero(r)) rows.push_back(std::move(r));
        }
    std::vector<Vec> space;
    if (rows.empty()) {
        for (int b = 0; b < n; ++b) {
            Vec e(n);
            e[b] = 1;
            space.push_back(e);
        }
    } else {
        space = kernel_basis(f, Mat::from_rows(rows, n));
    }
    out.symmetric_dim = static_cast<int>(space.size());

    // common radical: v with λ(v u) = 0 for all u and all symmetric λ
    std::vector<Vec> cond;
    for (const auto& lambda : space) {
        Mat g = gram_matrix(a, lambda);
        for (int u = 0; u < n; ++u) {
            Vec r(n);
            for (int v = 0; v < n; ++v) r[v] = g(v, u);
            if (!is_zero(r)) cond.push_back(std::move(r));
        }
    }
    std::vector<Vec> common;
    if (cond.empty()) {
        for (int b = 0; b < n; ++b) {
            Vec e(n);
            e[b] = 1;
            common.push_back(e);
        }
    } else {
        common = kernel_basis(f, Mat::from_rows(cond, n));
    }
    if (!common.empty()) {
        out.common_radical = common.front();
        return out;
    }

    // a generic combination is non-degenerate when any is; try a few
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Vec lambda(n);
        for (const auto& s : space) {
            Scalar c = f.from_int(static_cast<long>(rng() % 97) - 48);
            for (int b = 0; b < n; ++b) lambda[b] = f.add(lambda[b], f.mul(c, s[b]));
        }
        if (rank(f, gram_matrix(a, lambda)) == n) {
            out.functional = lambda;
            return out;
        }
    }
    return out;
}

}  // namespace qhe
