#include "qhe/extensions.hpp"

#include "qhe/errors.hpp"
#include "qhe/filtration.hpp"

#include <algorithm>

namespace qhe {

std::string dual_label(const std::string& label) { return label + "*"; }

FiniteDimAlgebra tilde_extension(const FiniteDimAlgebra& a) {
    const int n = a.num_vertices();
    std::vector<VertexInfo> vertices = a.vertices();
    for (int k = 0; k < n; ++k) vertices.push_back({a.vertices()[k].name + "~", true});

    std::vector<BasisElement> basis = a.basis();
    std::vector<int> tilde_unit(n);
    for (int k = 0; k < n; ++k) {
        tilde_unit[k] = static_cast<int>(basis.size());
        basis.push_back({n + k, n + k, 0, 0, false, "e_" + vertices[n + k].name});
    }
    // t_k · p for every p with target k
    std::vector<int> t_of(a.dim(), -1);
    for (int p = 0; p < a.dim(); ++p) {
        const auto& e = a.element(p);
        const std::string t = "t_" + a.vertices()[e.target].name;
        t_of[p] = static_cast<int>(basis.size());
        BasisElement te;
        te.source = e.source;
        te.target = n + e.target;
        te.level = e.level + 1;
        te.grade = e.grade + 1;
        te.radical = true;
        te.label = e.radical ? e.label + "." + t : t;
        basis.push_back(te);
    }

    FiniteDimAlgebra out(a.field(), a.name() + "~", std::move(vertices), std::move(basis));
    for (int u = 0; u < a.dim(); ++u) {
        for (const auto& [v, p] : a.row(u)) out.set_product(u, v, p);
    }
    for (int k = 0; k < n; ++k) out.set_product(tilde_unit[k], tilde_unit[k], {{tilde_unit[k], Scalar(1)}});
    for (int p = 0; p < a.dim(); ++p) {
        int tp = t_of[p];
        out.set_product(tilde_unit[a.element(p).target], tp, {{tp, Scalar(1)}});
        // (t_k p) q = t_k (p q)
        for (const auto& [q, pq] : a.row(p)) {
            SparseVec img;
            for (const auto& [w, c] : pq) img.emplace_back(t_of[w], c);
            std::sort(img.begin(), img.end());
            out.set_product(tp, q, std::move(img));
        }
    }
    out.set_admissible(a.admissible());
    out.set_homogeneous(a.homogeneous());
    out.finalize();
    return out;
}

TildeCertificate certify_tilde(const FiniteDimAlgebra& a, const FiniteDimAlgebra& tilde) {
    TildeCertificate c;
    const int n = a.num_vertices();
    const int N = a.filtration_length();
    std::vector<int> untilded, tilded;
    for (int k = 0; k < tilde.num_vertices(); ++k) (tilde.vertices()[k].tilde ? tilded : untilded).push_back(k);

    Subquotient cent = corner(tilde, untilded);
    MapCheck m1 = verify_algebra_map(a, cent.algebra, label_matching(a, cent.algebra));
    c.centralizer_ok = m1.ok;
    if (!m1.ok) c.failure = "centralizer: " + m1.failure;

    std::vector<SparseVec> gens;
    for (int k : tilded) gens.push_back({{tilde.unit(k), Scalar(1)}});
    Echelon ideal = ideal_generated(tilde, gens);
    Subquotient quo = quotient_algebra(tilde, ideal);
    std::vector<SparseVec> images;
    bool labels_ok = true;
    for (const auto& e : a.basis()) {
        int b = tilde.find_label(e.label);
        if (b < 0) {
            labels_ok = false;
            break;
        }
        images.push_back(project_to_quotient(tilde, ideal, quo, {{b, Scalar(1)}}));
    }
    MapCheck m2 = labels_ok ? verify_algebra_map(a, quo.algebra, images) : MapCheck{false, "labels missing"};
    c.quotient_ok = m2.ok;
    if (!m2.ok && c.failure.empty()) c.failure = "idempotent quotient: " + m2.failure;

    auto powers = radical_powers(tilde);
    c.nilpotency_degree = static_cast<int>(powers.size()) - 1;
    c.nilpotency_ok = c.nilpotency_degree == N + 1;
    if (!c.nilpotency_ok && c.failure.empty())
        c.failure = "rad(Ã) has nilpotency degree " + std::to_string(c.nilpotency_degree);

    FiniteDimAlgebra rt = adapt_to_filtration(tilde, powers);
    auto ll = loewy_lengths(rt);
    c.loewy_ok = true;
    for (int k = 0; k < n; ++k)
        if (ll[k].second >= N + 1) c.loewy_ok = false;
    if (!c.loewy_ok && c.failure.empty()) c.failure = "right Loewy length at an untilded vertex reaches N + 1";
    return c;
}

FiniteDimAlgebra trivial_extension_finite(const FiniteDimAlgebra& a) {
    const int n = a.dim();
    const int N = a.filtration_length();
    std::vector<BasisElement> basis = a.basis();
    for (const auto& e : a.basis()) {
        BasisElement d;
        d.source = e.target;
        d.target = e.source;
        d.grade = N - 1 - e.grade;
        d.level = N - 1 - e.level;
        d.radical = true;
        d.label = dual_label(e.label);
        basis.push_back(d);
    }
    FiniteDimAlgebra out(a.field(), "T(" + a.name() + ")", a.vertices(), std::move(basis));
    const Field& f = a.field();
    for (int u = 0; u < n; ++u)
        for (const auto& [v, p] : a.row(u)) out.set_product(u, v, p);
    // Every product z · u = Σ c_w w contributes c_w z* to u · w* and c_w u* to w* · z.
    for (int z = 0; z < n; ++z)
        for (const auto& [u, zu] : a.row(z))
            for (const auto& [w, c] : zu) {
                out.add_product(u, n + w, c, n + z);
                out.add_product(n + w, z, c, n + u);
            }
    (void)f;
    out.set_admissible(true);
    out.set_homogeneous(a.homogeneous());
    out.finalize();
    return out;
}

Vec canonical_trace(const FiniteDimAlgebra& te) {
    Vec lambda(te.dim());
    for (int k = 0; k < te.num_vertices(); ++k) {
        int b = te.find_label(dual_label(te.element(te.unit(k)).label));
        if (b < 0) throw Error(ErrorKind::internal, "dual idempotent missing");
        lambda[b] = 1;
    }
    return lambda;
}

GradedDims graded_components(const FiniteDimAlgebra& te) {
    GradedDims g;
    int lo = 0, hi = 0;
    for (const auto& e : te.basis()) {
        lo = std::min(lo, e.grade);
        hi = std::max(hi, e.grade);
    }
    g.lowest = lo;
    g.dims.assign(hi - lo + 1, 0);
    for (const auto& e : te.basis()) ++g.dims[e.grade - lo];
    return g;
}

}  // namespace qhe
