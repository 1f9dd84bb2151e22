#include "qhe/algebra.hpp"

#include "qhe/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qhe {

FiniteDimAlgebra::FiniteDimAlgebra(Field field, std::string name, std::vector<VertexInfo> vertices,
                                   std::vector<BasisElement> basis)
    : field_(std::move(field)),
      name_(std::move(name)),
      vertices_(std::move(vertices)),
      basis_(std::move(basis)),
      table_(basis_.size()) {}

void FiniteDimAlgebra::add_product(int u, int v, const Scalar& c, int w) {
    if (Field::is_zero(c)) return;
    auto& row = table_[u];
    for (auto& [col, p] : row) {
        if (col != v) continue;
        axpy(field_, p, c, SparseVec{{w, Scalar(1)}});
        return;
    }
    row.emplace_back(v, SparseVec{{w, c}});
}

void FiniteDimAlgebra::set_product(int u, int v, SparseVec p) {
    if (p.empty()) return;
    auto& row = table_[u];
    for (auto& [col, q] : row)
        if (col == v) {
            q = std::move(p);
            return;
        }
    row.emplace_back(v, std::move(p));
}

void FiniteDimAlgebra::finalize() {
    const int n = num_vertices();
    for (auto& row : table_) {
        row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second.empty(); }), row.end());
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    hom_.assign(static_cast<size_t>(n) * n, {});
    from_.assign(n, {});
    into_.assign(n, {});
    units_.assign(n, -1);
    hom_pos_.assign(dim(), 0);
    for (int b = 0; b < dim(); ++b) {
        const auto& e = basis_[b];
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            throw Error(ErrorKind::internal, "basis element '" + e.label + "' has an invalid slot");
        hom_pos_[b] = static_cast<int>(hom_[static_cast<size_t>(e.target) * n + e.source].size());
        hom_[static_cast<size_t>(e.target) * n + e.source].push_back(b);
        from_[e.source].push_back(b);
        into_[e.target].push_back(b);
        if (!e.radical) {
            if (e.source != e.target || units_[e.source] >= 0)
                throw Error(ErrorKind::internal, "non-radical basis elements must be one idempotent per vertex");
            units_[e.source] = b;
        }
    }
    for (int k = 0; k < n; ++k)
        if (units_[k] < 0) throw Error(ErrorKind::internal, "vertex '" + vertices_[k].name + "' has no idempotent");

    // rad^2 per slot, in slot-local coordinates
    std::map<std::pair<int, int>, std::vector<SparseVec>> rad2;
    for (int u = 0; u < dim(); ++u) {
        if (!basis_[u].radical) continue;
        for (const auto& [v, p] : table_[u]) {
            if (!basis_[v].radical) continue;
            rad2[{basis_[v].source, basis_[u].target}].push_back(p);
        }
    }
    generators_.clear();
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const auto& slot = hom(x, y);
            std::vector<int> rad;
            for (int b : slot)
                if (basis_[b].radical) rad.push_back(b);
            if (rad.empty()) continue;
            auto it = rad2.find({x, y});
            if (it == rad2.end()) {
                generators_.insert(generators_.end(), rad.begin(), rad.end());
                continue;
            }
            std::map<int, int> local;
            for (size_t i = 0; i < rad.size(); ++i) local[rad[i]] = static_cast<int>(i);
            Echelon e(static_cast<int>(rad.size()));
            for (const auto& p : it->second) {
                if (e.full()) break;
                Vec v(rad.size());
                for (const auto& [idx, c] : p) {
                    auto l = local.find(idx);
                    if (l == local.end())
                        throw Error(ErrorKind::internal, "product of radical elements leaves the radical");
                    v[l->second] = c;
                }
                e.insert(field_, std::move(v));
            }
            for (int np : e.non_pivots()) generators_.push_back(rad[np]);
        }
    std::sort(generators_.begin(), generators_.end());
    generators_from_.assign(n, {});
    for (int g : generators_) generators_from_[basis_[g].source].push_back(g);
}

int FiniteDimAlgebra::vertex_index(const std::string& name) const {
    for (int k = 0; k < num_vertices(); ++k)
        if (vertices_[k].name == name) return k;
    throw Error(ErrorKind::input, "unknown vertex '" + name + "'");
}

int FiniteDimAlgebra::find_label(const std::string& label) const {
    for (int b = 0; b < dim(); ++b)
        if (basis_[b].label == label) return b;
    return -1;
}

const SparseVec* FiniteDimAlgebra::product(int u, int v) const {
    const auto& row = table_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v, [](const auto& e, int k) { return e.first < k; });
    if (it != row.end() && it->first == v) return &it->second;
    return nullptr;
}

SparseVec FiniteDimAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b)
            if (const SparseVec* p = product(u, v)) axpy(field_, out, field_.mul(cu, cv), *p);
    return out;
}

Vec FiniteDimAlgebra::multiply(const Vec& a, const Vec& b) const {
    return to_dense(multiply(to_sparse(a), to_sparse(b)), dim());
}

int FiniteDimAlgebra::filtration_length() const {
    int m = 0;
    for (const auto& e : basis_) m = std::max(m, e.level);
    return m + 1;
}

FiniteDimAlgebra FiniteDimAlgebra::opposite() const {
    std::vector<BasisElement> basis = basis_;
    for (auto& e : basis) std::swap(e.source, e.target);
    FiniteDimAlgebra op(field_, name_ + "^op", vertices_, std::move(basis));
    for (int u = 0; u < dim(); ++u)
        for (const auto& [v, p] : table_[u]) op.table_[v].emplace_back(u, p);
    op.admissible_ = admissible_;
    op.homogeneous_ = homogeneous_;
    op.finalize();
    return op;
}

SparseVec identity_element(const FiniteDimAlgebra& a) {
    SparseVec one;
    for (int k = 0; k < a.num_vertices(); ++k) one.emplace_back(a.unit(k), Scalar(1));
    std::sort(one.begin(), one.end());
    return one;
}

std::string check_structure(const FiniteDimAlgebra& a) {
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        const SparseVec* l = a.product(a.unit(e.target), b);
        const SparseVec* r = a.product(b, a.unit(e.source));
        SparseVec self{{b, Scalar(1)}};
        if (!l || *l != self || !r || *r != self) return "idempotents do not act as identity on '" + e.label + "'";
        for (int k = 0; k < a.num_vertices(); ++k) {
            if (k != e.target && a.product(a.unit(k), b)) return "e_k b != 0 off the target of '" + e.label + "'";
            if (k != e.source && a.product(b, a.unit(k))) return "b e_k != 0 off the source of '" + e.label + "'";
        }
    }
    // (u v) w = u (v w) for every composable triple, including those with u v = 0
    for (int v = 0; v < a.dim(); ++v)
        for (int u : a.from(a.element(v).target))
            for (int w : a.into(a.element(v).source)) {
                const SparseVec* uv = a.product(u, v);
                const SparseVec* vw = a.product(v, w);
                SparseVec lhs = uv ? a.multiply(*uv, SparseVec{{w, Scalar(1)}}) : SparseVec{};
                SparseVec rhs = vw ? a.multiply(SparseVec{{u, Scalar(1)}}, *vw) : SparseVec{};
                if (lhs != rhs)
                    return "associativity fails on (" + a.element(u).label + ", " + a.element(v).label + ", " +
                           a.element(w).label + ")";
            }
    return {};
}

Subquotient corner(const FiniteDimAlgebra& a, const std::vector<int>& vertices) {
    std::vector<int> new_vertex(a.num_vertices(), -1);
    Subquotient out;
    std::vector<VertexInfo> vs;
    for (int k : vertices) {
        if (new_vertex[k] >= 0) continue;
        new_vertex[k] = static_cast<int>(vs.size());
        vs.push_back(a.vertices()[k]);
        out.vertex_of.push_back(k);
    }
    std::vector<int> new_index(a.dim(), -1);
    std::vector<BasisElement> basis;
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        if (new_vertex[e.source] < 0 || new_vertex[e.target] < 0) continue;
        new_index[b] = static_cast<int>(basis.size());
        BasisElement ne = e;
        ne.source = new_vertex[e.source];
        ne.target = new_vertex[e.target];
        basis.push_back(ne);
        out.kept.push_back(b);
    }
    FiniteDimAlgebra c(a.field(), a.name() + "-corner", std::move(vs), std::move(basis));
    for (int nu = 0; nu < c.dim(); ++nu)
        for (const auto& [v, p] : a.row(out.kept[nu])) {
            if (new_index[v] < 0) continue;
            SparseVec q;
            for (const auto& [w, s] : p) {
                if (new_index[w] < 0) throw Error(ErrorKind::internal, "corner is not closed under products");
                q.emplace_back(new_index[w], s);
            }
            c.set_product(nu, new_index[v], std::move(q));
        }
    c.set_admissible(a.admissible());
    c.set_homogeneous(a.homogeneous());
    c.finalize();
    out.algebra = std::move(c);
    return out;
}

Echelon ideal_generated(const FiniteDimAlgebra& a, const std::vector<SparseVec>& gens) {
    const Field& f = a.field();
    Echelon ideal(a.dim());
    std::vector<SparseVec> queue;
    for (const auto& g : gens) {
        if (g.empty()) continue;
        // left and right multiples by all basis elements, both sides at once
        for (int u = 0; u < a.dim(); ++u) {
            SparseVec ug = a.multiply(SparseVec{{u, Scalar(1)}}, g);
            if (ug.empty()) continue;
            for (int v = 0; v < a.dim(); ++v) {
                SparseVec ugv = a.multiply(ug, SparseVec{{v, Scalar(1)}});
                if (!ugv.empty()) ideal.insert(f, to_dense(ugv, a.dim()));
            }
        }
    }
    return ideal;
}

Subquotient quotient_algebra(const FiniteDimAlgebra& a, const Echelon& ideal) {
    const Field& f = a.field();
    Subquotient out;
    std::vector<int> new_vertex(a.num_vertices(), -1);
    std::vector<VertexInfo> vs;
    for (int k = 0; k < a.num_vertices(); ++k) {
        Vec e(a.dim());
        e[a.unit(k)] = 1;
        if (ideal.contains(f, e)) continue;
        new_vertex[k] = static_cast<int>(vs.size());
        vs.push_back(a.vertices()[k]);
        out.vertex_of.push_back(k);
    }
    std::vector<int> new_index(a.dim(), -1);
    std::vector<BasisElement> basis;
    for (int b : ideal.non_pivots()) {
        const auto& e = a.element(b);
        if (new_vertex[e.source] < 0 || new_vertex[e.target] < 0)
            throw Error(ErrorKind::internal, "quotient basis element attached to a dropped vertex");
        new_index[b] = static_cast<int>(basis.size());
        BasisElement ne = e;
        ne.source = new_vertex[e.source];
        ne.target = new_vertex[e.target];
        basis.push_back(ne);
        out.kept.push_back(b);
    }
    FiniteDimAlgebra q(f, a.name() + "-quotient", std::move(vs), std::move(basis));
    out.algebra = std::move(q);
    for (int nu = 0; nu < out.algebra.dim(); ++nu)
        for (int nv = 0; nv < out.algebra.dim(); ++nv) {
            const SparseVec* p = a.product(out.kept[nu], out.kept[nv]);
            if (!p) continue;
            out.algebra.set_product(nu, nv, project_to_quotient(a, ideal, out, *p));
        }
    out.algebra.set_admissible(a.admissible());
    out.algebra.set_homogeneous(a.homogeneous());
    out.algebra.finalize();
    return out;
}

SparseVec project_to_quotient(const FiniteDimAlgebra& a, const Echelon& ideal, const Subquotient& q,
                              const SparseVec& v) {
    Vec r = ideal.reduce(a.field(), to_dense(v, a.dim()));
    SparseVec out;
    for (int nu = 0; nu < static_cast<int>(q.kept.size()); ++nu)
        if (!Field::is_zero(r[q.kept[nu]])) out.emplace_back(nu, r[q.kept[nu]]);
    return out;
}

MapCheck verify_algebra_map(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to,
                            const std::vector<SparseVec>& images) {
    MapCheck out;
    const Field& f = to.field();
    if (static_cast<int>(images.size()) != from.dim()) {
        out.failure = "image list has wrong length";
        return out;
    }
    if (from.dim() != to.dim()) {
        out.failure = "dimensions differ: " + std::to_string(from.dim()) + " vs " + std::to_string(to.dim());
        return out;
    }
    Echelon span(to.dim());
    for (const auto& im : images) span.insert(f, to_dense(im, to.dim()));
    if (!span.full()) {
        out.failure = "map is not bijective (rank " + std::to_string(span.rank()) + ")";
        return out;
    }
    SparseVec unit_image;
    for (int k = 0; k < from.num_vertices(); ++k) axpy(f, unit_image, Scalar(1), images[from.unit(k)]);
    if (unit_image != identity_element(to)) {
        out.failure = "map is not unital";
        return out;
    }
    for (int u = 0; u < from.dim(); ++u)
        for (int v = 0; v < from.dim(); ++v) {
            SparseVec lhs;
            if (const SparseVec* p = from.product(u, v))
                for (const auto& [w, c] : *p) axpy(f, lhs, c, images[w]);
            SparseVec rhs = to.multiply(images[u], images[v]);
            if (lhs != rhs) {
                out.failure = "map is not multiplicative on (" + from.element(u).label + ", " +
                              from.element(v).label + ")";
                return out;
            }
        }
    out.ok = true;
    return out;
}

std::vector<SparseVec> label_matching(const FiniteDimAlgebra& from, const FiniteDimAlgebra& to) {
    std::vector<SparseVec> images;
    for (const auto& e : from.basis()) {
        int b = to.find_label(e.label);
        if (b < 0) throw Error(ErrorKind::internal, "label '" + e.label + "' missing from " + to.name());
        images.push_back({{b, Scalar(1)}});
    }
    return images;
}

nlohmann::json to_json(const FiniteDimAlgebra& a) {
    using nlohmann::json;
    const Field& f = a.field();
    json j;
    j["name"] = a.name();
    j["field"] = f.describe();
    j["dim"] = a.dim();
    json vs = json::array();
    for (const auto& v : a.vertices()) vs.push_back({{"name", v.name}, {"tilde", v.tilde}});
    j["vertices"] = vs;
    json basis = json::array();
    for (const auto& e : a.basis())
        basis.push_back({{"label", e.label},
                         {"source", a.vertices()[e.source].name},
                         {"target", a.vertices()[e.target].name},
                         {"level", e.level},
                         {"grade", e.grade}});
    j["basis"] = basis;
    json products = json::array();
    for (int u = 0; u < a.dim(); ++u)
        for (const auto& [v, p] : a.row(u)) {
            json terms = json::array();
            for (const auto& [w, c] : p) terms.push_back({a.element(w).label, f.format(c)});
            products.push_back({{"left", a.element(u).label}, {"right", a.element(v).label}, {"value", terms}});
        }
    j["products"] = products;
    return j;
}

// ---------------------------------------------------------------------------
// Basis of a bound quiver algebra by length-graded linear reduction.

namespace {

struct PathIndex {
    std::vector<int> source;                // per path
    std::vector<std::vector<int>> arrows;   // per path
    std::vector<int> length;
    std::map<std::vector<int>, int> lookup; // key: source followed by arrows

    int find(int src, const std::vector<int>& arr) const {
        std::vector<int> key;
        key.reserve(arr.size() + 1);
        key.push_back(src);
        key.insert(key.end(), arr.begin(), arr.end());
        auto it = lookup.find(key);
        return it == lookup.end() ? -1 : it->second;
    }
};

PathIndex enumerate_paths(const Presentation& p, int cap) {
    PathIndex idx;
    auto add = [&](int src, std::vector<int> arr) {
        std::vector<int> key{src};
        key.insert(key.end(), arr.begin(), arr.end());
        idx.lookup[key] = static_cast<int>(idx.source.size());
        idx.source.push_back(src);
        idx.length.push_back(static_cast<int>(arr.size()));
        idx.arrows.push_back(std::move(arr));
    };
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) add(v, {});
    size_t begin = 0;
    for (int d = 1; d <= cap; ++d) {
        size_t end = idx.source.size();
        // lexicographic order inside a length follows from extending in order
        std::vector<std::pair<std::vector<int>, int>> next;
        for (size_t q = begin; q < end; ++q) {
            int tgt = idx.arrows[q].empty() ? idx.source[q] : p.arrows[idx.arrows[q].back()].target;
            for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) {
                if (p.arrows[a].source != tgt) continue;
                auto arr = idx.arrows[q];
                arr.push_back(a);
                int src = idx.source[q];
                std::vector<int> key{src};
                key.insert(key.end(), arr.begin(), arr.end());
                next.emplace_back(std::move(key), src);
            }
        }
        std::sort(next.begin(), next.end());
        for (auto& [key, src] : next) add(src, std::vector<int>(key.begin() + 1, key.end()));
        begin = end;
        if (idx.source.size() > 200000)
            throw Error(ErrorKind::dimension_not_stabilized, "path count exceeds 200000 below the degree cap");
    }
    return idx;
}

std::string path_label(const Presentation& p, int src, const std::vector<int>& arr) {
    if (arr.empty()) return "e_" + p.vertices[src];
    std::string s;
    for (size_t k = 0; k < arr.size(); ++k) {
        if (k) s += ".";
        s += p.arrows[arr[k]].name;
    }
    return s;
}

}  // namespace

FiniteDimAlgebra compute_basis(const Presentation& p) {
    const Field& f = p.field;
    const int cap = p.degree_cap;

    bool admissible = true, homogeneous = true, constant_terms = false;
    for (const auto& r : p.relations) {
        for (const auto& t : r) {
            if (t.arrows.size() < 2) admissible = false;
            if (t.arrows.empty()) constant_terms = true;
            if (p.path_degree(t) != p.path_degree(r.front())) homogeneous = false;
        }
    }
    // Relations with idempotent terms cannot be truncated at the cap: reduce
    // towards shorter paths instead and keep longer paths as genuine elements.
    const bool truncate = !constant_terms;

    PathIndex idx = enumerate_paths(p, cap);
    const int np = static_cast<int>(idx.source.size());
    auto column = [&](int path) { return truncate ? path : np - 1 - path; };

    Echelon ideal(np);
    std::vector<std::vector<int>> ending_at(p.vertices.size()), starting_at(p.vertices.size());
    for (int q = 0; q < np; ++q) {
        int tgt = idx.arrows[q].empty() ? idx.source[q] : p.arrows[idx.arrows[q].back()].target;
        ending_at[tgt].push_back(q);
        starting_at[idx.source[q]].push_back(q);
    }
    for (const auto& r : p.relations) {
        int s = p.path_source(r.front()), t = p.path_target(r.front());
        size_t min_len = r.front().arrows.size(), max_len = 0;
        for (const auto& term : r) {
            min_len = std::min(min_len, term.arrows.size());
            max_len = std::max(max_len, term.arrows.size());
        }
        for (int q : ending_at[s])
            for (int pp : starting_at[t]) {
                size_t pad = idx.length[q] + idx.length[pp];
                if (truncate ? pad + min_len > static_cast<size_t>(cap) : pad + max_len > static_cast<size_t>(cap))
                    continue;
                Vec v(np);
                bool any = false;
                for (const auto& term : r) {
                    std::vector<int> arr = idx.arrows[q];
                    arr.insert(arr.end(), term.arrows.begin(), term.arrows.end());
                    arr.insert(arr.end(), idx.arrows[pp].begin(), idx.arrows[pp].end());
                    if (static_cast<int>(arr.size()) > cap) continue;
                    int src = idx.source[q];
                    int path = idx.find(src, arr);
                    if (path < 0) throw Error(ErrorKind::internal, "padded relation term not enumerated");
                    v[column(path)] = f.add(v[column(path)], term.coeff);
                    any = true;
                }
                if (any) ideal.insert(f, std::move(v));
            }
    }

    std::vector<char> pivot(np, 0);
    for (int c : ideal.pivots()) pivot[truncate ? c : np - 1 - c] = 1;

    int stable = -1;
    for (int d = 1; d <= cap && stable < 0; ++d) {
        bool all = true;
        for (int q = 0; q < np && all; ++q)
            if (idx.length[q] == d && !pivot[q]) all = false;
        if (all) stable = d;
    }
    if (stable < 0 || (!truncate && 2 * (stable - 1) > cap))
        throw Error(ErrorKind::dimension_not_stabilized,
                    "new basis elements still appear at degree cap " + std::to_string(cap));

    std::vector<VertexInfo> vertices;
    for (const auto& v : p.vertices) vertices.push_back({v, false});
    std::vector<BasisElement> basis;
    std::vector<int> basis_path, path_to_basis(np, -1);
    for (int q = 0; q < np; ++q) {
        if (pivot[q] || idx.length[q] >= stable) continue;
        BasisElement e;
        e.source = idx.source[q];
        e.target = idx.arrows[q].empty() ? idx.source[q] : p.arrows[idx.arrows[q].back()].target;
        e.level = idx.length[q];
        e.grade = 0;
        for (int a : idx.arrows[q]) e.grade += p.arrow_degree[a];
        e.radical = !idx.arrows[q].empty();
        e.label = path_label(p, idx.source[q], idx.arrows[q]);
        path_to_basis[q] = static_cast<int>(basis.size());
        basis_path.push_back(q);
        basis.push_back(std::move(e));
    }
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
        if (pivot[v])
            throw Error(ErrorKind::non_split_simple, "idempotent of vertex '" + p.vertices[v] +
                                                         "' is zero or reducible modulo the relations");

    FiniteDimAlgebra a(f, p.name, std::move(vertices), std::move(basis));
    for (int u = 0; u < a.dim(); ++u)
        for (int v = 0; v < a.dim(); ++v) {
            // u · v traverses v first
            if (a.element(v).target != a.element(u).source) continue;
            int pv = basis_path[v], pu = basis_path[u];
            std::vector<int> arr = idx.arrows[pv];
            arr.insert(arr.end(), idx.arrows[pu].begin(), idx.arrows[pu].end());
            if (static_cast<int>(arr.size()) > cap) continue;
            int path = idx.find(idx.source[pv], arr);
            Vec e(np);
            e[column(path)] = 1;
            e = ideal.reduce(f, std::move(e));
            SparseVec prod;
            for (int c = 0; c < np; ++c) {
                if (Field::is_zero(e[c])) continue;
                int q = truncate ? c : np - 1 - c;
                if (path_to_basis[q] < 0)
                    throw Error(ErrorKind::internal, "reduced product has a component outside the basis");
                prod.emplace_back(path_to_basis[q], e[c]);
            }
            std::sort(prod.begin(), prod.end());
            if (!truncate && a.element(u).radical && a.element(v).radical)
                for (const auto& [w, c] : prod)
                    if (!a.element(w).radical)
                        throw Error(ErrorKind::non_split_simple,
                                    "vertex '" + a.vertices()[a.element(w).source].name +
                                        "' has a simple quotient of dimension > 1 over " + f.describe());
            a.set_product(u, v, std::move(prod));
        }
    a.set_admissible(admissible);
    a.set_homogeneous(homogeneous);
    a.finalize();

    if (!truncate) {
        // With idempotent terms the positive-length part must still be a
        // nilpotent ideal at every vertex; otherwise some simple is not a
        // split one-dimensional module over the field.
        for (int k = 0; k < a.num_vertices(); ++k) {
            std::vector<int> pos;
            for (int b : a.hom(k, k))
                if (a.element(b).radical) pos.push_back(b);
            std::vector<SparseVec> power;
            for (int b : pos) power.push_back({{b, Scalar(1)}});
            for (int step = 0; step <= a.dim() && !power.empty(); ++step) {
                Echelon next(a.dim());
                for (const auto& x : power)
                    for (int b : pos) {
                        SparseVec y = a.multiply(x, SparseVec{{b, Scalar(1)}});
                        for (const auto& [w, c] : y)
                            if (!a.element(w).radical)
                                throw Error(ErrorKind::non_split_simple,
                                            "vertex '" + a.vertices()[k].name +
                                                "' has a simple quotient of dimension > 1 over " + f.describe());
                        if (!y.empty()) next.insert(f, to_dense(y, a.dim()));
                    }
                power.clear();
                for (const auto& r : next.rows()) power.push_back(to_sparse(r));
            }
            if (!power.empty())
                throw Error(ErrorKind::non_split_simple,
                            "positive-length part at vertex '" + a.vertices()[k].name + "' is not nilpotent");
        }
    }
    return a;
}

}  // namespace qhe
