#include "qhe/module.hpp"

#include "qhe/errors.hpp"

#include <algorithm>
#include <random>

namespace qhe {

namespace {

Vec unit_vec(int n, int i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

Mat sum_into(const Field& f, Mat acc, const Scalar& c, const Mat& m) {
    if (m.empty() || Field::is_zero(c)) return acc;
    if (acc.empty()) acc = Mat(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int k = 0; k < m.cols(); ++k)
            if (!Field::is_zero(m(r, k))) acc(r, k) = f.add(acc(r, k), f.mul(c, m(r, k)));
    return acc;
}

}  // namespace

ModuleRep::ModuleRep(AlgebraPtr algebra, std::vector<int> dims)
    : alg_(std::move(algebra)), dims_(std::move(dims)), act_(alg_->dim()) {
    if (static_cast<int>(dims_.size()) != alg_->num_vertices())
        throw Error(ErrorKind::dimension_mismatch, "module dimension vector has the wrong length");
    for (int k = 0; k < alg_->num_vertices(); ++k)
        if (dims_[k] > 0) act_[alg_->unit(k)] = Mat::identity(dims_[k]);
}

int ModuleRep::total_dim() const {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
}

std::vector<int> ModuleRep::support() const {
    std::vector<int> s;
    for (int k = 0; k < static_cast<int>(dims_.size()); ++k)
        if (dims_[k] > 0) s.push_back(k);
    return s;
}

void ModuleRep::set_action(int b, Mat m) {
    const auto& e = alg_->element(b);
    if (m.is_zero()) {
        act_[b] = Mat();
        return;
    }
    if (m.rows() != dims_[e.target] || m.cols() != dims_[e.source])
        throw Error(ErrorKind::dimension_mismatch, "action matrix of '" + e.label + "' has the wrong shape");
    act_[b] = std::move(m);
}

Vec ModuleRep::act(int b, const Vec& v) const {
    const auto& e = alg_->element(b);
    if (act_[b].empty()) return Vec(dims_[e.target]);
    return apply(field(), act_[b], v);
}

std::string verify_module(const ModuleRep& m) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    for (int k = 0; k < a.num_vertices(); ++k) {
        int d = m.dim(k);
        if (d > 0 && !(m.action(a.unit(k)) == Mat::identity(d))) return "idempotent does not act as identity";
    }
    for (int u = 0; u < a.dim(); ++u) {
        if (m.action(u).empty()) continue;
        const auto& eu = a.element(u);
        for (int v : a.into(eu.source)) {
            const SparseVec* uv = a.product(u, v);
            Mat expected;
            if (uv)
                for (const auto& [w, c] : *uv) expected = sum_into(f, expected, c, m.action(w));
            Mat got;
            if (!m.action(v).empty()) got = multiply(f, m.action(u), m.action(v));
            bool ez = expected.empty() || expected.is_zero();
            bool gz = got.empty() || got.is_zero();
            if (ez != gz || (!ez && !(expected == got)))
                return "action does not respect the product " + eu.label + " · " + a.element(v).label;
        }
    }
    return {};
}

ModuleRep projective(const AlgebraPtr& a, int x) {
    std::vector<int> dims(a->num_vertices());
    for (int y = 0; y < a->num_vertices(); ++y) dims[y] = static_cast<int>(a->hom(x, y).size());
    ModuleRep m(a, dims);
    for (int b = 0; b < a->dim(); ++b) {
        const auto& e = a->element(b);
        if (!e.radical) continue;
        int dy = dims[e.source], dz = dims[e.target];
        if (dy == 0 || dz == 0) continue;
        Mat act(dz, dy);
        bool any = false;
        for (int c : a->hom(x, e.source))
            if (const SparseVec* p = a->product(b, c))
                for (const auto& [w, s] : *p) {
                    act(a->hom_position(w), a->hom_position(c)) = s;
                    any = true;
                }
        if (any) m.set_action(b, std::move(act));
    }
    return m;
}

ModuleRep simple(const AlgebraPtr& a, int x) {
    std::vector<int> dims(a->num_vertices());
    dims[x] = 1;
    return ModuleRep(a, dims);
}

Subspace zero_subspace(const ModuleRep& m) {
    Subspace s;
    for (int d : m.dims()) s.emplace_back(d);
    return s;
}

Subspace full_subspace(const ModuleRep& m) {
    Subspace s = zero_subspace(m);
    for (int k = 0; k < static_cast<int>(s.size()); ++k)
        for (int i = 0; i < m.dim(k); ++i) s[k].insert(m.field(), unit_vec(m.dim(k), i));
    return s;
}

int subspace_dim(const Subspace& s) {
    int d = 0;
    for (const auto& e : s) d += e.rank();
    return d;
}

bool contains(const Field& f, const Subspace& big, const Subspace& small) {
    for (size_t k = 0; k < big.size(); ++k)
        for (const auto& r : small[k].rows())
            if (!big[k].contains(f, r)) return false;
    return true;
}

Subspace generated_submodule(const ModuleRep& m, Subspace seed) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    Subspace out = zero_subspace(m);
    std::vector<std::pair<int, Vec>> queue;
    for (int k = 0; k < a.num_vertices(); ++k)
        for (const auto& r : seed[k].rows()) queue.emplace_back(k, r);
    while (!queue.empty()) {
        auto [k, v] = std::move(queue.back());
        queue.pop_back();
        if (!out[k].insert(f, v)) continue;
        for (int g : a.generators_from(k)) {
            if (m.action(g).empty()) continue;
            Vec w = m.act(g, v);
            if (!is_zero(w)) queue.emplace_back(a.element(g).target, std::move(w));
        }
    }
    return out;
}

ModuleRep submodule(const ModuleRep& m, const Subspace& s) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    std::vector<int> dims;
    for (const auto& e : s) dims.push_back(e.rank());
    ModuleRep out(m.algebra_ptr(), dims);
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        if (!e.radical || m.action(b).empty() || dims[e.source] == 0 || dims[e.target] == 0) continue;
        Mat act(dims[e.target], dims[e.source]);
        for (int c = 0; c < dims[e.source]; ++c) {
            auto coords = s[e.target].coordinates(f, m.act(b, s[e.source].rows()[c]));
            if (!coords) throw Error(ErrorKind::internal, "subspace is not a submodule");
            for (int r = 0; r < dims[e.target]; ++r) act(r, c) = (*coords)[r];
        }
        out.set_action(b, std::move(act));
    }
    return out;
}

Vec project(const ModuleRep& m, const Subspace& u, int vertex, const Vec& v) {
    Vec r = u[vertex].reduce(m.field(), v);
    Vec out;
    for (int np : u[vertex].non_pivots()) out.push_back(r[np]);
    return out;
}

ModuleRep quotient(const ModuleRep& m, const Subspace& u) {
    const auto& a = m.algebra();
    std::vector<int> dims;
    std::vector<std::vector<int>> free(a.num_vertices());
    for (int k = 0; k < a.num_vertices(); ++k) {
        free[k] = u[k].non_pivots();
        dims.push_back(static_cast<int>(free[k].size()));
    }
    ModuleRep out(m.algebra_ptr(), dims);
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        if (!e.radical || m.action(b).empty() || dims[e.source] == 0 || dims[e.target] == 0) continue;
        Mat act(dims[e.target], dims[e.source]);
        for (int c = 0; c < dims[e.source]; ++c) {
            Vec img = project(m, u, e.target, m.act(b, unit_vec(m.dim(e.source), free[e.source][c])));
            for (int r = 0; r < dims[e.target]; ++r) act(r, c) = img[r];
        }
        out.set_action(b, std::move(act));
    }
    return out;
}

ModuleRep dual(const ModuleRep& m, const AlgebraPtr& opposite) {
    if (opposite->dim() != m.algebra().dim() || opposite->num_vertices() != m.algebra().num_vertices())
        throw Error(ErrorKind::dimension_mismatch, "dual needs the opposite of the module's algebra");
    ModuleRep out(opposite, m.dims());
    for (int b = 0; b < m.algebra().dim(); ++b)
        if (m.algebra().element(b).radical && !m.action(b).empty()) out.set_action(b, m.action(b).transposed());
    return out;
}

Subspace radical_of(const ModuleRep& m, const Subspace& s, bool brute) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    Subspace out = zero_subspace(m);
    for (int k = 0; k < a.num_vertices(); ++k) {
        if (s[k].rank() == 0) continue;
        auto consider = [&](int g) {
            if (m.action(g).empty()) return;
            for (const auto& r : s[k].rows()) {
                Vec w = m.act(g, r);
                if (!is_zero(w)) out[a.element(g).target].insert(f, std::move(w));
            }
        };
        if (brute) {
            for (int b : a.from(k))
                if (a.element(b).radical) consider(b);
        } else {
            for (int g : a.generators_from(k)) consider(g);
        }
    }
    // with generators only, J s is the submodule generated by the arrow images
    return brute ? out : generated_submodule(m, out);
}

Subspace radical(const ModuleRep& m, bool brute) { return radical_of(m, full_subspace(m), brute); }

Subspace socle(const ModuleRep& m) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    Subspace out = zero_subspace(m);
    for (int k = 0; k < a.num_vertices(); ++k) {
        int d = m.dim(k);
        if (d == 0) continue;
        std::vector<Vec> rows;
        for (int g : a.generators_from(k)) {
            const Mat& act = m.action(g);
            for (int r = 0; r < act.rows(); ++r) rows.push_back(act.row(r));
        }
        if (rows.empty()) {
            for (int i = 0; i < d; ++i) out[k].insert(f, unit_vec(d, i));
        } else {
            for (auto& v : kernel_basis(f, Mat::from_rows(rows, d))) out[k].insert(f, std::move(v));
        }
    }
    return out;
}

std::vector<std::vector<int>> radical_layers(const ModuleRep& m, bool brute) {
    std::vector<std::vector<int>> layers;
    Subspace cur = full_subspace(m);
    while (subspace_dim(cur) > 0) {
        Subspace next = radical_of(m, cur, brute);
        if (subspace_dim(next) == subspace_dim(cur)) throw Error(ErrorKind::internal, "module radical is not nilpotent");
        std::vector<int> layer;
        for (size_t k = 0; k < cur.size(); ++k) layer.push_back(cur[k].rank() - next[k].rank());
        layers.push_back(std::move(layer));
        cur = std::move(next);
    }
    return layers;
}

std::vector<Hom> hom_basis(const ModuleRep& m, const ModuleRep& n) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    const int nv = a.num_vertices();
    std::vector<int> offset(nv + 1, 0);
    for (int k = 0; k < nv; ++k) offset[k + 1] = offset[k] + m.dim(k) * n.dim(k);
    const int unknowns = offset[nv];
    std::vector<Hom> out;
    if (unknowns == 0) return out;
    // variable (k, r, c) is entry (r, c) of φ_k : M_k → N_k
    auto var = [&](int k, int r, int c) { return offset[k] + r * m.dim(k) + c; };

    std::vector<Vec> rows;
    for (int x = 0; x < nv; ++x) {
        for (int g : a.generators_from(x)) {
            int y = a.element(g).target;
            const Mat& A = m.action(g);  // M_x → M_y
            const Mat& B = n.action(g);  // N_x → N_y
            if (A.empty() && B.empty()) continue;
            // φ_y A - B φ_x = 0, an N_y × M_x system
            for (int r = 0; r < n.dim(y); ++r)
                for (int c = 0; c < m.dim(x); ++c) {
                    Vec row(unknowns);
                    bool any = false;
                    if (!A.empty())
                        for (int k = 0; k < m.dim(y); ++k)
                            if (!Field::is_zero(A(k, c))) {
                                row[var(y, r, k)] = f.add(row[var(y, r, k)], A(k, c));
                                any = true;
                            }
                    if (!B.empty())
                        for (int k = 0; k < n.dim(x); ++k)
                            if (!Field::is_zero(B(r, k))) {
                                row[var(x, k, c)] = f.sub(row[var(x, k, c)], B(r, k));
                                any = true;
                            }
                    if (any) rows.push_back(std::move(row));
                }
        }
    }
    std::vector<Vec> sols;
    if (rows.empty()) {
        for (int i = 0; i < unknowns; ++i) sols.push_back(unit_vec(unknowns, i));
    } else {
        sols = kernel_basis(f, Mat::from_rows(rows, unknowns));
    }
    for (const auto& s : sols) {
        Hom h(nv);
        for (int k = 0; k < nv; ++k) {
            h[k] = Mat(n.dim(k), m.dim(k));
            for (int r = 0; r < n.dim(k); ++r)
                for (int c = 0; c < m.dim(k); ++c) h[k](r, c) = s[var(k, r, c)];
        }
        out.push_back(std::move(h));
    }
    return out;
}

bool is_homomorphism(const ModuleRep& m, const ModuleRep& n, const Hom& h) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        int x = e.source, y = e.target;
        if (m.dim(x) == 0 || n.dim(y) == 0) continue;
        Mat lhs = m.action(b).empty() ? Mat(n.dim(y), m.dim(x)) : multiply(f, h[y], m.action(b));
        Mat rhs = n.action(b).empty() ? Mat(n.dim(y), m.dim(x)) : multiply(f, n.action(b), h[x]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool is_bijective(const ModuleRep& m, const ModuleRep& n, const Hom& h) {
    if (m.dims() != n.dims()) return false;
    for (size_t k = 0; k < h.size(); ++k)
        if (m.dim(k) > 0 && rank(m.field(), h[k]) != m.dim(k)) return false;
    return true;
}

Subspace kernel_of(const ModuleRep& m, const ModuleRep& n, const Hom& h) {
    Subspace out = zero_subspace(m);
    for (int k = 0; k < static_cast<int>(h.size()); ++k) {
        if (m.dim(k) == 0) continue;
        if (n.dim(k) == 0) {
            for (int i = 0; i < m.dim(k); ++i) out[k].insert(m.field(), unit_vec(m.dim(k), i));
            continue;
        }
        for (auto& v : kernel_basis(m.field(), h[k])) out[k].insert(m.field(), std::move(v));
    }
    return out;
}

Subspace image_of(const ModuleRep& m, const ModuleRep& n, const Hom& h) {
    Subspace out = zero_subspace(n);
    for (int k = 0; k < static_cast<int>(h.size()); ++k)
        for (int c = 0; c < m.dim(k); ++c) out[k].insert(n.field(), h[k].column(c));
    return out;
}

Hom combine(const Field& f, const std::vector<Hom>& basis, const std::vector<Scalar>& coeffs) {
    Hom out = basis.front();
    for (auto& mk : out)
        for (int r = 0; r < mk.rows(); ++r)
            for (int c = 0; c < mk.cols(); ++c) mk(r, c) = 0;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (Field::is_zero(coeffs[i])) continue;
        for (size_t k = 0; k < out.size(); ++k)
            for (int r = 0; r < out[k].rows(); ++r)
                for (int c = 0; c < out[k].cols(); ++c)
                    if (!Field::is_zero(basis[i][k](r, c)))
                        out[k](r, c) = f.add(out[k](r, c), f.mul(coeffs[i], basis[i][k](r, c)));
    }
    return out;
}

namespace {

template <class Pred>
std::optional<Hom> search_hom(const ModuleRep& m, const ModuleRep& n, unsigned long seed, Pred good) {
    auto basis = hom_basis(m, n);
    if (basis.empty()) return std::nullopt;
    for (const auto& h : basis)
        if (good(h)) return h;
    std::mt19937_64 rng(seed);
    const Field& f = m.field();
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Scalar> c(basis.size());
        for (auto& s : c) s = f.from_int(static_cast<long>(rng() % 61) - 30);
        Hom h = combine(f, basis, c);
        if (good(h)) return h;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Hom> find_isomorphism(const ModuleRep& m, const ModuleRep& n, unsigned long seed) {
    if (m.dims() != n.dims()) return std::nullopt;
    return search_hom(m, n, seed, [&](const Hom& h) { return is_bijective(m, n, h); });
}

std::optional<Hom> find_injection(const ModuleRep& m, const ModuleRep& n, unsigned long seed) {
    for (size_t k = 0; k < m.dims().size(); ++k)
        if (m.dim(k) > n.dim(k)) return std::nullopt;
    return search_hom(m, n, seed, [&](const Hom& h) {
        for (size_t k = 0; k < h.size(); ++k)
            if (m.dim(k) > 0 && rank(m.field(), h[k]) != m.dim(k)) return false;
        return true;
    });
}

std::optional<Hom> find_surjection(const ModuleRep& m, const ModuleRep& n, unsigned long seed) {
    for (size_t k = 0; k < m.dims().size(); ++k)
        if (n.dim(k) > m.dim(k)) return std::nullopt;
    return search_hom(m, n, seed, [&](const Hom& h) {
        for (size_t k = 0; k < h.size(); ++k)
            if (n.dim(k) > 0 && rank(m.field(), h[k]) != n.dim(k)) return false;
        return true;
    });
}

Subspace largest_submodule_within(const ModuleRep& m, const Subspace& v) {
    const auto& a = m.algebra();
    const Field& f = m.field();
    Subspace cur = v;
    // U <- {u in U : g u in U for every generator g} until stable
    for (bool changed = true; changed;) {
        changed = false;
        Subspace next = zero_subspace(m);
        for (int x = 0; x < a.num_vertices(); ++x) {
            if (cur[x].rank() == 0) continue;
            const auto& rows = cur[x].rows();
            // conditions on coefficients c with Σ c_r rows[r]
            std::vector<Vec> eqs;
            for (int g : a.generators_from(x)) {
                if (m.action(g).empty()) continue;
                int y = a.element(g).target;
                // components of g·row outside cur[y]: reduce modulo cur[y]
                std::vector<Vec> images;
                for (const auto& r : rows) images.push_back(cur[y].reduce(f, m.act(g, r)));
                for (int k = 0; k < m.dim(y); ++k) {
                    Vec eq(rows.size());
                    bool any = false;
                    for (size_t r = 0; r < rows.size(); ++r)
                        if (!Field::is_zero(images[r][k])) {
                            eq[r] = images[r][k];
                            any = true;
                        }
                    if (any) eqs.push_back(std::move(eq));
                }
            }
            if (eqs.empty()) {
                next[x] = cur[x];
                continue;
            }
            auto sols = kernel_basis(f, Mat::from_rows(eqs, static_cast<int>(rows.size())));
            for (const auto& c : sols) {
                Vec v2(m.dim(x));
                for (size_t r = 0; r < rows.size(); ++r)
                    if (!Field::is_zero(c[r]))
                        for (int k = 0; k < m.dim(x); ++k) v2[k] = f.add(v2[k], f.mul(c[r], rows[r][k]));
                next[x].insert(f, std::move(v2));
            }
            if (next[x].rank() != cur[x].rank()) changed = true;
        }
        cur = std::move(next);
    }
    return cur;
}

Subspace to_ambient(const Field& f, const Subspace& u, const Subspace& local) {
    Subspace out;
    for (size_t x = 0; x < u.size(); ++x) {
        out.emplace_back(u[x].ambient());
        const auto& rows = u[x].rows();
        for (const auto& c : local[x].rows()) {
            Vec v(u[x].ambient());
            for (size_t r = 0; r < rows.size(); ++r)
                if (!Field::is_zero(c[r]))
                    for (int k = 0; k < u[x].ambient(); ++k) v[k] = f.add(v[k], f.mul(c[r], rows[r][k]));
            out[x].insert(f, std::move(v));
        }
    }
    return out;
}

std::vector<int> top_dims(const ModuleRep& m) {
    Subspace r = radical(m);
    std::vector<int> out;
    for (int k = 0; k < m.algebra().num_vertices(); ++k) out.push_back(m.dim(k) - r[k].rank());
    return out;
}

ModuleRep restrict_along(const ModuleRep& m, const AlgebraPtr& to, const std::vector<SparseVec>& pullback,
                         const std::vector<int>& vertex_map) {
    std::vector<int> dims;
    for (int y = 0; y < to->num_vertices(); ++y) dims.push_back(m.dim(vertex_map[y]));
    ModuleRep out(to, dims);
    const Field& f = m.field();
    for (int b = 0; b < to->dim(); ++b) {
        if (!to->element(b).radical) continue;
        Mat acc;
        for (const auto& [w, c] : pullback[b]) acc = sum_into(f, acc, c, m.action(w));
        if (!acc.empty()) out.set_action(b, std::move(acc));
    }
    return out;
}

nlohmann::json to_json(const ModuleRep& m) {
    using nlohmann::json;
    const auto& a = m.algebra();
    json j;
    json dims = json::object();
    for (int k = 0; k < a.num_vertices(); ++k)
        if (m.dim(k) > 0) dims[a.vertices()[k].name] = m.dim(k);
    j["dims"] = dims;
    j["total"] = m.total_dim();
    return j;
}

}  // namespace qhe
