#include "qhe/borel.hpp"

#include "qhe/errors.hpp"

#include <algorithm>

namespace qhe {

Mat SubalgebraEmbedding::inclusion(int x, int y) const {
    const auto& amb = ambient->alg->hom(x, y);
    const auto& own = sub->hom(x, y);
    Mat m(static_cast<int>(amb.size()), static_cast<int>(own.size()));
    for (int c = 0; c < static_cast<int>(own.size()); ++c) {
        int b = elements[own[c]];
        m(ambient->alg->hom_position(b), c) = 1;
    }
    return m;
}

SubalgebraEmbedding make_embedding(const WindowedCategory& c, std::string name, std::vector<int> elements,
                                   Exec exec) {
    const FiniteDimAlgebra& a = *c.alg;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    SubalgebraEmbedding s;
    s.name = std::move(name);
    s.ambient = &c;
    s.elements = std::move(elements);
    s.position.assign(a.dim(), -1);
    for (int i = 0; i < s.dim(); ++i) s.position[s.elements[i]] = i;
    for (int v = 0; v < a.num_vertices(); ++v)
        if (!s.contains(a.unit(v)))
            throw Error(ErrorKind::splitting_not_closed, s.name + " misses the idempotent of " + c.object_name(v));

    // closure: every component of a product of two members is a member
    const long n = s.dim();
    std::vector<std::string> bad(n);
    std::vector<std::size_t> counted(n, 0);
    auto row = [&](long i) {
        int u = s.elements[i];
        for (const auto& [v, p] : a.row(u)) {
            if (!s.contains(v)) continue;
            ++counted[i];
            for (const auto& [w, coef] : p)
                if (!s.contains(w) && bad[i].empty())
                    bad[i] = a.element(u).label + " * " + a.element(v).label + " leaves " + s.name + " at " +
                             a.element(w).label;
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long i = 0; i < n; ++i) row(i);
    } else {
        for (long i = 0; i < n; ++i) row(i);
    }
    for (long i = 0; i < n; ++i) {
        s.closure_checked += counted[i];
        if (!bad[i].empty()) throw Error(ErrorKind::splitting_not_closed, bad[i]);
    }

    std::vector<BasisElement> basis;
    for (int b : s.elements) basis.push_back(a.element(b));
    FiniteDimAlgebra sub(a.field(), s.name + "(" + a.name() + ")", a.vertices(), std::move(basis));
    for (long i = 0; i < n; ++i)
        for (const auto& [v, p] : a.row(s.elements[i])) {
            if (!s.contains(v)) continue;
            SparseVec q;
            for (const auto& [w, coef] : p) q.emplace_back(s.position[w], coef);
            std::sort(q.begin(), q.end());
            sub.set_product(static_cast<int>(i), s.position[v], std::move(q));
        }
    sub.finalize();
    s.sub = std::make_shared<const FiniteDimAlgebra>(std::move(sub));
    return s;
}

SubalgebraEmbedding build_tildeB(const WindowedCategory& c, Exec exec) {
    const FiniteDimAlgebra& a = *c.base;
    for (const auto& e : a.basis())
        if (e.radical && e.level == 0)
            throw Error(ErrorKind::splitting_not_closed,
                        "A/I_1 is not spanned by the vertex idempotents ('" + e.label + "' has level 0)");
    std::vector<int> els;
    for (int b = 0; b < c.alg->dim(); ++b) {
        const CatLabel& l = c.labels[b];
        int t = l.src - l.dst;
        if (l.part == Part::C && !a.element(l.base).radical && t >= 0 && t < c.N) els.push_back(b);
    }
    return make_embedding(c, "B~", std::move(els), exec);
}

SubalgebraEmbedding build_S(const WindowedCategory& c, Exec exec) {
    std::vector<int> els;
    for (int v = 0; v < c.alg->num_vertices(); ++v) els.push_back(c.alg->unit(v));
    return make_embedding(c, "S_Z", std::move(els), exec);
}

namespace {

void require_graded(const FiniteDimAlgebra& a) {
    if (!a.homogeneous()) throw Error(ErrorKind::not_graded, a.name() + " has no homogeneous basis");
    for (const auto& e : a.basis()) {
        if (!e.radical && e.grade != 0) throw Error(ErrorKind::not_graded, "idempotent of nonzero degree");
        if (e.radical && e.grade <= 0)
            throw Error(ErrorKind::not_graded, "'" + e.label + "' is a radical element of degree <= 0");
        if (e.level != e.grade)
            throw Error(ErrorKind::filtration_mismatch, "'" + e.label + "' has level " + std::to_string(e.level) +
                                                            " but degree " + std::to_string(e.grade));
    }
}

}  // namespace

SubalgebraEmbedding build_B_graded(const WindowedCategory& c, Exec exec) {
    const FiniteDimAlgebra& a = *c.base;
    require_graded(a);
    std::vector<int> els;
    for (int b = 0; b < c.alg->dim(); ++b) {
        const CatLabel& l = c.labels[b];
        int s = l.dst - l.src;
        if (l.part == Part::C && s >= 0 && a.element(l.base).grade == s) els.push_back(b);
    }
    return make_embedding(c, "B", std::move(els), exec);
}

SubalgebraEmbedding build_Bbar(const WindowedCategory& d, Exec exec) {
    if (d.kind != "D") throw Error(ErrorKind::precondition, "the bar subalgebra lives in the trivial extension");
    const FiniteDimAlgebra& a = *d.base;
    require_graded(a);
    std::vector<int> els;
    for (int b = 0; b < d.alg->dim(); ++b) {
        const CatLabel& l = d.labels[b];
        int g = a.element(l.base).grade;
        if (l.part == Part::C) {
            int s = l.dst - l.src;
            if (s >= 0 && g == s) els.push_back(b);
        } else {
            // dual of an element going down by s, so it goes up by s
            int s = l.src - l.dst;
            if (s >= 0 && g == d.N - 1 - s) els.push_back(b);
        }
    }
    return make_embedding(d, "Bbar", std::move(els), exec);
}

DirectedReport check_directed(const FiniteDimAlgebra& a, const std::vector<long>& key) {
    DirectedReport r;
    for (int b = 0; b < a.dim(); ++b) {
        const auto& e = a.element(b);
        if (!e.radical) continue;
        long ks = key[e.source], kt = key[e.target];
        if (kt > ks) {
            ++r.increasing;
        } else if (kt < ks) {
            ++r.decreasing;
        } else {
            if (r.flat++ == 0) r.failure = "'" + e.label + "' joins objects of equal rank";
        }
    }
    if (r.flat == 0 && r.decreasing == 0 && r.increasing == 0) {
        r.directed = true;
        r.direction = "both";  // semisimple: directed either way
    } else if (r.flat == 0 && r.decreasing == 0) {
        r.directed = true;
        r.direction = "increasing";
    } else if (r.flat == 0 && r.increasing == 0) {
        r.directed = true;
        r.direction = "decreasing";
    } else {
        r.direction = "none";
        if (r.failure.empty()) r.failure = "morphisms go both ways";
    }
    return r;
}

DirectedReport check_directed(const SubalgebraEmbedding& s, const QHContext& q) { return check_directed(*s.sub, q.key); }

ModuleRep induce_simple(const SubalgebraEmbedding& s, Side side, int obj) {
    const AlgebraPtr& amb = side_algebra(*s.ambient, side);
    ModuleRep p = projective(*s.ambient, side, obj);
    Subspace seed = zero_subspace(p);
    for (int b : s.elements) {
        const auto& e = amb->element(b);
        if (!e.radical || e.source != obj) continue;
        Vec v(p.dim(e.target), Scalar(0));
        v[amb->hom_position(b)] = 1;
        seed[e.target].insert(p.field(), v);
    }
    return quotient(p, generated_submodule(p, seed));
}

namespace {

InductionCheck compare(const ModuleRep& got, const ModuleRep& want, int obj, const std::string& what) {
    InductionCheck r;
    r.obj = obj;
    r.dims_induced = got.dims();
    r.dims_expected = want.dims();
    r.exact = got == want;
    r.ok = r.exact || find_isomorphism(got, want).has_value();
    if (!r.ok) r.failure = what + " at object " + std::to_string(obj) + " differs from the expected module";
    return r;
}

}  // namespace

InductionCheck compare_induction(const SubalgebraEmbedding& s, const QHContext& q, Side side, int obj) {
    return compare(induce_simple(s, side, obj), standard_module(q, side, obj), obj, "induced simple");
}

InductionCheck compare_coinduction(const SubalgebraEmbedding& s, const QHContext& q, Side side, int obj) {
    ModuleRep co = dual(induce_simple(s, other_side(side), obj), q.side(side));
    return compare(co, costandard_module(q, side, obj), obj, "coinduced simple");
}

const char* to_string(SubalgebraRole r) { return r == SubalgebraRole::borel ? "exact Borel" : "Delta-subalgebra"; }

BorelCertificate certify_subalgebra(const SubalgebraEmbedding& s, const QHContext& q, SubalgebraRole role,
                                    Exec exec) {
    BorelCertificate c;
    c.subalgebra = s.name;
    c.ambient = s.ambient->kind;
    c.role = to_string(role);
    c.order = q.order.describe();
    c.directed = check_directed(s, q);
    const char* want = role == SubalgebraRole::borel ? "increasing" : "decreasing";
    bool dir_ok = c.directed.directed && (c.directed.direction == want || c.directed.direction == "both");
    if (!dir_ok) c.failure = s.name + " is not directed " + std::string(want) + ": " + c.directed.failure;

    const long n = static_cast<long>(q.certified.size());
    c.inductions.resize(n);
    if (role == SubalgebraRole::delta) c.dual_checks.resize(n);
    std::vector<std::string> errors(n);
    auto one = [&](long i) {
        try {
            int o = q.certified[i];
            if (role == SubalgebraRole::borel) {
                c.inductions[i] = compare_induction(s, q, Side::left, o);
            } else {
                c.inductions[i] = compare_induction(s, q, Side::right, o);
                c.dual_checks[i] = compare_coinduction(s, q, Side::left, o);
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < n; ++i) one(i);
    } else {
        for (long i = 0; i < n; ++i) one(i);
    }
    for (const auto& e : errors)
        if (!e.empty()) throw Error(ErrorKind::internal, e);
    c.pass = dir_ok && n > 0;
    auto scan = [&](const std::vector<InductionCheck>& v) {
        for (const auto& x : v)
            if (!x.ok || !x.exact) {
                c.pass = false;
                if (c.failure.empty())
                    c.failure = x.ok ? "induced module at " + s.ambient->object_name(x.obj) +
                                           " is only isomorphic to the expected one"
                                     : x.failure;
            }
    };
    scan(c.inductions);
    scan(c.dual_checks);
    return c;
}

TriangularCertificate triangular_decomposition(const SubalgebraEmbedding& left, const SubalgebraEmbedding& right,
                                               const SubalgebraEmbedding& s, Exec exec) {
    const WindowedCategory& c = *left.ambient;
    if (right.ambient != &c || s.ambient != &c)
        throw Error(ErrorKind::precondition, "triangular decomposition needs subalgebras of one category");
    for (int b : s.elements)
        if (c.alg->element(b).radical)
            throw Error(ErrorKind::precondition, "the middle subalgebra must be spanned by idempotents");
    const FiniteDimAlgebra& a = *c.alg;
    const Field& f = a.field();
    TriangularCertificate r;
    r.left = left.name;
    r.right = right.name;
    r.ambient = c.kind;
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < a.num_vertices(); ++x)
        for (int z = 0; z < a.num_vertices(); ++z)
            if (c.interior(x) && c.interior(z) && std::abs(c.objects[x].level - c.objects[z].level) < c.N)
                pairs.emplace_back(x, z);
    const long n = static_cast<long>(pairs.size());
    r.slots.resize(n);
    auto one = [&](long i) {
        auto [x, z] = pairs[i];
        SlotDecomposition& sd = r.slots[i];
        sd.x = x;
        sd.z = z;
        const auto& target = a.hom(x, z);
        sd.ambient_dim = static_cast<int>(target.size());
        std::vector<Vec> cols;
        for (int y = 0; y < a.num_vertices(); ++y) {
            const auto& rs = right.sub->hom(x, y);
            const auto& ls = left.sub->hom(y, z);
            sd.tensor_dim += static_cast<int>(rs.size() * ls.size());
            for (int li : ls)
                for (int ri : rs) {
                    Vec col(target.size(), Scalar(0));
                    if (const SparseVec* p = a.product(left.elements[li], right.elements[ri]))
                        for (const auto& [w, coef] : *p) col[a.hom_position(w)] = coef;
                    cols.push_back(std::move(col));
                }
        }
        sd.rank = cols.empty() || target.empty()
                      ? 0
                      : rank(f, Mat::from_columns(cols, static_cast<int>(target.size())));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) one(i);
    } else {
        for (long i = 0; i < n; ++i) one(i);
    }
    r.ok = n > 0;
    for (const auto& sd : r.slots)
        if (!sd.ok()) {
            r.ok = false;
            if (r.failure.empty())
                r.failure = "slot " + c.object_name(sd.x) + " -> " + c.object_name(sd.z) + ": ambient " +
                            std::to_string(sd.ambient_dim) + ", tensor " + std::to_string(sd.tensor_dim) +
                            ", rank " + std::to_string(sd.rank);
        }
    if (n == 0) r.failure = "no interior slot";
    return r;
}

CheckReport check_line_components(const SubalgebraEmbedding& tilde_b) {
    CheckReport rep;
    const WindowedCategory& c = *tilde_b.ambient;
    const Window& w = c.window;
    const int N = c.N;

    Presentation p;
    p.name = "line";
    p.field = c.alg->field();
    for (int l = w.lo; l <= w.hi; ++l) p.vertices.push_back("v" + std::to_string(l));
    // arrow j goes from level j to level j-1
    for (int l = w.lo + 1; l <= w.hi; ++l)
        p.arrows.push_back({"b" + std::to_string(l), l - w.lo, l - 1 - w.lo});
    const int arrows = static_cast<int>(p.arrows.size());
    for (int start = arrows - 1; start - N + 1 >= 0; --start) {
        PathTerm t;
        t.coeff = 1;
        for (int k = 0; k < N; ++k) t.arrows.push_back(start - k);
        p.relations.push_back({t});
    }
    p.degree_cap = std::max(p.degree_cap, N + 1);
    p.arrow_degree.assign(arrows, 1);
    FiniteDimAlgebra line = compute_basis(p);
    auto arrow_elem = [&](int from_level) {
        const auto& h = line.hom(from_level - w.lo, from_level - 1 - w.lo);
        return h.empty() ? -1 : h.front();
    };

    for (int k = 0; k < c.num_base_vertices(); ++k) {
        std::vector<int> objs;
        for (int l = w.lo; l <= w.hi; ++l) objs.push_back(c.object(k, l));
        Subquotient cor = corner(*tilde_b.sub, objs);
        std::vector<SparseVec> images;
        for (int b = 0; b < cor.algebra.dim(); ++b) {
            int amb = tilde_b.elements[cor.kept[b]];
            const CatLabel& l = c.labels[amb];
            SparseVec cur{{line.unit(l.src - w.lo), Scalar(1)}};
            for (int j = l.src; j > l.dst && !cur.empty(); --j) {
                int e = arrow_elem(j);
                cur = e < 0 ? SparseVec{} : line.multiply(SparseVec{{e, Scalar(1)}}, cur);
            }
            images.push_back(cur);
        }
        ++rep.checked;
        MapCheck m = verify_algebra_map(cor.algebra, line, images);
        if (!m.ok) rep.fail("component of " + c.base->vertices()[k].name + ": " + m.failure);
    }
    return rep;
}

namespace {

void add(BorelSuite& s, BorelCertificate c) {
    if (!c.pass && s.failure.empty()) s.failure = c.subalgebra + " in " + c.ambient + ": " + c.failure;
    s.certificates.push_back(std::move(c));
}

void add(BorelSuite& s, TriangularCertificate t) {
    if (!t.ok && s.failure.empty()) s.failure = "triangular " + t.ambient + ": " + t.failure;
    s.triangular.push_back(std::move(t));
}

BorelSuite run_suite(const WindowedCategory& c, const WindowedCategory* d, OrderBase ord, Exec exec) {
    BorelSuite s;
    const bool first = ord == OrderBase::first;
    const SubalgebraRole tb_role = first ? SubalgebraRole::delta : SubalgebraRole::borel;
    const SubalgebraRole b_role = first ? SubalgebraRole::borel : SubalgebraRole::delta;

    QHContext qc = make_context(c, {ord, false});
    SubalgebraEmbedding tb = build_tildeB(c, exec);
    SubalgebraEmbedding b = build_B_graded(c, exec);
    SubalgebraEmbedding sz = build_S(c, exec);
    add(s, certify_subalgebra(tb, qc, tb_role, exec));
    add(s, certify_subalgebra(b, qc, b_role, exec));
    add(s, triangular_decomposition(tb, b, sz, exec));
    if (d) {
        QHContext qd = make_context(*d, {ord, true});
        SubalgebraEmbedding tbd = build_tildeB(*d, exec);
        SubalgebraEmbedding bbar = build_Bbar(*d, exec);
        SubalgebraEmbedding szd = build_S(*d, exec);
        add(s, certify_subalgebra(tbd, qd, tb_role, exec));
        add(s, certify_subalgebra(bbar, qd, b_role, exec));
        add(s, triangular_decomposition(tbd, bbar, szd, exec));
    }
    s.pass = s.failure.empty();
    return s;
}

}  // namespace

BorelSuite first_order_suite(const WindowedCategory& c, const WindowedCategory* d, Exec exec) {
    return run_suite(c, d, OrderBase::first, exec);
}

BorelSuite second_order_suite(const WindowedCategory& c, const WindowedCategory* d, Exec exec) {
    return run_suite(c, d, OrderBase::second, exec);
}

nlohmann::json to_json(const SubalgebraEmbedding& s) {
    const WindowedCategory& c = *s.ambient;
    nlohmann::json homs = nlohmann::json::array();
    const FiniteDimAlgebra& a = *s.sub;
    for (int x = 0; x < a.num_vertices(); ++x)
        for (int y = 0; y < a.num_vertices(); ++y) {
            const auto& h = a.hom(x, y);
            if (h.empty()) continue;
            nlohmann::json basis = nlohmann::json::array();
            for (int b : h) basis.push_back(a.element(b).label);
            homs.push_back({{"from", c.object_name(x)}, {"to", c.object_name(y)}, {"dim", h.size()}, {"basis", basis}});
        }
    return {{"name", s.name}, {"ambient", c.kind}, {"dim", s.dim()}, {"closure_checked", s.closure_checked},
            {"homs", homs}};
}

namespace {

nlohmann::json dims_json(const WindowedCategory& w, const std::vector<int>& d) {
    nlohmann::json j = nlohmann::json::object();
    for (int v = 0; v < static_cast<int>(d.size()); ++v)
        if (d[v]) j[w.object_name(v)] = d[v];
    return j;
}

nlohmann::json checks_json(const WindowedCategory& w, const std::vector<InductionCheck>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) {
        nlohmann::json j = {{"index", w.object_name(x.obj)},
                            {"ok", x.ok},
                            {"exact", x.exact},
                            {"dims", dims_json(w, x.dims_induced)}};
        if (!x.ok) {
            j["expected_dims"] = dims_json(w, x.dims_expected);
            j["failure"] = x.failure;
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const BorelCertificate& c, const WindowedCategory& w) {
    nlohmann::json j = {{"subalgebra", c.subalgebra},
                        {"ambient", c.ambient},
                        {"claim", c.role},
                        {"order", c.order},
                        {"verdict", c.pass ? "PASS" : "FAIL"},
                        {"directed", {{"ok", c.directed.directed}, {"direction", c.directed.direction}}},
                        {"inductions", checks_json(w, c.inductions)}};
    if (!c.dual_checks.empty()) j["dual_checks"] = checks_json(w, c.dual_checks);
    if (!c.failure.empty()) j["failure"] = c.failure;
    return j;
}

nlohmann::json to_json(const TriangularCertificate& c, const WindowedCategory& w) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : c.slots)
        slots.push_back({{"from", w.object_name(s.x)},
                         {"to", w.object_name(s.z)},
                         {"ambient_dim", s.ambient_dim},
                         {"tensor_dim", s.tensor_dim},
                         {"rank", s.rank}});
    nlohmann::json j = {{"claim", c.ambient + " = " + c.left + " (x)_S " + c.right},
                        {"verdict", c.ok ? "PASS" : "FAIL"},
                        {"slots", slots}};
    if (!c.failure.empty()) j["failure"] = c.failure;
    return j;
}

nlohmann::json to_json(const BorelSuite& s, const WindowedCategory& c, const WindowedCategory* d) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& x : s.certificates) certs.push_back(to_json(x, x.ambient == "D" && d ? *d : c));
    nlohmann::json tri = nlohmann::json::array();
    for (const auto& t : s.triangular) tri.push_back(to_json(t, t.ambient == "D" && d ? *d : c));
    nlohmann::json j = {{"verdict", s.pass ? "PASS" : "FAIL"}, {"certificates", certs}, {"triangular", tri}};
    if (!s.failure.empty()) j["failure"] = s.failure;
    return j;
}

}  // namespace qhe
