#include "qhe/quiver.hpp"

#include "qhe/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qhe {

std::vector<int> deep_objects(const WindowedCategory& c, int inset) {
    std::vector<int> out;
    for (int o = 0; o < static_cast<int>(c.objects.size()); ++o) {
        int l = c.objects[o].level;
        if (l >= c.window.lo + c.window.margin + inset && l <= c.window.hi - c.window.margin - inset) out.push_back(o);
    }
    return out;
}

namespace {

using Slot = std::pair<int, int>;

// Paths of one length grouped by slot.
struct PathLayer {
    std::map<Slot, std::vector<QuiverPath>> paths;
    std::map<Slot, std::map<QuiverPath, int>> index;

    void add(const Slot& s, QuiverPath p) {
        auto& v = paths[s];
        index[s][p] = static_cast<int>(v.size());
        v.push_back(std::move(p));
    }
};

PathLayer extend(const PathLayer& prev, const std::vector<QuiverArrow>& arrows,
                 const std::vector<std::vector<int>>& out_of) {
    PathLayer next;
    for (const auto& [slot, ps] : prev.paths)
        for (const auto& p : ps)
            for (int a : out_of[slot.second]) {
                QuiverPath q = p;
                q.push_back(a);
                next.add({slot.first, arrows[a].target}, std::move(q));
            }
    return next;
}

PathLayer first_layer(const std::vector<QuiverArrow>& arrows) {
    PathLayer l;
    for (int a = 0; a < static_cast<int>(arrows.size()); ++a) l.add({arrows[a].source, arrows[a].target}, {a});
    return l;
}

// Degree-d part of the ideal generated by the degree-(d-1) part: arrows
// composed on either side.
std::map<Slot, Echelon> lower_part(const Field& f, const PathLayer& layer, const PathLayer& prev,
                                   const std::map<Slot, Echelon>& prev_ideal, const std::vector<QuiverArrow>& arrows,
                                   const std::vector<std::vector<int>>& out_of,
                                   const std::vector<std::vector<int>>& into) {
    std::map<Slot, Echelon> out;
    for (const auto& [slot, ps] : layer.paths) out.emplace(slot, Echelon(static_cast<int>(ps.size())));
    for (const auto& [slot, ech] : prev_ideal) {
        const auto& ps = prev.paths.at(slot);
        for (const Vec& r : ech.rows()) {
            // α after r
            for (int a : out_of[slot.second]) {
                Slot s{slot.first, arrows[a].target};
                const auto& idx = layer.index.at(s);
                Vec v(layer.paths.at(s).size(), Scalar(0));
                for (size_t i = 0; i < ps.size(); ++i) {
                    if (r[i] == 0) continue;
                    QuiverPath q = ps[i];
                    q.push_back(a);
                    v[idx.at(q)] = r[i];
                }
                out.at(s).insert(f, v);
            }
            // r after α
            for (int a : into[slot.first]) {
                Slot s{arrows[a].source, slot.second};
                const auto& idx = layer.index.at(s);
                Vec v(layer.paths.at(s).size(), Scalar(0));
                for (size_t i = 0; i < ps.size(); ++i) {
                    if (r[i] == 0) continue;
                    QuiverPath q{a};
                    q.insert(q.end(), ps[i].begin(), ps[i].end());
                    v[idx.at(q)] = r[i];
                }
                out.at(s).insert(f, v);
            }
        }
    }
    return out;
}

void adjacency(const std::vector<QuiverArrow>& arrows, int nobj, std::vector<std::vector<int>>& out_of,
               std::vector<std::vector<int>>& into) {
    out_of.assign(nobj, {});
    into.assign(nobj, {});
    for (int a = 0; a < static_cast<int>(arrows.size()); ++a) {
        out_of[arrows[a].source].push_back(a);
        into[arrows[a].target].push_back(a);
    }
}

}  // namespace

QuiverPresentation extract_presentation(const WindowedCategory& c, const std::vector<int>& objects,
                                        bool with_relations, int max_degree) {
    const FiniteDimAlgebra& a = *c.alg;
    const Field& f = a.field();
    QuiverPresentation p;
    p.objects = objects;
    std::vector<char> in(a.num_vertices(), 0);
    for (int o : objects) in[o] = 1;

    // rad^2 per slot
    std::map<Slot, Echelon> rad2;
    for (int u = 0; u < a.dim(); ++u) {
        if (!a.element(u).radical || !in[a.element(u).target]) continue;
        for (const auto& [v, prod] : a.row(u)) {
            if (!a.element(v).radical || !in[a.element(v).source]) continue;
            Slot s{a.element(v).source, a.element(u).target};
            int n = static_cast<int>(a.hom(s.first, s.second).size());
            auto it = rad2.try_emplace(s, n).first;
            Vec d(n, Scalar(0));
            for (const auto& [w, coef] : prod) d[a.hom_position(w)] = coef;
            it->second.insert(f, d);
        }
    }
    for (int x : objects)
        for (int z : objects) {
            const auto& h = a.hom(x, z);
            if (h.empty()) continue;
            auto it = rad2.find({x, z});
            Echelon e = it == rad2.end() ? Echelon(static_cast<int>(h.size())) : it->second;
            for (int b : h) {
                if (!a.element(b).radical) continue;
                Vec d(h.size(), Scalar(0));
                d[a.hom_position(b)] = 1;
                if (e.insert(f, d)) {
                    bool dual = c.kind == "D" && c.labels[b].part == Part::dual;
                    p.arrows.push_back({a.element(b).label, x, z, b, dual});
                }
            }
        }
    if (!with_relations) return p;

    std::vector<std::vector<int>> out_of, into;
    adjacency(p.arrows, a.num_vertices(), out_of, into);
    std::map<Slot, Echelon> span;       // all path values so far
    std::map<Slot, int> rank_sum;
    PathLayer layer = first_layer(p.arrows), prev;
    std::map<Slot, std::vector<SparseVec>> values, prev_values;
    for (const auto& [slot, ps] : layer.paths)
        for (const auto& q : ps) values[slot].push_back({{p.arrows[q[0]].element, Scalar(1)}});
    std::map<Slot, Echelon> prev_kernel;

    for (int d = 1; d <= max_degree; ++d) {
        if (layer.paths.empty()) {
            p.top_degree = d;
            break;
        }
        std::map<Slot, Echelon> lower;
        if (d > 1) lower = lower_part(f, layer, prev, prev_kernel, p.arrows, out_of, into);
        std::map<Slot, Echelon> kernel;
        bool all_zero = true;
        for (const auto& [slot, ps] : layer.paths) {
            const auto& h = a.hom(slot.first, slot.second);
            const int n = static_cast<int>(ps.size());
            Mat m(static_cast<int>(h.size()), n);
            for (int i = 0; i < n; ++i)
                for (const auto& [w, coef] : values[slot][i]) {
                    m(a.hom_position(w), i) = coef;
                    all_zero = false;
                }
            Echelon k(n);
            if (h.empty()) {
                for (int i = 0; i < n; ++i) {
                    Vec e(n, Scalar(0));
                    e[i] = 1;
                    k.insert(f, e);
                }
            } else {
                for (auto& v : kernel_basis(f, m)) k.insert(f, v);
                int r = n - k.rank();
                rank_sum[slot] += r;
                auto it = span.try_emplace(slot, static_cast<int>(h.size())).first;
                for (int i = 0; i < n; ++i) it->second.insert(f, m.column(i));
            }
            // new relations: the kernel modulo what lower relations generate
            const Echelon* low = nullptr;
            if (auto it = lower.find(slot); it != lower.end()) low = &it->second;
            Echelon fresh(n);
            for (const Vec& r : k.rows()) {
                Vec res = low ? low->reduce(f, r) : r;
                if (!is_zero(res)) fresh.insert(f, res);
            }
            for (const Vec& r : fresh.rows()) {
                PathRelation rel;
                rel.source = slot.first;
                rel.target = slot.second;
                rel.degree = d;
                for (int i = 0; i < n; ++i)
                    if (r[i] != 0) rel.terms.emplace_back(ps[i], r[i]);
                p.relations.push_back(std::move(rel));
            }
            kernel.emplace(slot, std::move(k));
        }
        if (all_zero) {
            p.top_degree = d;
            break;
        }
        if (d == max_degree) {
            p.failure = "paths of length " + std::to_string(max_degree) + " still survive";
            break;
        }
        prev = std::move(layer);
        prev_kernel = std::move(kernel);
        layer = extend(prev, p.arrows, out_of);
        prev_values = std::move(values);
        values.clear();
        for (const auto& [slot, ps] : layer.paths)
            for (const auto& q : ps) {
                QuiverPath head(q.begin(), q.end() - 1);
                Slot hs{slot.first, p.arrows[head.back()].target};
                const SparseVec& hv = prev_values[hs][prev.index.at(hs).at(head)];
                values[slot].push_back(hv.empty() ? SparseVec{}
                                                  : a.multiply(SparseVec{{p.arrows[q.back()].element, Scalar(1)}}, hv));
            }
    }

    for (const auto& [slot, e] : span)
        if (e.rank() != rank_sum[slot]) p.homogeneous = false;
    // generation on slots well inside the object set
    int lo = c.window.hi, hi = c.window.lo;
    for (int o : objects) {
        lo = std::min(lo, c.objects[o].level);
        hi = std::max(hi, c.objects[o].level);
    }
    for (int x : objects)
        for (int z : objects) {
            int lx = c.objects[x].level, lz = c.objects[z].level;
            if (std::min(lx, lz) < lo + c.N || std::max(lx, lz) > hi - c.N) continue;
            int have = x == z ? 1 : 0;
            if (auto it = span.find({x, z}); it != span.end()) have += it->second.rank();
            if (have != static_cast<int>(a.hom(x, z).size())) {
                p.generated = false;
                if (p.failure.empty())
                    p.failure = "arrows do not generate hom(" + c.object_name(x) + ", " + c.object_name(z) + ")";
            }
        }
    return p;
}

std::vector<IdealComponent> ideal_components(const Field& f, const std::vector<QuiverArrow>& arrows,
                                             const std::vector<int>& objects,
                                             const std::vector<PathRelation>& relations, int max_degree) {
    int nobj = 0;
    for (int o : objects) nobj = std::max(nobj, o + 1);
    for (const auto& a : arrows) nobj = std::max({nobj, a.source + 1, a.target + 1});
    std::vector<std::vector<int>> out_of, into;
    adjacency(arrows, nobj, out_of, into);
    std::vector<IdealComponent> out;
    PathLayer layer = first_layer(arrows), prev;
    std::map<Slot, Echelon> prev_ideal;
    for (int d = 1; d <= max_degree && !layer.paths.empty(); ++d) {
        std::map<Slot, Echelon> ideal;
        if (d > 1) ideal = lower_part(f, layer, prev, prev_ideal, arrows, out_of, into);
        for (const auto& [slot, ps] : layer.paths) ideal.try_emplace(slot, static_cast<int>(ps.size()));
        for (const auto& r : relations) {
            if (r.degree != d) continue;
            Slot s{r.source, r.target};
            auto it = layer.index.find(s);
            if (it == layer.index.end()) throw Error(ErrorKind::input, "relation between unconnected objects");
            Vec v(layer.paths.at(s).size(), Scalar(0));
            for (const auto& [q, coef] : r.terms) {
                auto j = it->second.find(q);
                if (j == it->second.end()) throw Error(ErrorKind::input, "relation uses a path outside the quiver");
                v[j->second] = f.reduce(v[j->second] + coef);
            }
            ideal.at(s).insert(f, v);
        }
        for (const auto& [slot, e] : ideal) out.push_back({slot.first, slot.second, d, layer.paths.at(slot), e});
        prev = std::move(layer);
        prev_ideal = std::move(ideal);
        layer = extend(prev, arrows, out_of);
    }
    return out;
}

std::string path_name(const QuiverPresentation& p, const QuiverPath& path) {
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) s += (i ? " . " : "") + p.arrows[path[i]].name;
    return s;
}

nlohmann::json to_json(const QuiverPresentation& p, const WindowedCategory& c) {
    const Field& f = c.alg->field();
    nlohmann::json objs = nlohmann::json::array();
    for (int o : p.objects) objs.push_back(c.object_name(o));
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& a : p.arrows)
        arrows.push_back({{"name", a.name},
                          {"from", c.object_name(a.source)},
                          {"to", c.object_name(a.target)},
                          {"style", a.dual ? "dotted" : "solid"}});
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : p.relations) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [q, coef] : r.terms) {
            nlohmann::json path = nlohmann::json::array();
            for (int i : q) path.push_back(p.arrows[i].name);
            terms.push_back({{"coeff", f.format(coef)}, {"path", path}});
        }
        rels.push_back({{"from", c.object_name(r.source)},
                        {"to", c.object_name(r.target)},
                        {"degree", r.degree},
                        {"terms", terms}});
    }
    return {{"objects", objs},         {"arrows", arrows},           {"relations", rels},
            {"top_degree", p.top_degree}, {"homogeneous", p.homogeneous}, {"generated", p.generated}};
}

CheckReport dotted_products_vanish(const WindowedCategory& d, const QuiverPresentation& p) {
    CheckReport rep;
    const FiniteDimAlgebra& a = *d.alg;
    // every dotted element, not only the minimal arrows: those are rarely composable
    std::set<int> objs(p.objects.begin(), p.objects.end());
    std::vector<int> dotted;
    for (int b = 0; b < a.dim(); ++b)
        if (d.labels[b].part == Part::dual && objs.count(a.element(b).source) && objs.count(a.element(b).target))
            dotted.push_back(b);
    for (int x : dotted)
        for (int y : dotted) {
            if (a.element(y).source != a.element(x).target) continue;
            ++rep.checked;
            const SparseVec* prod = a.product(y, x);
            if (prod && !prod->empty()) rep.fail(a.element(y).label + " * " + a.element(x).label + " is not zero");
        }
    return rep;
}

}  // namespace qhe
