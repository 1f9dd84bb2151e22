#include "qhe/example.hpp"

#include "qhe/errors.hpp"
#include "qhe/extensions.hpp"
#include "qhe/filtration.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace qhe {

PeriodicQuiver parse_periodic_quiver(const nlohmann::json& j, const Field& f) {
    try {
        PeriodicQuiver g;
        g.name = j.value("name", "");
        g.level_sign = j.value("level_sign", 1);
        for (const auto& a : j.at("arrows")) {
            PeriodicArrow x;
            x.name = a.at("name").get<std::string>();
            x.from = a.at("from").at(0).get<std::string>();
            x.from_shift = a.at("from").at(1).get<int>();
            x.to = a.at("to").at(0).get<std::string>();
            x.to_shift = a.at("to").at(1).get<int>();
            x.dotted = a.value("style", "solid") == "dotted";
            g.arrows.push_back(x);
        }
        if (j.contains("relations"))
            for (const auto& r : j.at("relations")) {
                std::vector<PeriodicTerm> rel;
                for (const auto& t : r) {
                    PeriodicTerm term;
                    term.coeff = f.parse(t.at("coeff").get<std::string>());
                    for (const auto& step : t.at("path"))
                        term.path.emplace_back(step.at(0).get<std::string>(), step.at(1).get<int>());
                    rel.push_back(term);
                }
                g.relations.push_back(rel);
            }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::input, std::string("periodic quiver: ") + e.what());
    }
}

namespace {

struct Instances {
    // (drawn vertex, drawn index) -> object
    std::map<std::pair<std::string, int>, int> object_at;
    // slot -> periodic arrow instances ("name^i", dotted)
    std::map<std::pair<int, int>, std::vector<std::pair<std::string, bool>>> by_slot;
    std::map<std::string, std::pair<int, int>> slot_of;  // instance name -> slot
    int count = 0;
};

std::string instance_name(const std::string& n, int i) { return n + "^" + std::to_string(i); }

Instances instantiate(const WindowedCategory& c, const QuiverPresentation& p, const PeriodicQuiver& g,
                      const std::map<std::string, std::string>& vmap) {
    Instances in;
    int lo = 1 << 30, hi = -(1 << 30);
    for (int o : p.objects) {
        const auto& ob = c.objects[o];
        const std::string& vname = c.base->vertices()[ob.vertex].name;
        auto it = vmap.find(vname);
        if (it == vmap.end()) throw Error(ErrorKind::input, "vertex " + vname + " has no counterpart");
        int i = g.level_sign * ob.level;
        in.object_at[{it->second, i}] = o;
        lo = std::min(lo, i);
        hi = std::max(hi, i);
    }
    const int pad = 2 * c.N + 2;
    for (const auto& a : g.arrows)
        for (int i = lo - pad; i <= hi + pad; ++i) {
            auto f = in.object_at.find({a.from, i + a.from_shift});
            auto t = in.object_at.find({a.to, i + a.to_shift});
            if (f == in.object_at.end() || t == in.object_at.end()) continue;
            std::pair<int, int> slot{f->second, t->second};
            in.by_slot[slot].emplace_back(instance_name(a.name, i), a.dotted);
            in.slot_of[instance_name(a.name, i)] = slot;
            ++in.count;
        }
    return in;
}

std::pair<int, int> level_range(const WindowedCategory& c, const std::vector<int>& objs) {
    int lo = c.window.hi, hi = c.window.lo;
    for (int o : objs) {
        lo = std::min(lo, c.objects[o].level);
        hi = std::max(hi, c.objects[o].level);
    }
    return {lo, hi};
}

}  // namespace

GoldenComparison compare_presentation(const WindowedCategory& c, const QuiverPresentation& p,
                                      const PeriodicQuiver& g, const std::map<std::string, std::string>& vmap) {
    GoldenComparison r;
    const Field& f = c.alg->field();
    Instances in = instantiate(c, p, g, vmap);
    r.arrow_instances = in.count;
    r.arrows = static_cast<int>(p.arrows.size());

    std::map<std::pair<int, int>, std::vector<int>> ours;
    for (int a = 0; a < r.arrows; ++a) ours[{p.arrows[a].source, p.arrows[a].target}].push_back(a);
    std::map<std::string, int> arrow_of;
    for (const auto& [slot, names] : in.by_slot) {
        auto it = ours.find(slot);
        size_t have = it == ours.end() ? 0 : it->second.size();
        if (have != names.size()) {
            r.failure = "slot " + c.object_name(slot.first) + " -> " + c.object_name(slot.second) + " has " +
                        std::to_string(have) + " arrows, expected " + std::to_string(names.size());
            return r;
        }
        if (have != 1) {
            r.failure = "several arrows in one slot; matching is ambiguous";
            return r;
        }
        arrow_of[names[0].first] = it->second[0];
    }
    for (const auto& [slot, list] : ours)
        if (!in.by_slot.count(slot)) {
            r.failure = "arrow " + p.arrows[list[0]].name + " has no counterpart";
            return r;
        }

    // relation instances as path relations over our arrows
    std::vector<PathRelation> golden;
    auto [lo_i, hi_i] = std::make_pair(1 << 30, -(1 << 30));
    for (const auto& [key, o] : in.object_at) {
        lo_i = std::min(lo_i, key.second);
        hi_i = std::max(hi_i, key.second);
    }
    for (const auto& rel : g.relations)
        for (int i = lo_i - 2 * c.N - 2; i <= hi_i + 2 * c.N + 2; ++i) {
            PathRelation pr;
            bool complete = true;
            for (const auto& t : rel) {
                QuiverPath q;
                for (const auto& [name, s] : t.path) {
                    auto it = arrow_of.find(instance_name(name, i + s));
                    if (it == arrow_of.end()) {
                        complete = false;
                        break;
                    }
                    q.push_back(it->second);
                }
                if (!complete) break;
                for (size_t k = 1; k < q.size(); ++k)
                    if (p.arrows[q[k]].source != p.arrows[q[k - 1]].target)
                        throw Error(ErrorKind::input, "relation path is not composable");
                int src = p.arrows[q.front()].source, dst = p.arrows[q.back()].target;
                if (pr.terms.empty()) {
                    pr.source = src;
                    pr.target = dst;
                    pr.degree = static_cast<int>(q.size());
                } else if (src != pr.source || dst != pr.target || static_cast<int>(q.size()) != pr.degree) {
                    throw Error(ErrorKind::input, "relation terms are not parallel of equal length");
                }
                pr.terms.emplace_back(q, t.coeff);
            }
            if (complete && !pr.terms.empty()) golden.push_back(pr);
        }
    r.relation_instances = static_cast<int>(golden.size());

    const int top = std::max(p.top_degree, 2);
    auto mine = ideal_components(f, p.arrows, p.objects, p.relations, top);
    auto theirs = ideal_components(f, p.arrows, p.objects, golden, top);
    auto [lo, hi] = level_range(c, p.objects);
    auto deep = [&](int o) { return c.objects[o].level >= lo + c.N && c.objects[o].level <= hi - c.N; };
    if (mine.size() != theirs.size()) {
        r.failure = "ideal component lists differ in length";
        return r;
    }
    for (size_t k = 0; k < mine.size(); ++k) {
        const auto& x = mine[k];
        const auto& y = theirs[k];
        if (x.source != y.source || x.target != y.target || x.degree != y.degree) {
            r.failure = "ideal components out of step";
            return r;
        }
        if (!deep(x.source) || !deep(x.target)) continue;
        ++r.slots_compared;
        if (!(x.rows == y.rows)) {
            r.failure = "relations differ in degree " + std::to_string(x.degree) + " on " + c.object_name(x.source) +
                        " -> " + c.object_name(x.target) + " (ranks " + std::to_string(x.rows.rank()) + " and " +
                        std::to_string(y.rows.rank()) + ")";
            return r;
        }
    }
    r.ok = r.slots_compared > 0;
    if (!r.ok) r.failure = "no slot deep enough to compare";
    return r;
}

GoldenComparison compare_generators(const WindowedCategory& c, const QuiverPresentation& p, const PeriodicQuiver& g,
                                    const std::map<std::string, std::string>& vmap) {
    GoldenComparison r;
    Instances in = instantiate(c, p, g, vmap);
    r.arrow_instances = in.count;
    r.arrows = static_cast<int>(p.arrows.size());
    std::set<std::pair<std::pair<int, int>, bool>> used;
    for (const auto& a : p.arrows) {
        std::pair<int, int> slot{a.source, a.target};
        bool found = false;
        auto it = in.by_slot.find(slot);
        if (it != in.by_slot.end())
            for (const auto& [name, dotted] : it->second)
                if (dotted == a.dual) found = true;
        if (!found) {
            r.failure = "arrow " + a.name + " has no periodic generator of its style";
            return r;
        }
        used.insert({slot, a.dual});
    }
    auto [lo, hi] = level_range(c, p.objects);
    for (const auto& [slot, names] : in.by_slot) {
        int l = c.objects[slot.first].level;
        if (l < lo + c.N || l > hi - c.N) continue;
        for (const auto& [name, dotted] : names)
            if (!used.count({slot, dotted})) r.redundant.push_back(name);
    }
    std::sort(r.redundant.begin(), r.redundant.end());
    r.ok = true;
    return r;
}

nlohmann::json to_json(const GoldenComparison& g) {
    nlohmann::json j = {{"ok", g.ok},
                        {"arrow_instances", g.arrow_instances},
                        {"arrows", g.arrows},
                        {"relation_instances", g.relation_instances},
                        {"slots_compared", g.slots_compared},
                        {"redundant_generators", g.redundant}};
    if (!g.failure.empty()) j["failure"] = g.failure;
    return j;
}

namespace {

AlgebraPtr load_radical(const std::string& path) {
    return std::make_shared<const FiniteDimAlgebra>(radical_filtration(compute_basis(load_presentation(path))));
}

}  // namespace

ExampleRun run_example_a2(const std::string& dir) {
    ExampleRun run;
    std::ifstream in(dir + "/golden/a2_periodic.json");
    if (!in) throw Error(ErrorKind::input, "cannot open " + dir + "/golden/a2_periodic.json");
    nlohmann::json gj = nlohmann::json::parse(in);

    AlgebraPtr a2 = load_radical(dir + "/a2.json");
    AlgebraPtr k = load_radical(dir + "/k.json");
    auto kt = std::make_shared<const FiniteDimAlgebra>(tilde_extension(*k));
    const Field& f = a2->field();
    PeriodicQuiver gc = parse_periodic_quiver(gj.at("C"), f);
    PeriodicQuiver gd = parse_periodic_quiver(gj.at("D"), f);
    gc.level_sign = gd.level_sign = gj.value("level_sign", 1);

    const int N = a2->filtration_length();
    WindowedCategory c = build_C(a2, Window::symmetric(4 * N, N));
    QuiverPresentation pc = extract_presentation(c, deep_objects(c, 0));
    GoldenComparison cmp_c = compare_presentation(c, pc, gc, {{"1", "1"}, {"2", "2"}});

    const int Nt = kt->filtration_length();
    WindowedCategory ct = build_C(kt, Window::symmetric(4 * Nt, Nt));
    QuiverPresentation pct = extract_presentation(ct, deep_objects(ct, 0));
    const std::map<std::string, std::string> tmap{{"1", "1"}, {"1~", "2"}};
    GoldenComparison cmp_ct = compare_presentation(ct, pct, gc, tmap);

    WindowedCategory d = build_D(ct);
    QuiverPresentation pd = extract_presentation(d, deep_objects(d, 0));
    GoldenComparison cmp_d = compare_generators(d, pd, gd, tmap);
    CheckReport dotted = dotted_products_vanish(d, pd);

    run.c_presentation = to_json(pc, c);
    run.d_presentation = to_json(pd, d);
    bool c_ok = cmp_c.ok && pc.generated && pc.homogeneous && pc.failure.empty();
    bool ct_ok = cmp_ct.ok && pct.generated && pct.failure.empty();
    bool d_ok = cmp_d.ok && dotted.ok && pd.generated && pd.failure.empty();
    run.pass = c_ok && ct_ok && d_ok;
    nlohmann::json dj = {{"ok", dotted.ok}, {"pairs_checked", dotted.checked}};
    if (!dotted.ok) dj["failure"] = dotted.failure;
    run.report = {{"example", "a2"},
                  {"verdict", run.pass ? "PASS" : "FAIL"},
                  {"C(A2)", to_json(cmp_c)},
                  {"C(K~)", to_json(cmp_ct)},
                  {"D(K~) generators", to_json(cmp_d)},
                  {"D(K~) dotted products", dj}};
    return run;
}

}  // namespace qhe
