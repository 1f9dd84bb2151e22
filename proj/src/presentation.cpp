#include "qhe/presentation.hpp"

#include "qhe/errors.hpp"

#include <fstream>
#include <set>

namespace qhe {

namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw Error(ErrorKind::input, "scalar must be a decimal string or an integer");
}

PathTerm parse_term(const Presentation& p, const json& t) {
    if (!t.is_object()) throw Error(ErrorKind::input, "path term must be an object");
    PathTerm term;
    term.coeff = p.field.parse(t.contains("coeff") ? scalar_text(t.at("coeff")) : "1");
    if (t.contains("vertex")) {
        term.vertex = p.vertex_index(t.at("vertex").get<std::string>());
        return term;
    }
    if (!t.contains("path") || !t.at("path").is_array())
        throw Error(ErrorKind::input, "path term needs 'path' or 'vertex'");
    for (const auto& a : t.at("path")) term.arrows.push_back(p.arrow_index(a.get<std::string>()));
    if (term.arrows.empty()) throw Error(ErrorKind::input, "empty path: use {\"vertex\": ...} for idempotents");
    for (size_t k = 1; k < term.arrows.size(); ++k)
        if (p.arrows[term.arrows[k - 1]].target != p.arrows[term.arrows[k]].source)
            throw Error(ErrorKind::input, "path is not composable");
    return term;
}

PathCombination parse_combination(const Presentation& p, const json& c, const std::string& what) {
    if (!c.is_array() || c.empty()) throw Error(ErrorKind::input, what + " must be a non-empty list of terms");
    PathCombination out;
    for (const auto& t : c) out.push_back(parse_term(p, t));
    return out;
}

}  // namespace

int Presentation::vertex_index(const std::string& n) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == n) return static_cast<int>(i);
    throw Error(ErrorKind::input, "unknown vertex '" + n + "'");
}

int Presentation::arrow_index(const std::string& n) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == n) return static_cast<int>(i);
    throw Error(ErrorKind::input, "unknown arrow '" + n + "'");
}

int Presentation::path_source(const PathTerm& t) const {
    return t.arrows.empty() ? t.vertex : arrows[t.arrows.front()].source;
}

int Presentation::path_target(const PathTerm& t) const {
    return t.arrows.empty() ? t.vertex : arrows[t.arrows.back()].target;
}

int Presentation::path_degree(const PathTerm& t) const {
    int d = 0;
    for (int a : t.arrows) d += arrow_degree[a];
    return d;
}

Presentation parse_presentation(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::input, "presentation must be a JSON object");
    Presentation p;
    p.name = j.value("name", std::string("A"));

    if (j.contains("field")) {
        const auto& f = j.at("field");
        std::string kind = f.value("kind", std::string("rational"));
        if (kind == "rational") {
            p.field = Field::rationals();
        } else if (kind == "prime") {
            if (!f.contains("p") || !f.at("p").is_number_unsigned())
                throw Error(ErrorKind::input, "prime field needs a positive integer 'p'");
            p.field = Field::prime(f.at("p").get<unsigned long>());
        } else {
            throw Error(ErrorKind::input, "unknown field kind '" + kind + "'");
        }
    }

    if (!j.contains("vertices") || !j.at("vertices").is_array() || j.at("vertices").empty())
        throw Error(ErrorKind::input, "presentation needs a non-empty 'vertices' list");
    std::set<std::string> seen;
    for (const auto& v : j.at("vertices")) {
        auto name = v.get<std::string>();
        if (!seen.insert(name).second) throw Error(ErrorKind::input, "duplicate vertex '" + name + "'");
        p.vertices.push_back(name);
    }

    seen.clear();
    for (const auto& a : j.value("arrows", json::array())) {
        Arrow arrow;
        arrow.name = a.at("name").get<std::string>();
        if (!seen.insert(arrow.name).second) throw Error(ErrorKind::input, "duplicate arrow '" + arrow.name + "'");
        arrow.source = p.vertex_index(a.at("source").get<std::string>());
        arrow.target = p.vertex_index(a.at("target").get<std::string>());
        p.arrows.push_back(arrow);
    }

    p.arrow_degree.assign(p.arrows.size(), 1);
    if (j.contains("grading") && !j.at("grading").is_null()) {
        p.explicit_grading = true;
        for (auto it = j.at("grading").begin(); it != j.at("grading").end(); ++it) {
            int d = it.value().get<int>();
            if (d < 0) throw Error(ErrorKind::input, "arrow degrees must be non-negative");
            p.arrow_degree[p.arrow_index(it.key())] = d;
        }
    }

    for (const auto& r : j.value("relations", json::array())) {
        PathCombination rel = parse_combination(p, r, "relation");
        int s = p.path_source(rel.front()), t = p.path_target(rel.front());
        for (const auto& term : rel)
            if (p.path_source(term) != s || p.path_target(term) != t)
                throw Error(ErrorKind::input, "relation terms are not parallel paths");
        p.relations.push_back(std::move(rel));
    }

    p.degree_cap = j.value("degree_cap", 12);
    if (p.degree_cap < 1) throw Error(ErrorKind::input, "degree_cap must be at least 1");

    if (j.contains("trace") && !j.at("trace").is_null()) p.trace = parse_combination(p, j.at("trace"), "trace");
    return p;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::input, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::input, path + ": " + e.what());
    }
    try {
        return parse_presentation(j);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::input, path + ": " + e.what());
    }
}

json to_json(const Presentation& p) {
    auto term_json = [&](const PathTerm& t) {
        json o;
        o["coeff"] = p.field.format(t.coeff);
        if (t.arrows.empty()) {
            o["vertex"] = p.vertices[t.vertex];
        } else {
            json path = json::array();
            for (int a : t.arrows) path.push_back(p.arrows[a].name);
            o["path"] = path;
        }
        return o;
    };
    json j;
    j["name"] = p.name;
    j["field"] = p.field.is_rational() ? json{{"kind", "rational"}} : json{{"kind", "prime"}, {"p", p.field.modulus()}};
    j["vertices"] = p.vertices;
    json arrows = json::array();
    for (const auto& a : p.arrows)
        arrows.push_back({{"name", a.name}, {"source", p.vertices[a.source]}, {"target", p.vertices[a.target]}});
    j["arrows"] = arrows;
    json rels = json::array();
    for (const auto& r : p.relations) {
        json rj = json::array();
        for (const auto& t : r) rj.push_back(term_json(t));
        rels.push_back(rj);
    }
    j["relations"] = rels;
    j["degree_cap"] = p.degree_cap;
    if (p.explicit_grading) {
        json g;
        for (size_t a = 0; a < p.arrows.size(); ++a) g[p.arrows[a].name] = p.arrow_degree[a];
        j["grading"] = g;
    }
    if (p.trace) {
        json tj = json::array();
        for (const auto& t : *p.trace) tj.push_back(term_json(t));
        j["trace"] = tj;
    }
    return j;
}

}  // namespace qhe
