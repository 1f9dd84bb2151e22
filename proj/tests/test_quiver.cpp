#include "qhe/example.hpp"
#include "qhe/quiver.hpp"

#include "support.hpp"

#include <doctest.h>

#include <chrono>
#include <fstream>
#include <map>
#include <set>

using namespace qhe;
using testing::load;

namespace {

nlohmann::json periodic() {
    std::ifstream in(std::string(QHE_CORPUS_DIR) + "/golden/a2_periodic.json");
    return nlohmann::json::parse(in);
}

PeriodicQuiver part(const nlohmann::json& j, const char* which, const Field& f) {
    PeriodicQuiver g = parse_periodic_quiver(j.at(which), f);
    g.level_sign = j.at("level_sign");
    return g;
}

const std::map<std::string, std::string> kA2{{"1", "1"}, {"2", "2"}};

}  // namespace

TEST_CASE("the easy example end to end") {
    auto t0 = std::chrono::steady_clock::now();
    ExampleRun run = run_example_a2(QHE_CORPUS_DIR);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(run.pass);
    CHECK(secs < 5.0);
    CHECK(run.report["C(A2)"]["ok"] == true);
    CHECK(run.report["C(K~)"]["ok"] == true);
    CHECK(run.report["D(K~) dotted products"]["ok"] == true);
    CHECK(run.report["D(K~) dotted products"]["pairs_checked"].get<int>() > 0);
}

TEST_CASE("C(A2): three arrows per level and quadratic relations") {
    auto a2 = load("a2");
    WindowedCategory c = testing::C_at(a2);
    QuiverPresentation p = extract_presentation(c, deep_objects(c, 0));
    CHECK(p.failure.empty());
    CHECK(p.generated);
    CHECK(p.homogeneous);
    std::set<int> levels;
    for (int o : p.objects) levels.insert(c.objects[o].level);
    CHECK(p.arrows.size() >= 3 * (levels.size() - 1));
    for (const auto& r : p.relations) CHECK(r.degree == 2);
    for (const auto& a : p.arrows) {
        CHECK_FALSE(a.dual);
        int d = c.objects[a.target].level - c.objects[a.source].level;
        CHECK((d == 1 || d == -1));
    }
}

TEST_CASE("golden comparison catches a wrong relation set") {
    auto a2 = load("a2");
    const Field& f = a2->field();
    WindowedCategory c = testing::C_at(a2);
    QuiverPresentation p = extract_presentation(c, deep_objects(c, 0));
    nlohmann::json j = periodic();
    CHECK(compare_presentation(c, p, part(j, "C", f), kA2).ok);

    nlohmann::json flipped = j;
    flipped["C"]["relations"][2][1]["coeff"] = "1";   // commutativity with the wrong sign
    CHECK_FALSE(compare_presentation(c, p, part(flipped, "C", f), kA2).ok);

    nlohmann::json missing = j;
    missing["C"]["relations"].erase(0);
    CHECK_FALSE(compare_presentation(c, p, part(missing, "C", f), kA2).ok);

    nlohmann::json extra = j;
    // kills a path that survives
    extra["C"]["relations"].push_back(nlohmann::json::parse(R"([{"coeff": "1", "path": [["a", 0], ["e2", -1]]}])"));
    CHECK_FALSE(compare_presentation(c, p, part(extra, "C", f), kA2).ok);

    nlohmann::json moved = j;
    moved["C"]["arrows"][2]["to"] = {"2", 1};
    CHECK_FALSE(compare_presentation(c, p, part(moved, "C", f), kA2).ok);
}

TEST_CASE("D(K~): one dotted arrow per level and the dotted products vanish") {
    auto p = testing::D_at(load("k"));
    QuiverPresentation q = extract_presentation(p.d, deep_objects(p.d, 0));
    CHECK(q.failure.empty());
    CHECK(q.generated);
    std::map<int, int> dotted, solid;
    for (const auto& a : q.arrows) {
        int l = p.d.objects[a.target].level;
        (a.dual ? dotted : solid)[l]++;
        if (a.dual) {
            CHECK(p.d.objects[a.source].level == p.d.objects[a.target].level);
            CHECK(p.d.base->vertices()[p.d.objects[a.source].vertex].tilde);
        }
    }
    for (const auto& [l, n] : dotted) CHECK(n == 1);
    CheckReport r = dotted_products_vanish(p.d, q);
    CHECK(r.ok);
    CHECK(r.checked > 0);
    GoldenComparison g = compare_generators(p.d, q, part(periodic(), "D", p.d.alg->field()), {{"1", "1"}, {"1~", "2"}});
    CHECK_MESSAGE(g.ok, g.failure);
    CHECK_FALSE(g.redundant.empty());
}

TEST_CASE("the ideal components of a presentation contain its own relations") {
    auto d = load("d");
    WindowedCategory c = testing::C_at(d);
    QuiverPresentation p = extract_presentation(c, deep_objects(c, 0));
    auto comps = ideal_components(d->field(), p.arrows, p.objects, p.relations, std::max(p.top_degree, 2));
    int rows = 0;
    for (const auto& k : comps) rows += k.rows.rank();
    CHECK(rows >= static_cast<int>(p.relations.size()));
}
