#include "qhe/algebra.hpp"
#include "qhe/errors.hpp"
#include "qhe/extensions.hpp"
#include "qhe/filtration.hpp"
#include "qhe/kernels.hpp"
#include "qhe/module.hpp"
#include "qhe/presentation.hpp"
#include "qhe/trace_form.hpp"

#include "support.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace qhe;
using testing::load;

namespace {

// Paths of a monomial presentation avoiding every relation as a subpath,
// by depth-first enumeration: an oracle for dim and hom dimensions.
std::vector<std::vector<int>> monomial_paths(const Presentation& p) {
    std::set<std::vector<int>> zero;
    for (const auto& r : p.relations) {
        REQUIRE(r.size() == 1);
        zero.insert(r[0].arrows);
    }
    std::vector<std::vector<int>> out;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& path) {
        for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) {
            if (p.arrows[a].source != p.arrows[path.back()].target) continue;
            path.push_back(a);
            bool dead = false;
            for (size_t s = 0; s + 1 < path.size() && !dead; ++s)
                if (zero.count(std::vector<int>(path.begin() + s, path.end()))) dead = true;
            if (!dead) {
                out.push_back(path);
                if (path.size() < 20) grow(path);
            }
            path.pop_back();
        }
    };
    for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) {
        std::vector<int> path{a};
        out.push_back(path);
        grow(path);
    }
    return out;
}

Presentation one_loop(const std::string& field_json, int nilpotency) {
    std::vector<std::string> path(nilpotency, "x");
    nlohmann::json j = {{"name", "loop"},
                        {"field", nlohmann::json::parse(field_json)},
                        {"vertices", {"1"}},
                        {"arrows", {{{"name", "x"}, {"source", "1"}, {"target", "1"}}}},
                        {"relations", {{{{"coeff", "1"}, {"path", path}}}}}};
    return parse_presentation(j);
}

}  // namespace

TEST_CASE("basis examples") {
    CHECK(load("a2")->dim() == 3);
    CHECK(load("k")->dim() == 1);
    CHECK(load("d")->dim() == 2);
    CHECK(load("n3")->dim() == 3);
    auto a2 = load("a2");
    CHECK(a2->find_label("e_1") >= 0);
    CHECK(a2->find_label("e_2") >= 0);
    CHECK(a2->find_label("a") >= 0);
}

TEST_CASE("basis dimensions match monomial path enumeration") {
    for (const char* name : {"k", "d", "n3", "a2", "a2-corrupt", "line3"}) {
        CAPTURE(name);
        Presentation p = load_presentation(testing::corpus(name));
        FiniteDimAlgebra a = compute_basis(p);
        auto paths = monomial_paths(p);
        CHECK(a.dim() == static_cast<int>(p.vertices.size() + paths.size()));
        for (int x = 0; x < a.num_vertices(); ++x)
            for (int y = 0; y < a.num_vertices(); ++y) {
                int count = x == y ? 1 : 0;
                for (const auto& q : paths)
                    if (p.arrows[q.front()].source == x && p.arrows[q.back()].target == y) ++count;
                CHECK(static_cast<int>(a.hom(x, y).size()) == count);
            }
    }
}

TEST_CASE("an unbounded loop does not stabilize") {
    try {
        compute_basis(load_presentation(testing::corpus("infinite")));
        FAIL("expected DimensionNotStabilized");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::dimension_not_stabilized);
    }
}

TEST_CASE("presentation errors are input errors") {
    nlohmann::json bad = {{"name", "bad"},
                          {"field", {{"kind", "rational"}}},
                          {"vertices", {"1"}},
                          {"arrows", {{{"name", "x"}, {"source", "1"}, {"target", "9"}}}},
                          {"relations", nlohmann::json::array()}};
    CHECK_THROWS_AS(parse_presentation(bad), Error);
}

TEST_CASE("structure constants satisfy the algebra axioms exhaustively") {
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        CAPTURE(name);
        auto a = load(name);
        CHECK(check_structure(*a).empty());
        auto rep = check_associativity(*a, all_triples(*a), Exec::serial);
        CHECK(rep.failures == 0);
        auto t = testing::tilde(a);
        CHECK(check_structure(*t).empty());
        auto te = trivial_extension_finite(*a);
        CHECK(check_structure(te).empty());
    }
}

TEST_CASE("prime fields") {
    FiniteDimAlgebra a = compute_basis(one_loop(R"({"kind":"prime","p":5})", 4));
    CHECK(a.dim() == 4);
    CHECK(a.field().modulus() == 5);
    FiniteDimAlgebra r = radical_filtration(a);
    CHECK(r.filtration_length() == 4);
    auto line = load("line3");
    CHECK(line->field().modulus() == 7);
    CHECK(line->dim() == 5);
}

TEST_CASE("radical filtration examples") {
    auto a2 = load("a2");
    auto f = describe_filtration(*a2, "radical");
    CHECK(f.N == 2);
    CHECK(f.dims == std::vector<int>{3, 1, 0});
    auto n3 = describe_filtration(*load("n3"), "radical");
    CHECK(n3.N == 3);
    CHECK(n3.dims == std::vector<int>{3, 2, 1, 0});
    CHECK(describe_filtration(*load("k"), "radical").N == 1);
}

TEST_CASE("radical filtration: I_1^N = 0 and I_1^(N-1) != 0") {
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        CAPTURE(name);
        auto a = load(name);
        auto pw = radical_powers(*a);
        const int N = a->filtration_length();
        REQUIRE(static_cast<int>(pw.size()) == N + 1);
        CHECK(pw[N].rank() == 0);
        CHECK(pw[N - 1].rank() > 0);
        auto chain = level_chain(*a);
        for (int j = 0; j <= N; ++j) CHECK(chain[j] == pw[j]);
    }
}

TEST_CASE("non-admissible relations are rejected by the radical filtration") {
    nlohmann::json j = {{"name", "x=0"},
                        {"field", {{"kind", "rational"}}},
                        {"vertices", {"1", "2"}},
                        {"arrows", {{{"name", "x"}, {"source", "1"}, {"target", "2"}}}},
                        {"relations", {{{{"coeff", "1"}, {"path", {"x"}}}}}}};
    FiniteDimAlgebra a = compute_basis(parse_presentation(j));
    try {
        radical_filtration(a);
        FAIL("expected NonAdmissibleRelations");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_admissible_relations);
    }
}

TEST_CASE("validate_filtration") {
    auto d = load("d");
    FiniteDimAlgebra g = grading_filtration(compute_basis(load_presentation(testing::corpus("d"))));
    CHECK(same_levels(g, *d));

    auto a2 = load("a2");
    const Field& f = a2->field();
    Echelon all(a2->dim()), e2(a2->dim()), zero(a2->dim());
    for (int b = 0; b < a2->dim(); ++b) {
        Vec v(a2->dim());
        v[b] = 1;
        all.insert(f, v);
    }
    Vec v(a2->dim());
    v[a2->find_label("e_2")] = 1;
    e2.insert(f, v);
    try {
        validate_filtration(*a2, {all, e2, zero});
        FAIL("expected NotAnIdeal");
    } catch (const FiltrationError& e) {
        CHECK(e.kind() == ErrorKind::not_an_ideal);
        CHECK(e.index() == 1);
    }

    auto k = load("k");
    Echelon kall(1), kzero(1);
    kall.insert(k->field(), Vec{1});
    CHECK(validate_filtration(*k, {kall, kzero}).filtration_length() == 1);
}

TEST_CASE("Loewy lengths agree with iterated radicals of the projectives") {
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        CAPTURE(name);
        auto a = load(name);
        auto op = std::make_shared<const FiniteDimAlgebra>(a->opposite());
        auto ll = loewy_lengths(*a);
        for (int v = 0; v < a->num_vertices(); ++v) {
            CHECK(ll[v].first == static_cast<int>(radical_layers(projective(a, v), true).size()));
            CHECK(ll[v].second == static_cast<int>(radical_layers(projective(op, v), true).size()));
        }
    }
    auto ll = loewy_lengths(*load("a2"));
    CHECK(ll[0] == std::pair{2, 1});
    CHECK(ll[1] == std::pair{1, 2});
    CHECK(loewy_lengths(*load("d"))[0] == std::pair{2, 2});
    CHECK(loewy_lengths(*load("k"))[0] == std::pair{1, 1});
}

TEST_CASE("rigidity") {
    CHECK(is_rigid(*load("d")));
    CHECK(is_rigid(*load("n3")));
    CHECK_FALSE(is_rigid(*load("a2")));
}

TEST_CASE("self-injective algebras: dim soc(AA) = dim top(A_A)") {
    for (const char* name : {"d", "n3"}) {
        auto a = load(name);
        ModuleRep reg = projective(a, 0);
        auto op = std::make_shared<const FiniteDimAlgebra>(a->opposite());
        int soc = subspace_dim(socle(reg));
        int top = 0;
        for (int t : top_dims(projective(op, 0))) top += t;
        CHECK(soc == top);
    }
}

TEST_CASE("trace forms") {
    auto d = load("d");
    TraceForm t = check_symmetric(*d, functional_from_labels(*d, {{"x", 1}}));
    CHECK(t.verdict == FormVerdict::ok);
    CHECK(t.gram(d->find_label("e_1"), d->find_label("x")) == 1);
    CHECK(t.gram(d->find_label("x"), d->find_label("e_1")) == 1);
    CHECK(t.gram(d->find_label("e_1"), d->find_label("e_1")) == 0);
    CHECK(check_pairing_condition(*d, t).ok);

    auto n3 = load("n3");
    TraceForm t3 = check_symmetric(*n3, functional_from_labels(*n3, {{"x.x", 1}}));
    CHECK(t3.verdict == FormVerdict::ok);
    CHECK(t3.rank == 3);
    CHECK(check_pairing_condition(*n3, t3).ok);

    auto a2 = load("a2");
    TraceForm z = check_symmetric(*a2, Vec(a2->dim()));
    CHECK(z.verdict == FormVerdict::degenerate);
    CHECK_FALSE(z.radical_vector.empty());
    CHECK_FALSE(find_symmetric_form(*a2, 1).functional);

    auto k = load("k");
    TraceForm tk = check_symmetric(*k, Vec{1});
    CHECK(check_pairing_condition(*k, tk).ok);
}

TEST_CASE("a non-symmetric functional is reported with a witness") {
    auto a2 = load("a2");
    Vec lambda(a2->dim());
    lambda[a2->find_label("a")] = 1;
    TraceForm t = check_symmetric(*a2, lambda);
    CHECK(t.verdict == FormVerdict::not_symmetric);
    CHECK(t.witness.first >= 0);
}

TEST_CASE("tilde extension") {
    auto k = load("k");
    auto kt = testing::tilde(k);
    auto a2 = load("a2");
    // K~ is A2: e_1 -> e_1, e_1~ -> e_2, t_1 -> a
    std::vector<SparseVec> images(kt->dim());
    images[kt->find_label("e_1")] = {{a2->find_label("e_1"), 1}};
    images[kt->find_label("e_1~")] = {{a2->find_label("e_2"), 1}};
    images[kt->find_label("t_1")] = {{a2->find_label("a"), 1}};
    CHECK(verify_algebra_map(*kt, *a2, images).ok);

    auto a2t = testing::tilde(a2);
    CHECK(a2t->num_vertices() == 4);
    CHECK(a2t->dim() == 8);
    auto dt = testing::tilde(load("d"));
    CHECK(dt->num_vertices() == 2);
    CHECK(dt->dim() == 5);
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        CAPTURE(name);
        auto a = load(name);
        auto t = testing::tilde(a);
        TildeCertificate c = certify_tilde(*a, *t);
        CHECK(c.ok());
        CHECK(c.nilpotency_degree == a->filtration_length() + 1);
        CHECK(t->filtration_length() == a->filtration_length() + 1);
    }
}

TEST_CASE("trivial extension") {
    auto k = load("k");
    auto te = trivial_extension_finite(*k);
    CHECK(te.dim() == 2);
    auto d = load("d");
    std::vector<SparseVec> images(te.dim());
    images[te.find_label("e_1")] = {{d->find_label("e_1"), 1}};
    images[te.find_label("e_1*")] = {{d->find_label("x"), 1}};
    CHECK(verify_algebra_map(te, *d, images).ok);

    auto a2te = trivial_extension_finite(*load("a2"));
    CHECK(a2te.dim() == 6);
    TraceForm t = check_symmetric(a2te, canonical_trace(a2te));
    CHECK(t.verdict == FormVerdict::ok);
    CHECK(t.rank == 6);

    auto dte = trivial_extension_finite(*d);
    GradedDims g = graded_components(dte);
    CHECK(g.lowest == 0);
    REQUIRE(g.dims.size() == 2);
    CHECK(g.dims[0] == 2);
    CHECK(dte.element(dte.find_label("x*")).grade == 0);
    CHECK(dte.element(dte.find_label("e_1*")).grade == 1);
}

TEST_CASE("every trivial extension is symmetric under the canonical form") {
    for (const char* name : {"k", "d", "n3", "a2", "a2-corrupt", "line3"}) {
        CAPTURE(name);
        auto te = trivial_extension_finite(*load(name));
        CHECK(check_symmetric(te, canonical_trace(te)).verdict == FormVerdict::ok);
        CHECK(graded_components(te).lowest >= 0);
    }
}

TEST_CASE("tilde extension followed by the idempotent quotient returns A") {
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        CAPTURE(name);
        auto a = load(name);
        auto t = testing::tilde(a);
        std::vector<SparseVec> gens;
        for (int v = 0; v < t->num_vertices(); ++v)
            if (t->vertices()[v].tilde) gens.push_back({{t->unit(v), 1}});
        Subquotient q = quotient_algebra(*t, ideal_generated(*t, gens));
        CHECK(q.algebra.dim() == a->dim());
        CHECK(verify_algebra_map(q.algebra, *a, label_matching(q.algebra, *a)).ok);
    }
}
