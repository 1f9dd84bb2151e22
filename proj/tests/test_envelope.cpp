#include "qhe/envelope.hpp"
#include "qhe/errors.hpp"
#include "qhe/kernels.hpp"
#include "qhe/module.hpp"
#include "qhe/trace_form.hpp"

#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace qhe;
using testing::load;

namespace {

const char* const kCorpus[] = {"k", "d", "n3", "a2", "line3", "a2-corrupt"};

// dim hom((x,i),(y,j)) straight from the levels of the base basis.
int expected_hom(const FiniteDimAlgebra& a, int x, int i, int y, int j) {
    const int N = a.filtration_length();
    int n = 0;
    for (int b : a.hom(x, y)) {
        int lvl = a.element(b).level;
        if (j > i && lvl >= j - i) ++n;
        if (j == i) ++n;
        if (j < i && i - j < N && lvl < N - (i - j)) ++n;
    }
    return n;
}

std::uint64_t seed_of(const char* name) { return file_digest(testing::corpus(name)); }

}  // namespace

TEST_CASE("hom spaces follow the slot formula") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        auto a = load(name);
        const int N = a->filtration_length();
        WindowedCategory c = build_C(a, Window::symmetric(2 * N + 1, N));
        for (int x = 0; x < static_cast<int>(c.objects.size()); ++x)
            for (int y = 0; y < static_cast<int>(c.objects.size()); ++y) {
                const Object& ox = c.objects[x];
                const Object& oy = c.objects[y];
                CHECK(static_cast<int>(c.alg->hom(x, y).size()) ==
                      expected_hom(*a, ox.vertex, ox.level, oy.vertex, oy.level));
            }
    }
}

TEST_CASE("small windows") {
    auto k = load("k");
    Window w = testing::small_window(5, 1, 0);
    WindowedCategory ck = build_C(k, w);
    CHECK(ck.alg->dim() == 5);
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y)
            if (x != y) CHECK(ck.alg->hom(x, y).empty());

    auto d = load("d");
    WindowedCategory cd = build_C(d, testing::small_window(3, 2, 0));
    CHECK(cd.alg->dim() == 10);
    CHECK(cd.alg->hom(cd.object(0, 1), cd.object(0, 1)).size() == 2);
    CHECK(cd.alg->hom(cd.object(0, 1), cd.object(0, 2)).size() == 1);
    CHECK(cd.alg->hom(cd.object(0, 1), cd.object(0, 0)).size() == 1);

    auto a2 = load("a2");
    WindowedCategory ca = build_C(a2, testing::small_window(3, 2, 0));
    CHECK(ca.alg->hom(ca.object(0, 1), ca.object(0, 1)).size() == 1);
}

TEST_CASE("band, shift, lift independence and J at small windows") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        auto a = load(name);
        const int N = a->filtration_length();
        WindowedCategory c = build_C(a, Window::symmetric(2 * N + 1, N));
        CHECK(band_check(c).ok);
        CHECK(shift_check(c).ok);
        CHECK(lift_independence_check(c).ok);
        CHECK(ideal_J_check(a, Window::symmetric(N + 1, N)).ok);
        CHECK(check_structure(*c.alg).empty());
        CHECK(check_associativity(*c.alg, all_triples(*c.alg), Exec::parallel).failures == 0);
    }
    // the lift check is not vacuous where down slots meet the ideal
    auto d = load("d");
    CHECK(lift_independence_check(build_C(d, Window::symmetric(5, 2))).checked > 0);
}

TEST_CASE("sampled associativity at w = 4N") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        WindowedCategory c = testing::C_at(load(name));
        auto triples = sample_triples(*c.alg, 10000, seed_of(name));
        CHECK(triples.size() >= 10000);
        CHECK(check_associativity(*c.alg, triples, Exec::parallel).failures == 0);
        CHECK(band_check(c).ok);
        CHECK(shift_check(c).ok);
        CHECK(lift_independence_check(c).ok);
    }
}

TEST_CASE("a dropped basis element breaks shift invariance") {
    WindowedCategory c = testing::C_at(load("d"));
    int victim = -1;
    for (int b = 0; b < c.alg->dim() && victim < 0; ++b)
        if (c.alg->element(b).radical && c.interior(c.alg->element(b).source)) victim = b;
    REQUIRE(victim >= 0);
    CHECK_FALSE(shift_check(corrupt_drop_element(c, victim)).ok);
}

TEST_CASE("serial and parallel construction agree") {
    for (const char* name : {"d", "a2", "n3"}) {
        CAPTURE(name);
        auto a = load(name);
        const int N = a->filtration_length();
        Window w = Window::symmetric(4 * N, N);
        WindowedCategory s = build_C(a, w, Exec::serial);
        WindowedCategory p = build_C(a, w, Exec::parallel);
        CHECK(to_json(s).dump() == to_json(p).dump());
        CHECK(to_json(build_D(s, Exec::serial)).dump() == to_json(build_D(p, Exec::parallel)).dump());
        auto t = sample_triples(*s.alg, 2000, 5);
        auto rs = check_associativity(*s.alg, t, Exec::serial);
        auto rp = check_associativity(*s.alg, t, Exec::parallel);
        CHECK(rs.checked == rp.checked);
        CHECK(rs.failures == rp.failures);
    }
}

TEST_CASE("restricted dual and D") {
    auto d = load("d");
    WindowedCategory c = testing::C_at(d);
    RestrictedDual rd = restricted_dual(c);
    int o = c.object(0, 0);
    CHECK(rd.slot_dim(o, o) == 2);
    for (const char* name : kCorpus) {
        CAPTURE(name);
        auto p = testing::D_at(load(name));
        CHECK(check_restricted_dual(p.c, p.d, 10000, seed_of(name)).ok);
        CHECK(p.d.alg->dim() == 2 * p.c.alg->dim());
        CHECK(band_check(p.d).ok);
        CHECK(shift_check(p.d).ok);
        CHECK(check_associativity(*p.d.alg, sample_triples(*p.d.alg, 10000, seed_of(name)), Exec::parallel)
                  .failures == 0);
    }
    // over C(K) every object of D carries a copy of D
    WindowedCategory ck = testing::C_at(load("k"));
    WindowedCategory dk = build_D(ck);
    int x = dk.object(0, 0);
    CHECK(dk.alg->hom(x, x).size() == 2);
}

TEST_CASE("dual basis elements run opposite to their originals") {
    WindowedCategory c = testing::C_at(load("a2"));
    WindowedCategory d = build_D(c);
    for (int b = 0; b < d.alg->dim(); ++b) {
        const CatLabel& l = d.labels[b];
        if (l.part != Part::dual) continue;
        int cb = c.find({l.base, Part::C, l.src, l.dst});
        REQUIRE(cb >= 0);
        CHECK(d.alg->element(b).source == c.alg->element(cb).target);
        CHECK(d.alg->element(b).target == c.alg->element(cb).source);
    }
}

TEST_CASE("form on C for the rigid symmetric inputs") {
    for (const char* name : {"d", "n3"}) {
        CAPTURE(name);
        LoadedAlgebra in = load_algebra(testing::corpus(name));
        auto lambda = trace_functional(in.presentation, *in.algebra);
        REQUIRE(lambda);
        TraceForm t = check_symmetric(*in.algebra, *lambda);
        REQUIRE(t.verdict == FormVerdict::ok);
        WindowedCategory c = testing::C_at(in.algebra);
        FormCertificate f = form_on_C(c, t, 10000, in.digest);
        CHECK(f.ok);
        CHECK(f.associativity.checked >= 10000);
        CHECK(f.associativity.failures == 0);
        CHECK_FALSE(f.blocks.empty());
        for (const auto& b : f.blocks) {
            CHECK(b.nondegenerate());
            CHECK(b.symmetric);
        }
    }
    auto d = load("d");
    TraceForm t = check_symmetric(*d, functional_from_labels(*d, {{"x", 1}}));
    FormCertificate f = form_on_C(testing::C_at(d), t, 100, 1);
    std::set<int> sizes;
    for (const auto& b : f.blocks) sizes.insert(b.rows);
    CHECK(sizes == std::set<int>{1, 2});
}

TEST_CASE("form on C needs the pairing condition") {
    auto a2 = load("a2");
    TraceForm t = check_symmetric(*a2, Vec(a2->dim()));
    try {
        form_on_C(testing::C_at(a2), t, 10, 1);
        FAIL("expected PreconditionUnmet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
}

TEST_CASE("canonical form on D is non-degenerate for every corpus input") {
    for (const char* name : kCorpus) {
        CAPTURE(name);
        auto p = testing::D_at(load(name));
        FormCertificate f = form_on_D(p.d, 10000, seed_of(name));
        CHECK(f.ok);
        CHECK(f.formula_ok);
        CHECK(f.associativity.failures == 0);
        for (const auto& b : f.blocks) CHECK(b.nondegenerate());
    }
}

TEST_CASE("representable modules") {
    auto d = load("d");
    WindowedCategory c = testing::C_at(d);
    int o = c.object(0, 0);
    auto dims = level_dims(c, projective(c, Side::right, o));
    const int at = 0 - c.window.lo;
    CHECK(dims[at - 1][0] == 1);
    CHECK(dims[at][0] == 2);
    CHECK(dims[at + 1][0] == 1);
    int total = 0;
    for (const auto& l : dims) total += l[0];
    CHECK(total == 4);

    WindowedCategory ck = testing::C_at(load("k"));
    CHECK(projective(ck, Side::left, ck.object(0, 0)).total_dim() == 1);

    int edge = c.object(0, c.window.lo);
    try {
        projective(c, Side::left, edge);
        FAIL("expected BoundaryTruncated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::boundary_truncated);
    }
}

TEST_CASE("projectives of D are injective at interior objects") {
    for (const char* name : {"k", "d", "a2"}) {
        CAPTURE(name);
        auto p = testing::D_at(load(name));
        for (int o = 0; o < static_cast<int>(p.d.objects.size()); ++o) {
            if (!p.d.interior(o)) continue;
            for (Side s : {Side::left, Side::right}) {
                ModuleRep P = projective(p.d, s, o);
                ModuleRep I = injective(p.d, s, o);
                CHECK(P.dims() == I.dims());
                CHECK(find_isomorphism(P, I));
            }
        }
    }
}
