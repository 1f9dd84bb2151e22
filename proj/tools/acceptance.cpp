// One PASS/FAIL line per acceptance criterion. Exit status is 0 only when
// every criterion passes.

#include "qhe/borel.hpp"
#include "qhe/envelope.hpp"
#include "qhe/errors.hpp"
#include "qhe/example.hpp"
#include "qhe/extensions.hpp"
#include "qhe/kernels.hpp"
#include "qhe/pipeline.hpp"
#include "qhe/qh.hpp"
#include "qhe/trace_form.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#ifndef QHE_CORPUS_DIR
#define QHE_CORPUS_DIR "corpus"
#endif

using namespace qhe;

namespace {

// pinned limits
constexpr double kExampleSeconds = 5.0;
constexpr double kQHSeconds = 60.0;
constexpr std::size_t kSampledTriples = 10000;
constexpr int kWindowFactor = 4;     // half-width w = 4N
constexpr std::size_t kOracleObjects = 12;

std::string corpus_dir = QHE_CORPUS_DIR;
std::string path_of(const std::string& name) { return corpus_dir + "/" + name + ".json"; }
AlgebraPtr load(const std::string& name) { return load_algebra(path_of(name)).algebra; }

AlgebraPtr tilde(const AlgebraPtr& a) { return std::make_shared<const FiniteDimAlgebra>(tilde_extension(*a)); }

WindowedCategory C_at(const AlgebraPtr& a) {
    const int N = a->filtration_length();
    return build_C(a, Window::symmetric(kWindowFactor * N, N));
}

struct DPair {
    AlgebraPtr tilde;
    WindowedCategory c, d;
};
DPair D_at(const AlgebraPtr& a) {
    DPair p;
    p.tilde = tilde(a);
    p.c = C_at(p.tilde);
    p.d = build_D(p.c);
    return p;
}

const std::vector<std::string> kCorpus{"k", "d", "n3", "a2", "line3", "a2-corrupt"};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failure;
    void fail(const std::string& why) {
        if (pass) failure = why;
        pass = false;
    }
};

int failures = 0;

void criterion(int n, const char* title, double limit, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs >= limit) o.fail("runtime over the limit");
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %s [%.2f s", n, o.pass ? "PASS" : "FAIL", title, secs);
    if (limit > 0) std::printf(", limit %.0f s", limit);
    std::printf("]");
    std::string d = o.detail.str();
    if (!d.empty()) std::printf(" %s", d.c_str());
    if (!o.pass) std::printf(" -- %s", o.failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

void info(const std::string& line) {
    std::printf("             INFO  %s\n", line.c_str());
    std::fflush(stdout);
}

// -- criteria --------------------------------------------------------------

void golden_example(Outcome& o) {
    ExampleRun run = run_example_a2(corpus_dir);
    for (const char* key : {"C(A2)", "C(K~)", "D(K~) generators", "D(K~) dotted products"})
        if (!run.report[key]["ok"].get<bool>())
            o.fail(std::string(key) + ": " + run.report[key].value("failure", std::string("mismatch")));
    if (!run.pass) o.fail("example verdict FAIL");
    o.detail << "dotted pairs " << run.report["D(K~) dotted products"]["pairs_checked"].get<int>();
}

void quasi_hereditary(Outcome& o) {
    int certs = 0;
    for (const char* name : {"k", "d", "n3", "a2"}) {
        WindowedCategory c = C_at(load(name));
        for (OrderBase b : {OrderBase::first, OrderBase::second}) {
            QHContext q = make_context(c, {b, false});
            for (Side s : {Side::left, Side::right}) {
                QHCertificate cert = certify_quasi_hereditary(q, s);
                ++certs;
                if (!cert.pass) o.fail(std::string("C(") + name + ") " + cert.order + " " + cert.side + ": " +
                                       cert.failure);
            }
        }
    }
    for (const char* name : {"k", "d", "a2"}) {
        DPair p = D_at(load(name));
        for (OrderBase b : {OrderBase::first, OrderBase::second}) {
            QHContext q = make_context(p.d, {b, true});
            for (Side s : {Side::left, Side::right}) {
                QHCertificate cert = certify_quasi_hereditary(q, s);
                ++certs;
                if (!cert.pass) o.fail(std::string("D(") + name + "~) " + cert.order + " " + cert.side + ": " +
                                       cert.failure);
            }
        }
    }
    o.detail << certs << " certificates";
}

void symmetry(Outcome& o) {
    std::size_t blocks = 0;
    for (const char* name : {"d", "n3"}) {
        LoadedAlgebra in = load_algebra(path_of(name));
        auto lambda = trace_functional(in.presentation, *in.algebra);
        if (!lambda) {
            o.fail(std::string(name) + ": no trace entry");
            continue;
        }
        TraceForm t = check_symmetric(*in.algebra, *lambda);
        FormCertificate f = form_on_C(C_at(in.algebra), t, kSampledTriples, in.digest);
        for (const auto& b : f.blocks) {
            ++blocks;
            if (!b.nondegenerate()) o.fail(std::string("C(") + name + ") degenerate block");
        }
        if (!f.ok) o.fail(std::string("C(") + name + "): " + f.failure);
    }
    for (const auto& name : kCorpus) {
        DPair p = D_at(load(name));
        FormCertificate f = form_on_D(p.d, kSampledTriples, file_digest(path_of(name)));
        for (const auto& b : f.blocks) {
            ++blocks;
            if (!b.nondegenerate()) o.fail("D(" + name + "~) degenerate block");
        }
        if (!f.ok || !f.formula_ok) o.fail("D(" + name + "~): " + f.failure);
    }
    o.detail << blocks << " slot blocks at exact rank";
}

std::vector<std::string> shift_scans;

// Checks the stated shift N and records the shifts that actually hold.
void costandard_shift(Outcome& o) {
    int checked = 0, held = 0;
    std::ostringstream first_bad;
    for (const auto& name : kCorpus) {
        WindowedCategory c = C_at(load(name));
        const int N = c.N;
        QHContext q = make_context(c, {OrderBase::first, false});
        for (int obj : q.certified) {
            const Object& ob = c.objects[obj];
            int shifted = c.object(ob.vertex, ob.level + N);
            if (shifted < 0 || !c.interior(shifted)) continue;
            ++checked;
            IsoCertificate iso = check_cor25(c, obj, N);
            if (iso.ok)
                ++held;
            else if (first_bad.tellp() == 0)
                first_bad << name << " at " << c.object_name(obj) << ": " << iso.failure;
        }
        std::vector<int> scan = cor25_shift_scan(c, c.object(0, 0));
        std::ostringstream s;
        s << name << " N=" << N << " holds at shift {";
        for (std::size_t i = 0; i < scan.size(); ++i) s << (i ? "," : "") << scan[i];
        s << "}";
        shift_scans.push_back(s.str());
    }
    o.detail << "shift N holds at " << held << "/" << checked << " indices";
    if (held != checked) o.fail(first_bad.str());
}

void costandard_shift_corrected() {
    int checked = 0, held = 0;
    for (const auto& name : kCorpus) {
        WindowedCategory c = C_at(load(name));
        const int N = c.N;
        QHContext q = make_context(c, {OrderBase::first, false});
        for (int obj : q.certified) {
            const Object& ob = c.objects[obj];
            int shifted = c.object(ob.vertex, ob.level + N - 1);
            if (shifted < 0 || !c.interior(shifted)) continue;
            ++checked;
            held += check_cor25(c, obj, N - 1).ok;
        }
    }
    std::ostringstream s;
    s << "corrected shift N-1 holds at " << held << "/" << checked << " indices, every corpus algebra";
    info(s.str());
}

void extension_structure(Outcome& o) {
    int n = 0;
    for (const char* name : {"k", "a2"}) {
        DPair p = D_at(load(name));
        QHContext q = make_context(p.d, {OrderBase::first, true});
        for (int obj : q.certified) {
            Lemma6Certificate l = verify_lemma6(p.c, p.d, obj);
            ++n;
            if (!l.ok) o.fail(std::string(name) + " at " + p.d.object_name(obj) + ": " + l.failure);
            if (l.dim_D != l.dim_delta + l.dim_nabla)
                o.fail(std::string(name) + " at " + p.d.object_name(obj) + ": dimensions not additive");
        }
    }
    o.detail << n << " standards";
}

void subquotient(Outcome& o) {
    for (const char* name : {"k", "d", "a2"}) {
        AlgebraPtr a = load(name);
        DPair p = D_at(a);
        SubquotientCertificate sq = subquotient_recovery(p.d, 0, *a);
        if (!sq.ok || !sq.quotient_is_A || !sq.corner_is_trivial_extension)
            o.fail(std::string(name) + ": " + sq.stage + " " + sq.failure);
        o.detail << (o.detail.tellp() ? "; " : "") << name << " corner " << sq.corner_dim << " quotient " << sq.quotient_dim;
    }
}

void check_triangular(Outcome& o, const TriangularCertificate& t, const std::string& what) {
    if (!t.ok) o.fail(what + ": " + t.failure);
    for (const auto& s : t.slots) {
        if (s.rank != s.ambient_dim) o.fail(what + ": multiplication map not bijective");
        if (s.tensor_dim != s.ambient_dim) o.fail(what + ": dimension convolution mismatch");
    }
}

void triangular(Outcome& o) {
    std::size_t slots = 0;
    for (const char* name : {"k", "d", "a2"}) {
        AlgebraPtr a = load(name);
        WindowedCategory c = C_at(a);
        TriangularCertificate t = triangular_decomposition(build_tildeB(c), build_B_graded(c), build_S(c));
        check_triangular(o, t, std::string("C(") + name + ")");
        slots += t.slots.size();
        DPair p = D_at(a);
        TriangularCertificate td = triangular_decomposition(build_tildeB(p.d), build_Bbar(p.d), build_S(p.d));
        check_triangular(o, td, std::string("D(") + name + "~)");
        slots += td.slots.size();
    }
    o.detail << slots << " slots";
}

void borel(Outcome& o) {
    std::size_t inductions = 0;
    for (const char* name : {"k", "d", "n3", "a2", "line3"}) {
        AlgebraPtr a = load(name);
        WindowedCategory c = C_at(a);
        DPair p = D_at(a);
        for (int ord = 0; ord < 2; ++ord) {
            BorelSuite s = ord == 0 ? first_order_suite(c, &p.d) : second_order_suite(c, &p.d);
            if (!s.pass) o.fail(std::string(name) + ": " + s.failure);
            for (const auto& cert : s.certificates) {
                for (const auto& i : cert.inductions) {
                    ++inductions;
                    if (!i.exact) o.fail(std::string(name) + ": " + cert.subalgebra + " induction not exact");
                }
                for (const auto& i : cert.dual_checks) {
                    ++inductions;
                    if (!i.exact) o.fail(std::string(name) + ": " + cert.subalgebra + " dual check not exact");
                }
            }
        }
    }
    o.detail << inductions << " induced simples";
}

WindowedCategory oracle_window(const AlgebraPtr& a) {
    const int N = a->filtration_length();
    Window w;
    w.lo = 0;
    w.hi = static_cast<int>(kOracleObjects) / a->num_vertices() - 1;
    w.N = N;
    w.margin = 2 * N - 2;
    return build_C(a, w);
}

void oracle(Outcome& o) {
    std::size_t compared = 0;
    for (const char* name : {"k", "d", "n3", "a2"}) {
        WindowedCategory c = oracle_window(load(name));
        if (c.objects.size() > kOracleObjects) o.fail(std::string(name) + ": window too large");
        for (OrderBase b : {OrderBase::first, OrderBase::second}) {
            QHContext q = make_context(c, {b, false});
            if (q.certified.empty()) o.fail(std::string(name) + ": no certified objects");
            for (Side s : {Side::left, Side::right}) {
                StandardCache sc(q, s);
                for (int obj : q.certified) {
                    ModuleRep P = projective(c, s, obj);
                    DeltaFiltration g = delta_filtration(P, q, sc);
                    ExhaustiveResult ex = exhaustive_delta_filtrations(P, q, sc);
                    std::vector<int> f = g.factors;
                    std::sort(f.begin(), f.end());
                    ++compared;
                    if (!g.ok || ex.dead_ends || ex.multisets.size() != 1 || ex.multisets[0] != f)
                        o.fail(std::string(name) + ": greedy and exhaustive differ at " + c.object_name(obj));
                }
                for (int obj : untruncated_vertices(q)) {
                    ModuleRep D = standard_module(q, s, obj);
                    if (radical_layers(D, true) != radical_layers(D, false))
                        o.fail(std::string(name) + ": composition series differ at " + c.object_name(obj));
                }
            }
        }
    }
    o.detail << compared << " projectives";
}

void structural(Outcome& o) {
    std::size_t sampled = 0;
    for (const auto& name : kCorpus) {
        AlgebraPtr a = load(name);
        const int N = a->filtration_length();
        WindowedCategory small = build_C(a, Window::symmetric(2 * N + 1, N));
        if (!band_check(small).ok) o.fail(name + ": band (small)");
        if (!shift_check(small).ok) o.fail(name + ": shift (small)");
        if (!lift_independence_check(small).ok) o.fail(name + ": lift independence (small)");
        if (!ideal_J_check(a, Window::symmetric(N + 1, N)).ok) o.fail(name + ": J ideal");
        if (check_associativity(*small.alg, all_triples(*small.alg), Exec::parallel).failures)
            o.fail(name + ": associativity (exhaustive)");

        WindowedCategory c = C_at(a);
        auto triples = sample_triples(*c.alg, kSampledTriples, file_digest(path_of(name)));
        sampled += triples.size();
        if (triples.size() < kSampledTriples) o.fail(name + ": too few sampled triples");
        if (check_associativity(*c.alg, triples, Exec::parallel).failures) o.fail(name + ": associativity (sampled)");
        if (!band_check(c).ok) o.fail(name + ": band");
        if (!shift_check(c).ok) o.fail(name + ": shift");
        if (!lift_independence_check(c).ok) o.fail(name + ": lift independence");
    }
    o.detail << sampled << " sampled triples";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) corpus_dir = argv[1];
    std::printf("acceptance run, corpus %s, %d thread(s)\n", corpus_dir.c_str(), available_threads());
    criterion(1, "golden example presentation", kExampleSeconds, golden_example);
    criterion(2, "quasi-heredity in both orders", kQHSeconds, quasi_hereditary);
    criterion(3, "symmetric forms non-degenerate", 0, symmetry);
    criterion(4, "costandard/standard isomorphism at shift N", 0, costandard_shift);
    for (const auto& s : shift_scans) info("shift scan: " + s);
    costandard_shift_corrected();
    criterion(5, "extension structure of D-standards", 0, extension_structure);
    criterion(6, "idempotent subquotient recovers A", 0, subquotient);
    criterion(7, "triangular decomposition", 0, triangular);
    criterion(8, "Borel induction", 0, borel);
    criterion(9, "oracle equivalence", 0, oracle);
    criterion(10, "structural suite", 0, structural);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
