#include "qhe/field.hpp"
#include "qhe/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace qhe;

namespace {

Mat random_mat(std::mt19937_64& rng, int r, int c, int lo, int hi, double zero_rate) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::bernoulli_distribution z(zero_rate);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = z(rng) ? 0 : d(rng);
    return m;
}

// Rank as the size of the largest non-vanishing minor, with determinants by
// cofactor expansion: shares no code with the elimination under test.
Scalar det(const Field& f, const std::vector<std::vector<Scalar>>& a) {
    const size_t n = a.size();
    if (n == 0) return f.one();
    if (n == 1) return a[0][0];
    Scalar s = 0;
    for (size_t j = 0; j < n; ++j) {
        if (Field::is_zero(a[0][j])) continue;
        std::vector<std::vector<Scalar>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Scalar> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        Scalar t = f.mul(a[0][j], det(f, minor));
        s = j % 2 ? f.sub(s, t) : f.add(s, t);
    }
    return s;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

int minor_rank(const Field& f, const Mat& m) {
    for (int k = std::min(m.rows(), m.cols()); k > 0; --k) {
        std::vector<std::vector<int>> rs, cs;
        std::vector<int> cur;
        subsets(m.rows(), k, 0, cur, rs);
        subsets(m.cols(), k, 0, cur, cs);
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<Scalar>> a(k, std::vector<Scalar>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) a[i][j] = m(r[i], c[j]);
                if (!Field::is_zero(det(f, a))) return k;
            }
    }
    return 0;
}

}  // namespace

TEST_CASE("field arithmetic over Q and F_p") {
    Field q = Field::rationals();
    CHECK(q.format(q.parse("6/4")) == "3/2");
    CHECK(q.mul(q.parse("2/3"), q.inv(q.parse("2/3"))) == 1);
    Field f5 = Field::prime(5);
    CHECK(f5.from_int(7) == 2);
    CHECK(f5.format(f5.parse("1/2")) == "3");
    CHECK(f5.mul(f5.from_int(3), f5.inv(f5.from_int(3))) == 1);
    CHECK(f5.neg(f5.from_int(1)) == 4);
}

TEST_CASE("rank agrees with the largest non-vanishing minor") {
    std::mt19937_64 rng(7);
    for (const Field& f : {Field::rationals(), Field::prime(3)}) {
        for (int trial = 0; trial < 200; ++trial) {
            int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
            Mat m = random_mat(rng, r, c, -2, 2, 0.4);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m(i, j) = f.reduce(m(i, j));
            CHECK(rank(f, m) == minor_rank(f, m));
        }
    }
}

TEST_CASE("kernel, solve and rref are consistent") {
    std::mt19937_64 rng(11);
    Field q = Field::rationals();
    for (int trial = 0; trial < 100; ++trial) {
        int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 6);
        Mat m = random_mat(rng, r, c, -3, 3, 0.3);
        auto ker = kernel_basis(q, m);
        CHECK(static_cast<int>(ker.size()) + rank(q, m) == c);
        for (const auto& v : ker) CHECK(is_zero(apply(q, m, v)));
        Vec x(c);
        for (auto& e : x) e = static_cast<int>(rng() % 5) - 2;
        Vec b = apply(q, m, x);
        auto y = solve(q, m, b);
        REQUIRE(y);
        CHECK(apply(q, m, *y) == b);
        RrefResult rr = rref(q, m);
        for (int k = 0; k < rr.rank(); ++k) {
            CHECK(rr.reduced(k, rr.pivots[k]) == 1);
            for (int i = 0; i < rr.reduced.rows(); ++i)
                if (i != k) CHECK(rr.reduced(i, rr.pivots[k]) == 0);
        }
    }
}

TEST_CASE("inconsistent systems have no solution") {
    Field q = Field::rationals();
    Mat m(2, 1);
    m(0, 0) = 1;
    m(1, 0) = 1;
    CHECK_FALSE(solve(q, m, Vec{1, 2}));
}

TEST_CASE("echelon spans are canonical") {
    Field q = Field::rationals();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec> vs;
        for (int k = 0; k < 3; ++k) {
            Vec v(5);
            for (auto& e : v) e = static_cast<int>(rng() % 5) - 2;
            vs.push_back(v);
        }
        Echelon a = span_of(q, 5, vs);
        // same span from shuffled, rescaled and mixed generators
        std::vector<Vec> ws = {vs[2], vs[0], vs[1]};
        for (auto& e : ws[0]) e *= 3;
        for (int i = 0; i < 5; ++i) ws[1][i] += ws[2][i];
        Echelon b = span_of(q, 5, ws);
        CHECK(a == b);
        for (const auto& v : vs) CHECK(a.contains(q, v));
        auto co = a.coordinates(q, vs[0]);
        REQUIRE(co);
        Vec back(5);
        for (int k = 0; k < a.rank(); ++k)
            for (int i = 0; i < 5; ++i) back[i] += (*co)[k] * a.rows()[k][i];
        CHECK(back == vs[0]);
    }
    Echelon x = span_of(q, 3, {{1, 0, 0}, {0, 1, 0}});
    Echelon y = span_of(q, 3, {{0, 1, 0}, {0, 0, 1}});
    Echelon z = intersect(q, x, y);
    CHECK(z.rank() == 1);
    CHECK(z.contains(q, {0, 1, 0}));
}
