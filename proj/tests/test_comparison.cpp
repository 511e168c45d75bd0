#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "frameopt/comparison.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/frame.hpp"
#include "helpers.hpp"

using namespace frameopt;

namespace {

// Long-double recomputation of the three expected errors from first
// principles, independent of the library code paths.
struct OracleTriple {
    double e_cm, e_pm, e_rpm;
};

OracleTriple oracle_triple(const std::vector<double>& sorted_p, int n) {
    const int m = static_cast<int>(sorted_p.size());
    std::vector<long double> w(sorted_p.size());
    long double w_sum = 0.0L;
    for (int i = 0; i < m; ++i) {
        long double prod = sorted_p[static_cast<std::size_t>(i)];
        for (int k = 0; k < m; ++k)
            if (k != i) prod *= 1.0L - static_cast<long double>(sorted_p[static_cast<std::size_t>(k)]);
        w[static_cast<std::size_t>(i)] = prod;
        w_sum += prod;
    }
    const long double p_sum =
        std::accumulate(sorted_p.begin(), sorted_p.end(), 0.0L,
                        [](long double acc, double v) { return acc + v; });

    long double e_cm = 0.0L, e_pm = 0.0L;
    for (int i = 0; i < m; ++i) {
        e_cm += w[static_cast<std::size_t>(i)] * (static_cast<long double>(n) / m);
        e_pm += w[static_cast<std::size_t>(i)] * (static_cast<long double>(n) / (m - 1)) *
                (1.0L - sorted_p[static_cast<std::size_t>(i)] / p_sum);
    }

    // pinned count by brute scan, then the equalized profile
    int d = 0;
    long double full_inv = 0.0L;
    for (int k = 0; k < m; ++k) full_inv += 1.0L / w[static_cast<std::size_t>(k)];
    if (w[0] < static_cast<long double>(n) / full_inv) {
        for (int j = 1; j <= m; ++j) {
            long double tail = 0.0L;
            for (int k = j; k < m; ++k) tail += 1.0L / w[static_cast<std::size_t>(k)];
            if (w[static_cast<std::size_t>(j - 1)] * tail < static_cast<long double>(n - j)) d = j;
        }
    }
    long double tail_inv = 0.0L;
    for (int k = d; k < m; ++k) tail_inv += 1.0L / w[static_cast<std::size_t>(k)];
    const long double level = static_cast<long double>(n - d) / tail_inv;
    long double e_rpm = 0.0L;
    for (int i = 0; i < m; ++i)
        e_rpm += i < d ? w[static_cast<std::size_t>(i)] : level;
    return {static_cast<double>(e_cm / w_sum), static_cast<double>(e_pm / w_sum),
            static_cast<double>(e_rpm / w_sum)};
}

}  // namespace

TEST_CASE("model norm profiles") {
    CHECK(norms_cm(4, 2) == std::vector<double>(4, 0.5));
    CHECK(norms_cm(3, 3) == std::vector<double>(3, 1.0));
    for (double v : norms_cm(3, 2)) CHECK_NEAR(v, 2.0 / 3.0, 1e-15);
    CHECK_THROWS_AS(norms_cm(2, 3), std::invalid_argument);

    const ErasureDistribution uniform(std::vector<double>(4, 0.2));
    for (double v : norms_pm(uniform, 2)) CHECK_NEAR(v, 0.5, 1e-14);

    const ErasureDistribution skew({0.01, 0.5, 0.5});
    const auto pm = norms_pm(skew, 2);
    CHECK_NEAR(pm[0], 1.0 - 0.01 / 1.01, 1e-14);  // 0.990099...
    CHECK_NEAR(pm[1], 1.0 - 0.5 / 1.01, 1e-14);   // 0.504950...
    CHECK_NEAR(pm[2], pm[1], 1e-15);

    std::mt19937_64 eng(51);
    for (int it = 0; it < 100; ++it) {
        const int m = testutil::irand(eng, 2, 10);
        const int n = testutil::irand(eng, 1, m);
        const ErasureDistribution dist(testutil::random_probs(eng, m));
        const auto v = norms_pm(dist, n);
        CHECK_NEAR(std::accumulate(v.begin(), v.end(), 0.0), n, 1e-10);
        const auto rpm = norms_rpm(dist, n);
        CHECK_NEAR(std::accumulate(rpm.begin(), rpm.end(), 0.0), n, 1e-10);
    }
}

TEST_CASE("expected one-erasure error") {
    const ErasureDistribution skew({0.01, 0.5, 0.5});
    // uniform profile always lands on n/m
    CHECK_NEAR(expected_one_erasure_error(norms_cm(3, 2), skew), 2.0 / 3.0, 1e-14);

    const ErasureDistribution uniform(std::vector<double>(4, 0.35));
    CHECK_NEAR(expected_one_erasure_error(norms_pm(uniform, 2), uniform), 0.5, 1e-14);

    CHECK_NEAR(expected_one_erasure_error(norms_rpm(skew, 2), skew), 0.502513, 1e-6);
    CHECK_NEAR(expected_one_erasure_error(norms_pm(skew, 2), skew), 0.507389, 1e-6);

    CHECK_THROWS_AS(expected_one_erasure_error(norms_cm(4, 2), skew), std::invalid_argument);
}

TEST_CASE("model comparison: worked instance") {
    const ErasureDistribution skew({0.01, 0.5, 0.5});
    const auto report = compare_models(skew, 2);
    CHECK(report.index == 1);
    CHECK_NEAR(report.e_rpm, 0.502513, 1e-6);
    CHECK_NEAR(report.e_pm, 0.507389, 1e-6);
    CHECK_NEAR(report.e_cm, 2.0 / 3.0, 1e-12);
    CHECK(report.e_rpm < report.e_pm);
    CHECK(report.e_pm < report.e_cm);
    // m = n + 1 kills the gap prefactor
    CHECK(report.gap_lower_bound == 0.0);
    CHECK(report.cor_bound == 0.0);
    CHECK(report.pm_feasible);

    const auto oracle = oracle_triple(skew.probs(), 2);
    CHECK_NEAR(report.e_cm, oracle.e_cm, 1e-12);
    CHECK_NEAR(report.e_pm, oracle.e_pm, 1e-12);
    CHECK_NEAR(report.e_rpm, oracle.e_rpm, 1e-12);
}

TEST_CASE("model comparison: uniform channels collapse the three models") {
    const ErasureDistribution uniform(std::vector<double>(5, 0.25));
    const auto report = compare_models(uniform, 2);
    CHECK_NEAR(report.e_cm, 0.4, 1e-14);
    CHECK_NEAR(report.e_pm, 0.4, 1e-14);
    CHECK_NEAR(report.e_rpm, 0.4, 1e-14);
    CHECK(report.index == 0);
    CHECK(report.gap_lower_bound == 0.0);
    CHECK(report.cor_bound == 0.0);
}

TEST_CASE("model comparison: inequalities over a random corpus") {
    std::mt19937_64 eng(52);
    for (int it = 0; it < 10000; ++it) {
        const int m = testutil::irand(eng, 3, 10);
        const int n = testutil::irand(eng, 2, m - 1);
        const ErasureDistribution dist(testutil::random_probs(eng, m));
        const auto report = compare_models(dist, n);
        const auto oracle = oracle_triple(dist.probs(), n);
        CHECK_NEAR(report.e_cm, oracle.e_cm, 1e-12);
        CHECK_NEAR(report.e_pm, oracle.e_pm, 1e-12);
        CHECK_NEAR(report.e_rpm, oracle.e_rpm, 1e-12);

        CHECK(report.e_pm <= report.e_cm + 1e-12);
        CHECK(report.e_pm - report.e_rpm >= report.gap_lower_bound - 1e-10);
        CHECK(report.gap_lower_bound >= report.cor_bound - 1e-10);
        CHECK(report.cor_bound >= 0.0);
        CHECK(report.e_rpm <= report.e_pm + 1e-12);
        if (report.index >= 1 && m > n + 1) CHECK(report.e_rpm < report.e_pm);  // strict here
        CHECK(report.pm_feasible);  // n < m keeps every PM entry at most n/(m-1) <= 1
    }
}

TEST_CASE("model comparison: PM profile can overshoot 1 when n equals m") {
    const ErasureDistribution skew({0.01, 0.3, 0.9});
    const auto report = compare_models(skew, 3);
    CHECK_FALSE(report.pm_feasible);
    CHECK(*std::max_element(report.norms_pm.begin(), report.norms_pm.end()) > 1.0);
    // the number itself is still reported, not clipped
    CHECK_NEAR(report.norms_pm[0], 3.0 / 2.0 * (1.0 - 0.01 / 1.21), 1e-14);
}

TEST_CASE("one-erasure error: profile route equals enumeration route") {
    std::mt19937_64 eng(53);
    for (int it = 0; it < 100; ++it) {
        const int m = testutil::irand(eng, 3, 8);
        const int n = testutil::irand(eng, 2, m - 1);
        const ErasureDistribution dist(testutil::random_probs(eng, m));
        const auto profile = norms_rpm(dist, n);
        const auto frame = construct_parseval_with_norms(profile, n);
        CHECK_NEAR(expected_one_erasure_error(profile, dist),
                   conditional_expected_error(frame, dist, 1), 1e-10);
    }
}

TEST_CASE("chebyshev gap") {
    CHECK_NEAR(chebyshev_gap(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), 2.0,
               1e-14);
    CHECK_NEAR(chebyshev_gap(std::vector<double>{1, 2}, std::vector<double>{2, 1}), -0.5, 1e-14);
    CHECK(chebyshev_gap(std::vector<double>{4, 4, 4}, std::vector<double>{1, 7, 2}) == 0.0);
    CHECK_THROWS_AS(chebyshev_gap(std::vector<double>{1}, std::vector<double>{1, 2}),
                    std::invalid_argument);

    std::mt19937_64 eng(54);
    for (int it = 0; it < 200; ++it) {
        const int m = testutil::irand(eng, 1, 12);
        std::vector<double> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
        for (auto& x : a) x = testutil::urand(eng, -2.0, 2.0);
        for (auto& x : b) x = testutil::urand(eng, -2.0, 2.0);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(chebyshev_gap(a, b) >= -1e-12);
        std::reverse(b.begin(), b.end());
        CHECK(chebyshev_gap(a, b) <= 1e-12);
    }
}
