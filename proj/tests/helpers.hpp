#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "frameopt/frame.hpp"
#include "frameopt/linalg.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace testutil {

inline double urand(std::mt19937_64& eng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(eng);
}

inline int irand(std::mt19937_64& eng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(eng);
}

inline frameopt::Matrix random_matrix(std::mt19937_64& eng, std::size_t rows, std::size_t cols,
                                      double lo = -1.0, double hi = 1.0) {
    frameopt::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = urand(eng, lo, hi);
    return m;
}

inline frameopt::SymmetricMatrix random_symmetric(std::mt19937_64& eng, std::size_t n) {
    return frameopt::SymmetricMatrix(random_matrix(eng, n, n));
}

inline frameopt::SymmetricMatrix random_psd(std::mt19937_64& eng, std::size_t n) {
    const auto m = random_matrix(eng, n, n);
    return frameopt::SymmetricMatrix(m.transposed() * m);
}

inline frameopt::Frame random_frame(std::mt19937_64& eng, int m, int n) {
    for (;;) {
        try {
            return frameopt::Frame(
                random_matrix(eng, static_cast<std::size_t>(m), static_cast<std::size_t>(n)));
        } catch (const std::invalid_argument&) {
            // rank-deficient draw; try again
        }
    }
}

inline std::vector<double> random_probs(std::mt19937_64& eng, int m, double lo = 0.01,
                                        double hi = 0.99) {
    std::vector<double> p(static_cast<std::size_t>(m));
    for (auto& x : p) x = urand(eng, lo, hi);
    return p;
}

/// Uniform point on { x >= 0, sum x = total } via sorted-uniform spacings.
inline std::vector<double> simplex_point(std::mt19937_64& eng, int m, double total) {
    std::vector<double> cuts(static_cast<std::size_t>(m - 1));
    for (auto& c : cuts) c = urand(eng, 0.0, 1.0);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> out(static_cast<std::size_t>(m));
    double prev = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        out[static_cast<std::size_t>(i)] = (cuts[static_cast<std::size_t>(i)] - prev) * total;
        prev = cuts[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(m - 1)] = (1.0 - prev) * total;
    return out;
}

/// Uniform-ish point on { a in [0,1]^m, sum a = n }, by rejection from the
/// simplex; the complement trick keeps acceptance workable for n > m/2.
inline std::vector<double> random_feasible_allocation(std::mt19937_64& eng, int m, int n) {
    if (n == m) return std::vector<double>(static_cast<std::size_t>(m), 1.0);
    const bool flip = n > m - n;
    const double total = flip ? static_cast<double>(m - n) : static_cast<double>(n);
    for (;;) {
        auto a = simplex_point(eng, m, total);
        if (std::any_of(a.begin(), a.end(), [](double x) { return x > 1.0; })) continue;
        if (flip)
            for (auto& x : a) x = 1.0 - x;
        return a;
    }
}

/// Closed-form eigenvalues of [[a, c], [c, b]], ascending.
inline std::array<double, 2> eig2x2(double a, double b, double c) {
    const double mid = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), c);
    return {mid - rad, mid + rad};
}

/// Trigonometric closed form for a symmetric 3x3, ascending.
inline std::array<double, 3> eig3x3(const frameopt::SymmetricMatrix& A) {
    const double a = A(0, 0), b = A(1, 1), c = A(2, 2);
    const double d = A(0, 1), e = A(1, 2), f = A(0, 2);
    const double p1 = d * d + e * e + f * f;
    std::array<double, 3> out;
    if (p1 == 0.0) {
        out = {a, b, c};
        std::sort(out.begin(), out.end());
        return out;
    }
    const double q = (a + b + c) / 3.0;
    const double p2 =
        (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const double b00 = (a - q) / p, b11 = (b - q) / p, b22 = (c - q) / p;
    const double b01 = d / p, b12 = e / p, b02 = f / p;
    const double det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                         b02 * (b01 * b12 - b11 * b02);
    const double r = std::clamp(det_b / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    out = {lo, 3.0 * q - hi - lo, hi};
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testutil
