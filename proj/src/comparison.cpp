#include "frameopt/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace frameopt {

std::vector<double> norms_cm(int m, int n) {
    if (n < 1 || n > m)
        throw std::invalid_argument("dimension n=" + std::to_string(n) +
                                    " must satisfy 1 <= n <= m=" + std::to_string(m));
    return std::vector<double>(static_cast<std::size_t>(m),
                               static_cast<double>(n) / static_cast<double>(m));
}

std::vector<double> norms_pm(const ErasureDistribution& dist, int n) {
    const int m = dist.size();
    if (n < 1 || n > m)
        throw std::invalid_argument("dimension n=" + std::to_string(n) +
                                    " must satisfy 1 <= n <= m=" + std::to_string(m));
    const double p_sum = std::accumulate(dist.probs().begin(), dist.probs().end(), 0.0);
    std::vector<double> out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        out[static_cast<std::size_t>(i)] =
            static_cast<double>(n) / (m - 1) * (1.0 - dist.prob(i) / p_sum);
    return out;
}

std::vector<double> norms_rpm(const ErasureDistribution& dist, int n) {
    return rpm_design(dist, n).norms_sq;
}

double expected_one_erasure_error(std::span<const double> norms_sq,
                                  const ErasureDistribution& dist) {
    const auto& w = dist.weights();
    if (norms_sq.size() != w.singles.size())
        throw std::invalid_argument("norm profile has " + std::to_string(norms_sq.size()) +
                                    " entries but distribution has " +
                                    std::to_string(w.singles.size()) + " channels");
    double acc = 0.0;
    for (std::size_t i = 0; i < norms_sq.size(); ++i) acc += w.singles[i] * norms_sq[i];
    return acc / w.total;
}

ComparisonReport compare_models(const ErasureDistribution& dist, int n) {
    const int m = dist.size();
    const RpmDesign design = rpm_design(dist, n);
    const auto& w = dist.weights();

    ComparisonReport report;
    report.index = design.index;
    report.norms_cm = norms_cm(m, n);
    report.norms_pm = norms_pm(dist, n);
    report.norms_rpm = design.norms_sq;
    report.e_cm = expected_one_erasure_error(report.norms_cm, dist);
    report.e_pm = expected_one_erasure_error(report.norms_pm, dist);
    report.e_rpm = expected_one_erasure_error(report.norms_rpm, dist);
    report.pm_feasible =
        std::all_of(report.norms_pm.begin(), report.norms_pm.end(),
                    [](double v) { return v <= 1.0 + 1e-9; });

    const int d = design.index;
    // Both bounds share the prefactor d(m-n)(m-n-1) / ((m-1)(m-d)(m-d-1)); a
    // zero numerator short-circuits before the denominator can vanish
    // (d = n-1 = m-1).
    const double numerator = static_cast<double>(d) * (m - n) * (m - n - 1);
    if (numerator > 0.0) {
        const double prefactor =
            numerator / (static_cast<double>(m - 1) * (m - d) * (m - d - 1));
        double tail_p = 0.0;
        for (int i = d; i < m; ++i) tail_p += dist.prob(i);
        double gap_sum = 0.0;
        double cor_sum = 0.0;
        for (int i = d; i < m; ++i) {
            const double wi = w.singles[static_cast<std::size_t>(i)];
            gap_sum += wi * (1.0 - dist.prob(i) / tail_p);
            cor_sum += wi * (1.0 - 1.0 / static_cast<double>(m - i));
        }
        report.gap_lower_bound = std::max(prefactor * gap_sum / w.total, 0.0);
        report.cor_bound = std::max(prefactor * cor_sum / w.total, 0.0);
    }
    return report;
}

double chebyshev_gap(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sequences differ in length: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    if (a.empty()) throw std::invalid_argument("sequences are empty");
    double dot = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        sum_a += a[i];
        sum_b += b[i];
    }
    return dot - sum_a * sum_b / static_cast<double>(a.size());
}

}  // namespace frameopt
