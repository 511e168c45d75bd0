#include "frameopt/probability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace frameopt {

namespace {

constexpr double kWeightUnderflowFloor = 1e-300;

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

ExclusiveWeights compute_weights(const std::vector<double>& probs) {
    const std::size_t m = probs.size();
    ExclusiveWeights w;
    w.singles.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double prod = probs[i];
        for (std::size_t k = 0; k < m; ++k) {
            if (k != i) prod *= 1.0 - probs[k];
        }
        w.singles[i] = prod;
    }
    w.suffix_inv_sums.assign(m + 1, 0.0);
    for (std::size_t j = m; j-- > 0;)
        w.suffix_inv_sums[j] = w.suffix_inv_sums[j + 1] + 1.0 / w.singles[j];
    w.total = std::accumulate(w.singles.begin(), w.singles.end(), 0.0);
    return w;
}

void check_dimension(std::size_t m, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > m)
        throw std::invalid_argument("dimension n=" + std::to_string(n) +
                                    " must satisfy 1 <= n <= m=" + std::to_string(m));
}

}  // namespace

ErasureDistribution::ErasureDistribution(std::vector<double> probs) : input_(std::move(probs)) {
    const std::size_t m = input_.size();
    if (m < 2)
        throw std::invalid_argument("need at least 2 channels, got " + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double p = input_[i];
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("p[" + std::to_string(i + 1) + "]=" + fmt_g(p) +
                                        " outside (0,1)");
    }
    perm_.resize(m);
    std::iota(perm_.begin(), perm_.end(), 0);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [this](int l, int r) { return input_[l] < input_[r]; });
    sorted_.resize(m);
    for (std::size_t k = 0; k < m; ++k) sorted_[k] = input_[static_cast<std::size_t>(perm_[k])];

    weights_ = compute_weights(sorted_);
    for (std::size_t i = 0; i < m; ++i) {
        if (weights_.singles[i] < kWeightUnderflowFloor)
            throw std::invalid_argument(
                "exclusive loss weight of channel " + std::to_string(perm_[i] + 1) +
                " underflows (" + fmt_g(weights_.singles[i]) + "); probabilities too extreme");
    }
}

const ExclusiveWeights& exclusive_weights(const ErasureDistribution& dist) {
    return dist.weights();
}

double exclusive_pair_weight(const ErasureDistribution& dist, int i, int j) {
    const int m = dist.size();
    if (i < 0 || j < 0 || i >= m || j >= m)
        throw std::invalid_argument("channel index out of range");
    if (i == j) throw std::invalid_argument("pair weight needs two distinct channels");
    double prod = dist.prob(i) * dist.prob(j);
    for (int k = 0; k < m; ++k) {
        if (k != i && k != j) prod *= 1.0 - dist.prob(k);
    }
    return prod;
}

bool harmonic_condition(const ExclusiveWeights& w, int n) {
    check_dimension(w.singles.size(), n);
    // Weights are ascending, so the smallest one decides.
    return w.singles.front() >= static_cast<double>(n) / w.suffix_inv_sums.front();
}

int pinned_channel_count(const ExclusiveWeights& w, int n) {
    check_dimension(w.singles.size(), n);
    if (harmonic_condition(w, n)) return 0;
    const int m = static_cast<int>(w.singles.size());
    for (int j = std::min(m, n - 1); j >= 1; --j) {
        if (w.singles[static_cast<std::size_t>(j - 1)] *
                w.suffix_inv_sums[static_cast<std::size_t>(j)] <
            static_cast<double>(n - j))
            return j;
    }
    throw std::logic_error(
        "no admissible cut found although the harmonic condition fails; "
        "weights are inconsistent");
}

std::vector<double> solve_weighted_minimax(std::span<const double> alphas, double budget) {
    if (alphas.empty()) throw std::invalid_argument("weight list is empty");
    if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
    double inv_sum = 0.0;
    for (double a : alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("weights must be positive");
        inv_sum += 1.0 / a;
    }
    const double level = budget / inv_sum;
    std::vector<double> t(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) t[i] = level / alphas[i];
    return t;
}

double weighted_minimax_value(std::span<const double> alphas, double budget) {
    if (alphas.empty()) throw std::invalid_argument("weight list is empty");
    if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
    double inv_sum = 0.0;
    for (double a : alphas) {
        if (!(a > 0.0)) throw std::invalid_argument("weights must be positive");
        inv_sum += 1.0 / a;
    }
    return budget / inv_sum;
}

RpmDesign rpm_design(const ErasureDistribution& dist, int n) {
    const auto& w = dist.weights();
    check_dimension(w.singles.size(), n);
    const int m = dist.size();

    RpmDesign design;
    design.n = n;
    design.holds_h = harmonic_condition(w, n);
    design.index = pinned_channel_count(w, n);
    design.e_p1 = static_cast<double>(n - design.index) /
                  w.suffix_inv_sums[static_cast<std::size_t>(design.index)];
    design.norms_sq.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        design.norms_sq[static_cast<std::size_t>(i)] =
            i < design.index
                ? 1.0
                : std::min(1.0, design.e_p1 / w.singles[static_cast<std::size_t>(i)]);
    }
    return design;
}

}  // namespace frameopt
