#include "frameopt/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace frameopt {

namespace {

void check_alignment(const Frame& f, const ErasureDistribution& dist) {
    if (f.count() != dist.size())
        throw std::invalid_argument("frame has " + std::to_string(f.count()) +
                                    " vectors but distribution has " +
                                    std::to_string(dist.size()) + " channels");
}

double binomial_count(int m, int r) {
    double c = 1.0;
    for (int k = 1; k <= r; ++k) {
        c *= static_cast<double>(m - r + k) / k;
        if (c > 1e15) return c;  // far beyond any cap we enforce
    }
    return c;
}

bool next_combination(std::vector<int>& c, int m) {
    const int r = static_cast<int>(c.size());
    for (int i = r - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < m - r + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

double gram_norm_of(const Frame& f, const std::vector<int>& lost) {
    const std::size_t r = lost.size();
    if (r == 0) return 0.0;
    Matrix g(r, r);
    for (std::size_t a = 0; a < r; ++a) {
        g(a, a) = f.norm_sq(lost[a]);
        for (std::size_t b = a + 1; b < r; ++b) {
            const double v = f.inner(lost[a], lost[b]);
            g(a, b) = v;
            g(b, a) = v;
        }
    }
    return psd_operator_norm(SymmetricMatrix(std::move(g)));
}

/// Same operator norm through the n x n partial frame operator; cheaper than
/// the Gram route once more than n channels are lost.
double partial_operator_norm(const Frame& f, const std::vector<int>& lost) {
    const std::size_t n = static_cast<std::size_t>(f.dim());
    Matrix s(n, n);
    for (int i : lost) {
        const auto row = f.vec(i);
        for (std::size_t a = 0; a < n; ++a) {
            if (row[a] == 0.0) continue;
            for (std::size_t b = 0; b < n; ++b) s(a, b) += row[a] * row[b];
        }
    }
    return psd_operator_norm(SymmetricMatrix(std::move(s)));
}

Matrix partial_operator(const Frame& f, const std::vector<int>& lost) {
    const std::size_t n = static_cast<std::size_t>(f.dim());
    Matrix s(n, n);
    for (int i : lost) {
        const auto row = f.vec(i);
        for (std::size_t a = 0; a < n; ++a) {
            if (row[a] == 0.0) continue;
            for (std::size_t b = 0; b < n; ++b) s(a, b) += row[a] * row[b];
        }
    }
    return s;
}

struct PatternScan {
    double best = -1.0;
    std::vector<int> best_pattern;
    double weighted_sum = 0.0;
};

PatternScan scan_patterns(const Frame& f, const ErasureDistribution& dist, int r) {
    const int m = dist.size();
    double base = 1.0;
    std::vector<double> odds(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        base *= 1.0 - dist.prob(i);
        odds[static_cast<std::size_t>(i)] = dist.prob(i) / (1.0 - dist.prob(i));
    }

    PatternScan scan;
    std::vector<int> combo(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = i;
    do {
        double weight = base;
        for (int i : combo) weight *= odds[static_cast<std::size_t>(i)];
        const double value = weight * gram_norm_of(f, combo);
        scan.weighted_sum += value;
        if (value > scan.best) {
            scan.best = value;
            scan.best_pattern = combo;
        }
    } while (next_combination(combo, m));
    return scan;
}

double to_unit_interval(std::uint64_t x) {
    return static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

double sub_gram_norm(const Frame& f, const ErasurePattern& pattern) {
    if (pattern.lost.empty()) throw std::invalid_argument("erasure pattern is empty");
    for (std::size_t k = 0; k < pattern.lost.size(); ++k) {
        const int i = pattern.lost[k];
        if (i < 0 || i >= f.count()) throw std::invalid_argument("erasure index out of range");
        if (k > 0 && pattern.lost[k - 1] >= i)
            throw std::invalid_argument("erasure indices must be strictly increasing");
    }
    return gram_norm_of(f, pattern.lost);
}

std::vector<double> loss_count_pmf(const ErasureDistribution& dist) {
    const int m = dist.size();
    std::vector<double> pmf(static_cast<std::size_t>(m) + 1, 0.0);
    pmf[0] = 1.0;
    for (int i = 0; i < m; ++i) {
        const double p = dist.prob(i);
        for (int k = i + 1; k >= 1; --k)
            pmf[static_cast<std::size_t>(k)] =
                pmf[static_cast<std::size_t>(k)] * (1.0 - p) + pmf[static_cast<std::size_t>(k - 1)] * p;
        pmf[0] *= 1.0 - p;
    }
    return pmf;
}

double prob_loss_count(const ErasureDistribution& dist, int r) {
    if (r < 0 || r > dist.size())
        throw std::invalid_argument("loss count " + std::to_string(r) + " out of range");
    return loss_count_pmf(dist)[static_cast<std::size_t>(r)];
}

ErasureReport erasure_report(const Frame& f, const ErasureDistribution& dist, int r) {
    check_alignment(f, dist);
    const int m = dist.size();
    if (r < 1 || r > m)
        throw std::invalid_argument("erasure order r=" + std::to_string(r) +
                                    " must be in [1, m=" + std::to_string(m) + "]");
    if (binomial_count(m, r) > static_cast<double>(kMaxEnumerationPatterns))
        throw std::invalid_argument("C(" + std::to_string(m) + "," + std::to_string(r) +
                                    ") exceeds the enumeration cap of " +
                                    std::to_string(kMaxEnumerationPatterns));

    const PatternScan scan = scan_patterns(f, dist, r);
    ErasureReport report;
    report.r = r;
    report.d_p_r = scan.best;
    report.argmax.lost = scan.best_pattern;
    report.prob_N_eq_r = prob_loss_count(dist, r);
    report.cond_expectation = scan.weighted_sum / report.prob_N_eq_r;
    return report;
}

double conditional_expected_error(const Frame& f, const ErasureDistribution& dist, int r) {
    check_alignment(f, dist);
    if (!certify_parseval(f).is_parseval)
        throw std::invalid_argument("conditional expected error requires a Parseval frame");
    const int m = dist.size();
    if (r < 1 || r > m)
        throw std::invalid_argument("erasure order r=" + std::to_string(r) +
                                    " must be in [1, m=" + std::to_string(m) + "]");
    if (binomial_count(m, r) > static_cast<double>(kMaxEnumerationPatterns))
        throw std::invalid_argument("enumeration exceeds the cap of " +
                                    std::to_string(kMaxEnumerationPatterns));
    return scan_patterns(f, dist, r).weighted_sum / prob_loss_count(dist, r);
}

double d_p_2_closed_form(const Frame& f, const ErasureDistribution& dist) {
    check_alignment(f, dist);
    const int m = dist.size();
    if (m < 2) throw std::invalid_argument("need at least two channels");
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double w = exclusive_pair_weight(dist, i, j);
            const double value = w * two_by_two_gram_norm(f.norm_sq(i), f.norm_sq(j), f.inner(i, j));
            best = std::max(best, value);
        }
    }
    return best;
}

double d_p_2_equalized_closed_form(const Frame& f, const ErasureDistribution& dist, int n) {
    check_alignment(f, dist);
    const auto& w = dist.weights();
    if (!harmonic_condition(w, n))
        throw std::invalid_argument("equalized closed form requires the harmonic condition");
    const int m = dist.size();
    const double level = static_cast<double>(n) / w.suffix_inv_sums.front();
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
        const double oi = dist.prob(i) / (1.0 - dist.prob(i));
        for (int j = i + 1; j < m; ++j) {
            const double oj = dist.prob(j) / (1.0 - dist.prob(j));
            const double cross = exclusive_pair_weight(dist, i, j) * f.inner(i, j);
            const double value =
                0.5 * (level * (oi + oj) +
                       std::sqrt(level * level * (oi - oj) * (oi - oj) + 4.0 * cross * cross));
            best = std::max(best, value);
        }
    }
    return best;
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t state = seed;
    (void)splitmix64_next(state);
    state += block * 0x9E3779B97F4A7C15ULL;
    return splitmix64_next(state);
}

MonteCarloEstimate monte_carlo_error(const Frame& f, const ErasureDistribution& dist,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::optional<int> condition_on_r) {
    check_alignment(f, dist);
    if (trials == 0) throw std::invalid_argument("trial count must be positive");
    const int m = dist.size();
    if (condition_on_r && (*condition_on_r < 0 || *condition_on_r > m))
        throw std::invalid_argument("conditioning order out of range");

    const bool parseval = certify_parseval(f).is_parseval;
    std::optional<SymmetricMatrix> s_inv;
    if (!parseval) s_inv.emplace(spd_inverse(frame_operator(f)));

    const std::size_t n = static_cast<std::size_t>(f.dim());
    double total_sum = 0.0;
    double total_sq = 0.0;
    std::uint64_t accepted = 0;

    std::vector<int> lost;
    lost.reserve(static_cast<std::size_t>(m));
    const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::mt19937_64 engine(substream_seed(seed, b));
        double block_sum = 0.0;
        double block_sq = 0.0;
        const std::uint64_t begin = b * kTrialsPerBlock;
        const std::uint64_t end = std::min(begin + kTrialsPerBlock, trials);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            lost.clear();
            for (int i = 0; i < m; ++i) {
                if (to_unit_interval(engine()) < dist.prob(i)) lost.push_back(i);
            }
            if (condition_on_r && static_cast<int>(lost.size()) != *condition_on_r) continue;
            double value = 0.0;
            if (!lost.empty()) {
                if (parseval) {
                    value = lost.size() <= n ? gram_norm_of(f, lost)
                                             : partial_operator_norm(f, lost);
                } else {
                    value = operator_norm(s_inv->matrix() * partial_operator(f, lost));
                }
            }
            block_sum += value;
            block_sq += value * value;
            ++accepted;
        }
        total_sum += block_sum;
        total_sq += block_sq;
    }

    if (accepted == 0)
        throw StatisticalError("no trial produced exactly " + std::to_string(*condition_on_r) +
                               " losses in " + std::to_string(trials) + " trials");

    MonteCarloEstimate est;
    est.trials = trials;
    est.accepted = accepted;
    est.estimate = total_sum / static_cast<double>(accepted);
    if (accepted > 1) {
        const double num = total_sq - total_sum * total_sum / static_cast<double>(accepted);
        const double var = std::max(num, 0.0) / static_cast<double>(accepted - 1);
        est.std_error = std::sqrt(var / static_cast<double>(accepted));
    }
    return est;
}

}  // namespace frameopt
