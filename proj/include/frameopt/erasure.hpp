#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frameopt/frame.hpp"
#include "frameopt/probability.hpp"

namespace frameopt {

/// Channels lost in one erasure event. Indices are 0-based positions in the
/// frame/distribution ordering, distinct and sorted ascending.
struct ErasurePattern {
    std::vector<int> lost;
};

struct ErasureReport {
    int r = 0;
    double d_p_r = 0.0;            ///< worst probability-weighted error over r-subsets
    ErasurePattern argmax;         ///< first attaining subset in lexicographic order
    double cond_expectation = 0.0; ///< expected error given exactly r losses
    double prob_N_eq_r = 0.0;      ///< probability of exactly r losses
};

/// Thrown when Monte Carlo conditioning never matched in any trial.
class StatisticalError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact enumeration refuses subset families larger than this.
inline constexpr std::int64_t kMaxEnumerationPatterns = 1'000'000;

/// Trials per seeded substream block; the fixed split keeps serial and
/// block-parallel runs bit-identical.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

/// Spectral norm of the Gram matrix of the lost vectors, which equals the
/// operator norm of the corresponding partial sum of outer products.
double sub_gram_norm(const Frame& f, const ErasurePattern& pattern);

/// P(exactly r of the independent per-channel losses occur); standard
/// O(m^2) convolution over the channels.
double prob_loss_count(const ErasureDistribution& dist, int r);

/// Full probability vector for 0..m simultaneous losses; sums to 1.
std::vector<double> loss_count_pmf(const ErasureDistribution& dist);

/// Exact worst case over all r-subsets: max over J of
/// ||Gram(J)|| * prod_{i in J} p_i * prod_{i not in J} (1 - p_i), plus the
/// conditional expectation and the loss-count probability. Frame rows must
/// align with the distribution's sorted channel order. Rejects r outside
/// [1, m] and enumerations beyond kMaxEnumerationPatterns.
ErasureReport erasure_report(const Frame& f, const ErasureDistribution& dist, int r);

/// Exact expected error given exactly r losses, for certified Parseval
/// frames only.
double conditional_expected_error(const Frame& f, const ErasureDistribution& dist, int r);

/// Worst pair error via the 2x2 eigenvalue formula; an independent
/// cross-check of erasure_report at r = 2.
double d_p_2_closed_form(const Frame& f, const ErasureDistribution& dist);

/// Worst pair error of a minimax-optimal frame when the harmonic condition
/// holds, written with the equalized level c = n / sum(1/w_k): the pair
/// weights cancel against the norms so only the inner products remain.
double d_p_2_equalized_closed_form(const Frame& f, const ErasureDistribution& dist, int n);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
};

/// Seeded simulation of the reconstruction error. Each trial draws one
/// Bernoulli loss per channel and evaluates the operator-norm error:
/// ||S^{-1} T* D T|| for general frames, or the lost-subset Gram norm for
/// certified Parseval frames. Conditioning on exactly r losses is by
/// rejection; each trial consumes exactly m draws so acceptance does not
/// shift the stream. Trials are grouped in blocks of kTrialsPerBlock, block
/// b using an independent generator seeded from (seed, b), and block partial
/// sums are merged in block order. Deterministic for a fixed seed.
MonteCarloEstimate monte_carlo_error(const Frame& f, const ErasureDistribution& dist,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::optional<int> condition_on_r = std::nullopt);

/// SplitMix64 step; also used to derive per-block substream seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Seed of the generator driving trial block `block`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t block);

}  // namespace frameopt
