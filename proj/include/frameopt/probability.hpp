#pragma once

#include <span>
#include <vector>

namespace frameopt {

/// Per-channel loss weights derived from an erasure distribution.
/// singles[i] is the probability that channel i fails and no other does:
/// p_i * prod_{k != i} (1 - p_k). When the underlying probabilities are
/// sorted ascending so are these weights.
struct ExclusiveWeights {
    std::vector<double> singles;
    /// suffix_inv_sums[j] = sum_{k >= j} 1/singles[k]; size m+1, last entry 0.
    std::vector<double> suffix_inv_sums;
    /// Sum of singles, i.e. the probability of exactly one loss.
    double total = 0.0;
};

/// Independent per-channel loss probabilities, held sorted ascending.
/// Input may come in any order; the sort permutation is kept so results can
/// be mapped back to the caller's channel numbering. Construction rejects
/// probabilities outside the open interval (0,1), fewer than two channels,
/// and distributions so extreme that an exclusive-loss weight underflows
/// (below 1e-300).
class ErasureDistribution {
public:
    explicit ErasureDistribution(std::vector<double> probs);

    int size() const { return static_cast<int>(sorted_.size()); }
    double prob(int i) const { return sorted_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return sorted_; }
    const std::vector<double>& input_probs() const { return input_; }

    /// sorted_to_input()[k] is the caller-order position of the k-th smallest
    /// probability.
    const std::vector<int>& sorted_to_input() const { return perm_; }

    const ExclusiveWeights& weights() const { return weights_; }

private:
    std::vector<double> input_;
    std::vector<double> sorted_;
    std::vector<int> perm_;
    ExclusiveWeights weights_;
};

const ExclusiveWeights& exclusive_weights(const ErasureDistribution& dist);

/// Probability that exactly channels i and j fail (0-based sorted indices):
/// p_i * p_j * prod_{k != i,j} (1 - p_k). Symmetric; rejects i == j.
double exclusive_pair_weight(const ErasureDistribution& dist, int i, int j);

/// True when every weight clears the harmonic threshold n / sum_k(1/w_k).
/// In that case the minimax allocation below is interior: no channel is
/// pinned at squared norm 1. Requires 1 <= n <= m and ascending weights.
bool harmonic_condition(const ExclusiveWeights& w, int n);

/// Number of leading (smallest-weight) channels pinned at squared norm 1 in
/// the optimal allocation: 0 when the harmonic condition holds, otherwise
/// the largest j with singles[j-1] * suffix_inv_sums[j] < n - j (1-based j).
/// The result always satisfies 0 <= count <= n-1.
int pinned_channel_count(const ExclusiveWeights& w, int n);

/// Unique minimizer of max_i(alphas[i] * t[i]) over t >= 0 with sum(t) equal
/// to budget: t[i] = (budget / sum_k 1/alphas[k]) / alphas[i]. All products
/// alphas[i]*t[i] equal the optimal value.
std::vector<double> solve_weighted_minimax(std::span<const double> alphas, double budget);

/// Optimal value of the problem above: budget / sum_k(1/alphas[k]).
double weighted_minimax_value(std::span<const double> alphas, double budget);

/// Optimal squared-norm profile for Parseval frames facing the given channel
/// losses, minimizing the worst probability-weighted single-erasure error.
struct RpmDesign {
    bool holds_h = false;  ///< harmonic condition verdict (index 0 iff true)
    int index = 0;         ///< channels pinned at squared norm 1
    double e_p1 = 0.0;     ///< optimal worst single-erasure value
    std::vector<double> norms_sq;  ///< sorted-channel order; in (0,1], sums to n
    int n = 0;
};

/// Full design: norms_sq[i] = 1 for i < index and e_p1 / singles[i] above it.
/// Rejects n outside [1, m].
RpmDesign rpm_design(const ErasureDistribution& dist, int n);

}  // namespace frameopt
