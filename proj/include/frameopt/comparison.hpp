#pragma once

#include <span>
#include <vector>

#include "frameopt/probability.hpp"

namespace frameopt {

/// Expected one-erasure errors of the three norm-allocation models on a
/// common channel distribution, plus proven lower bounds on the PM-RPM gap.
/// CM spreads norms uniformly, PM weights them by complementary probability
/// shares, RPM equalizes the probability-weighted worst case.
struct ComparisonReport {
    double e_cm = 0.0;
    double e_pm = 0.0;
    double e_rpm = 0.0;
    double gap_lower_bound = 0.0;  ///< guaranteed floor of e_pm - e_rpm
    double cor_bound = 0.0;        ///< weaker distribution-free floor, <= gap_lower_bound
    int index = 0;                 ///< pinned-channel count of the RPM profile
    std::vector<double> norms_cm;  ///< sorted-channel order
    std::vector<double> norms_pm;
    std::vector<double> norms_rpm;
    bool pm_feasible = true;  ///< false when a PM entry exceeds 1 (not realizable as Parseval)
};

/// Uniform profile n/m.
std::vector<double> norms_cm(int m, int n);

/// PM profile n/(m-1) * (1 - p_i / sum(p)), in sorted-channel order. Entries
/// above 1 are reported as-is; feasibility is flagged by compare_models.
std::vector<double> norms_pm(const ErasureDistribution& dist, int n);

/// RPM profile; same as rpm_design(dist, n).norms_sq.
std::vector<double> norms_rpm(const ErasureDistribution& dist, int n);

/// Expected error given exactly one loss for a frame with the given squared
/// norms: sum_i(w_i * norms_sq[i]) / sum_i(w_i) with w the exclusive-loss
/// weights. norms_sq must be in sorted-channel order.
double expected_one_erasure_error(std::span<const double> norms_sq,
                                  const ErasureDistribution& dist);

ComparisonReport compare_models(const ErasureDistribution& dist, int n);

/// sum(a_i b_i) - (1/m) sum(a_i) sum(b_i): nonnegative when both sequences
/// are sorted the same way, nonpositive when sorted oppositely.
double chebyshev_gap(std::span<const double> a, std::span<const double> b);

}  // namespace frameopt
