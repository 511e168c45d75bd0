#pragma once

#include <string>
#include <vector>

#include "frameopt/linalg.hpp"

namespace frameopt {

/// Residual threshold below which a frame counts as Parseval.
inline constexpr double kParsevalResidualTol = 1e-8;

/// A spanning family of m vectors in R^n, m >= n >= 1, stored as the rows of
/// an m x n matrix (row i is the i-th vector, so the matrix itself maps
/// x to the coefficient vector of inner products). Construction rejects
/// families whose frame operator is singular.
class Frame {
public:
    explicit Frame(Matrix rows, std::string label = {});

    int dim() const { return static_cast<int>(rows_.cols()); }
    int count() const { return static_cast<int>(rows_.rows()); }
    const Matrix& rows() const { return rows_; }
    std::span<const double> vec(int i) const { return rows_.row(static_cast<std::size_t>(i)); }

    double norm_sq(int i) const;
    double inner(int i, int j) const;
    std::vector<double> norms_sq() const;

    const std::string& label() const { return label_; }

private:
    Matrix rows_;
    std::string label_;
};

struct ParsevalCertificate {
    double residual = 0.0;  ///< ||S - I|| in spectral norm
    bool is_parseval = false;
    std::vector<double> norms_sq;
};

/// S = sum_i f_i f_i^T, symmetric positive definite (n x n).
SymmetricMatrix frame_operator(const Frame& f);

/// Full m x m Gram matrix of the frame vectors.
SymmetricMatrix gram_matrix(const Frame& f);

/// residual = max |eigenvalue(S) - 1|; Parseval iff residual <= 1e-8.
ParsevalCertificate certify_parseval(const Frame& f);

/// The Parseval frame g_i = S^{-1/2} f_i. Rejects near-singular S.
Frame canonical_parseval(const Frame& f);

/// Builds a Parseval frame whose row squared norms match norms_sq (each in
/// (0, 1], summing to n within 1e-9). Starting from the first n columns of
/// the identity, at most m-1 plane rotations each land one row exactly on its
/// target while leaving the columns orthonormal. Targets are processed in
/// ascending order, pairing a row at or below the target with one at or above
/// it (lowest index wins ties), which keeps every target reachable. Output is
/// deterministic; infeasible inputs (an entry above 1, a nonpositive entry,
/// or a wrong sum) are rejected.
Frame construct_parseval_with_norms(const std::vector<double>& norms_sq, int n);

/// Real harmonic Parseval frame: rows sample sqrt(2/m)*(cos, sin) columns at
/// equispaced angles, plus a constant column scaled 1/sqrt(m) when n is odd
/// (and an alternating-sign column for the even n == m corner). All rows have
/// squared norm n/m.
Frame harmonic_frame(int m, int n);

}  // namespace frameopt
