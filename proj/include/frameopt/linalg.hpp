#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frameopt {

/// Dense row-major matrix. Sized for desk-scale numerics (orders up to a few
/// hundred); no sparse or blocked paths.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;

    double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Square matrix stored with exact mirror symmetry; construction symmetrizes
/// the input as (A + At)/2 so downstream algebra can rely on a(i,j) == a(j,i).
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Matrix a);

    std::size_t order() const { return mat_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    const Matrix& matrix() const { return mat_; }

private:
    Matrix mat_;
};

struct Eigensystem {
    std::vector<double> values;  ///< ascending
    Matrix vectors;              ///< column j pairs with values[j]; orthogonal
};

/// All eigenvalues, ascending. Cyclic Jacobi iteration, run until the
/// off-diagonal Frobenius mass drops below 1e-14 * ||A||_F (at most 100
/// sweeps; non-convergence throws).
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a);

Eigensystem symmetric_eigensystem(const SymmetricMatrix& a);

/// Largest eigenvalue of a positive semidefinite matrix. Inputs with an
/// eigenvalue below -1e-8 are rejected as not PSD.
double psd_operator_norm(const SymmetricMatrix& a);

/// Spectral norm max|lambda| of a symmetric (possibly indefinite) matrix.
double symmetric_operator_norm(const SymmetricMatrix& a);

/// Spectral norm of a general rectangular matrix, computed as
/// sqrt(lambda_max(At A)).
double operator_norm(const Matrix& a);

/// Largest eigenvalue of [[a, c], [c, b]] where a, b are squared norms and c
/// an inner product: (a + b + sqrt((a-b)^2 + 4c^2)) / 2. Rejects
/// c^2 > ab(1 + 1e-9), which no genuine Gram matrix can reach.
double two_by_two_gram_norm(double a, double b, double c);

/// B with B*A*B = I, for symmetric A with smallest eigenvalue > 1e-10.
/// Computed by eigendecomposition; near-singular input is rejected.
SymmetricMatrix spd_inverse_sqrt(const SymmetricMatrix& a);

/// Symmetric PSD square root (eigenvalues clamped at zero within tolerance).
SymmetricMatrix spd_sqrt(const SymmetricMatrix& a);

/// Inverse of a symmetric positive definite matrix, same gate as
/// spd_inverse_sqrt.
SymmetricMatrix spd_inverse(const SymmetricMatrix& a);

}  // namespace frameopt
