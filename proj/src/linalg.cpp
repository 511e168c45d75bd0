#include "frameopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace frameopt {

namespace {

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix eye(n, n);
    for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

SymmetricMatrix::SymmetricMatrix(Matrix a) : mat_(std::move(a)) {
    if (mat_.rows() != mat_.cols()) throw std::invalid_argument("symmetric matrix must be square");
    for (std::size_t i = 0; i < mat_.rows(); ++i) {
        for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
            const double avg = 0.5 * (mat_(i, j) + mat_(j, i));
            mat_(i, j) = avg;
            mat_(j, i) = avg;
        }
    }
}

namespace {

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

Eigensystem jacobi_eigensystem(const SymmetricMatrix& input, bool want_vectors) {
    const std::size_t n = input.order();
    Matrix a = input.matrix();
    Matrix v = want_vectors ? Matrix::identity(n) : Matrix();

    // ||A||_F is invariant under the rotations, so the convergence threshold
    // can be fixed up front.
    const double threshold = 1e-14 * a.frobenius_norm();

    bool converged = n < 2;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (offdiag_norm(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = a(k, p), akq = a(k, q);
                        a(k, p) = akp - s * (akq + tau * akp);
                        a(p, k) = a(k, p);
                        a(k, q) = akq + s * (akp - tau * akq);
                        a(q, k) = a(k, q);
                    }
                    if (want_vectors) {
                        const double vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = vkp - s * (vkq + tau * vkp);
                        v(k, q) = vkq + s * (vkp - tau * vkq);
                    }
                }
            }
        }
        if (offdiag_norm(a) <= threshold) converged = true;
    }
    if (!converged) throw std::runtime_error("Jacobi eigensolver did not converge within 100 sweeps");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&a](std::size_t l, std::size_t r) { return a(l, l) < a(r, r); });

    Eigensystem out;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = a(idx[j], idx[j]);
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, idx[j]);
    }
    return out;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a) {
    return jacobi_eigensystem(a, false).values;
}

Eigensystem symmetric_eigensystem(const SymmetricMatrix& a) {
    return jacobi_eigensystem(a, true);
}

double psd_operator_norm(const SymmetricMatrix& a) {
    const auto vals = symmetric_eigenvalues(a);
    if (vals.front() < -1e-8)
        throw std::invalid_argument("matrix is not positive semidefinite (eigenvalue " +
                                    fmt_g(vals.front()) + ")");
    return std::max(vals.back(), 0.0);
}

double symmetric_operator_norm(const SymmetricMatrix& a) {
    const auto vals = symmetric_eigenvalues(a);
    return std::max(std::abs(vals.front()), std::abs(vals.back()));
}

double operator_norm(const Matrix& a) {
    const SymmetricMatrix square(a.transposed() * a);
    const auto vals = symmetric_eigenvalues(square);
    return std::sqrt(std::max(vals.back(), 0.0));
}

double two_by_two_gram_norm(double a, double b, double c) {
    if (a < -1e-12 || b < -1e-12)
        throw std::invalid_argument("squared norms must be nonnegative");
    a = std::max(a, 0.0);
    b = std::max(b, 0.0);
    if (c * c > a * b * (1.0 + 1e-9))
        throw std::invalid_argument("inner product " + fmt_g(c) +
                                    " violates the Cauchy-Schwarz bound for norms given");
    return 0.5 * (a + b + std::hypot(a - b, 2.0 * c));
}

namespace {

template <typename Fn>
SymmetricMatrix rebuild_from_eigensystem(const Eigensystem& es, Fn&& transform) {
    const std::size_t n = es.values.size();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = transform(es.values[k]);
        if (f == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = f * es.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += w * es.vectors(j, k);
        }
    }
    return SymmetricMatrix(std::move(out));
}

}  // namespace

SymmetricMatrix spd_inverse_sqrt(const SymmetricMatrix& a) {
    const auto es = symmetric_eigensystem(a);
    if (es.values.front() <= 1e-10)
        throw std::invalid_argument("matrix is numerically singular (smallest eigenvalue " +
                                    fmt_g(es.values.front()) + ")");
    return rebuild_from_eigensystem(es, [](double l) { return 1.0 / std::sqrt(l); });
}

SymmetricMatrix spd_sqrt(const SymmetricMatrix& a) {
    const auto es = symmetric_eigensystem(a);
    if (es.values.front() < -1e-8)
        throw std::invalid_argument("matrix is not positive semidefinite (eigenvalue " +
                                    fmt_g(es.values.front()) + ")");
    return rebuild_from_eigensystem(es, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

SymmetricMatrix spd_inverse(const SymmetricMatrix& a) {
    const auto es = symmetric_eigensystem(a);
    if (es.values.front() <= 1e-10)
        throw std::invalid_argument("matrix is numerically singular (smallest eigenvalue " +
                                    fmt_g(es.values.front()) + ")");
    return rebuild_from_eigensystem(es, [](double l) { return 1.0 / l; });
}

}  // namespace frameopt
