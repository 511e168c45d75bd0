#include "frameopt/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
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

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

SymmetricMatrix operator_of_rows(const Matrix& rows) {
    const std::size_t n = rows.cols();
    Matrix s(n, n);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        const auto r = rows.row(i);
        for (std::size_t a = 0; a < n; ++a) {
            if (r[a] == 0.0) continue;
            for (std::size_t b = 0; b < n; ++b) s(a, b) += r[a] * r[b];
        }
    }
    return SymmetricMatrix(std::move(s));
}

}  // namespace

Frame::Frame(Matrix rows, std::string label) : rows_(std::move(rows)), label_(std::move(label)) {
    const std::size_t m = rows_.rows();
    const std::size_t n = rows_.cols();
    if (n < 1 || m < n)
        throw std::invalid_argument("frame needs m >= n >= 1, got m=" + std::to_string(m) +
                                    ", n=" + std::to_string(n));
    const auto eigs = symmetric_eigenvalues(operator_of_rows(rows_));
    if (!(eigs.front() > 0.0))
        throw std::invalid_argument("vectors do not span the space (frame operator has eigenvalue " +
                                    fmt_g(eigs.front()) + ")");
}

double Frame::norm_sq(int i) const {
    const auto r = rows_.row(static_cast<std::size_t>(i));
    return dot(r, r);
}

double Frame::inner(int i, int j) const {
    return dot(rows_.row(static_cast<std::size_t>(i)), rows_.row(static_cast<std::size_t>(j)));
}

std::vector<double> Frame::norms_sq() const {
    std::vector<double> out(static_cast<std::size_t>(count()));
    for (int i = 0; i < count(); ++i) out[static_cast<std::size_t>(i)] = norm_sq(i);
    return out;
}

SymmetricMatrix frame_operator(const Frame& f) { return operator_of_rows(f.rows()); }

SymmetricMatrix gram_matrix(const Frame& f) {
    const int m = f.count();
    Matrix g(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        g(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = f.norm_sq(i);
        for (int j = i + 1; j < m; ++j) {
            const double v = f.inner(i, j);
            g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            g(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return SymmetricMatrix(std::move(g));
}

ParsevalCertificate certify_parseval(const Frame& f) {
    const auto eigs = symmetric_eigenvalues(frame_operator(f));
    double residual = 0.0;
    for (double l : eigs) residual = std::max(residual, std::abs(l - 1.0));
    ParsevalCertificate cert;
    cert.residual = residual;
    cert.is_parseval = residual <= kParsevalResidualTol;
    cert.norms_sq = f.norms_sq();
    return cert;
}

Frame canonical_parseval(const Frame& f) {
    const SymmetricMatrix inv_sqrt = spd_inverse_sqrt(frame_operator(f));
    return Frame(f.rows() * inv_sqrt.matrix(), f.label());
}

Frame construct_parseval_with_norms(const std::vector<double>& norms_sq, int n) {
    const int m = static_cast<int>(norms_sq.size());
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    if (m < n)
        throw std::invalid_argument("need at least n=" + std::to_string(n) + " norms, got " +
                                    std::to_string(m));
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        const double a = norms_sq[static_cast<std::size_t>(i)];
        if (!(a >= 1e-12))
            throw std::invalid_argument("squared norm [" + std::to_string(i + 1) + "]=" + fmt_g(a) +
                                        " is not positive");
        if (a > 1.0 + 1e-9)
            throw std::invalid_argument("squared norm [" + std::to_string(i + 1) + "]=" + fmt_g(a) +
                                        " exceeds 1; no Parseval frame admits it");
        sum += a;
    }
    if (std::abs(sum - n) > 1e-9)
        throw std::invalid_argument("squared norms sum to " + fmt_g(sum) + ", expected n=" +
                                    std::to_string(n));

    // Targets ascending, stable in the caller's order.
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&norms_sq](int l, int r) {
        return norms_sq[static_cast<std::size_t>(l)] < norms_sq[static_cast<std::size_t>(r)];
    });

    Matrix work(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    std::vector<double> cur(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < n; ++k) {
        work(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = 1.0;
        cur[static_cast<std::size_t>(k)] = 1.0;
    }
    std::vector<char> active(static_cast<std::size_t>(m), 1);
    std::vector<int> slot_of_target(static_cast<std::size_t>(m), -1);

    for (int t = 0; t < m; ++t) {
        const double a = std::min(norms_sq[static_cast<std::size_t>(order[t])], 1.0);

        // Bracket the target: the largest current norm at or below it and the
        // smallest at or above it. The running norms majorize the remaining
        // targets, so both exist up to roundoff; fall back to the extremes.
        int lo = -1, hi = -1, lo_any = -1, hi_any = -1;
        for (int s = 0; s < m; ++s) {
            if (!active[static_cast<std::size_t>(s)]) continue;
            const double r = cur[static_cast<std::size_t>(s)];
            if (lo_any < 0 || r < cur[static_cast<std::size_t>(lo_any)]) lo_any = s;
            if (hi_any < 0 || r > cur[static_cast<std::size_t>(hi_any)]) hi_any = s;
            if (r <= a && (lo < 0 || r > cur[static_cast<std::size_t>(lo)])) lo = s;
            if (r >= a && (hi < 0 || r < cur[static_cast<std::size_t>(hi)])) hi = s;
        }
        if (lo < 0) lo = lo_any;
        if (hi < 0) hi = hi_any;

        int fixed = lo;
        if (lo != hi) {
            const double ri = cur[static_cast<std::size_t>(lo)];
            const double rj = cur[static_cast<std::size_t>(hi)];
            const double g = dot(work.row(static_cast<std::size_t>(lo)),
                                 work.row(static_cast<std::size_t>(hi)));
            const double mu = 0.5 * (ri + rj);
            const double radius = std::hypot(0.5 * (ri - rj), g);
            if (radius >= 1e-15) {
                // New norm of row lo after rotating by theta is
                // mu + radius * cos(2*theta - phi); solve for the target.
                const double x = std::clamp((a - mu) / radius, -1.0, 1.0);
                const double phi = std::atan2(g, 0.5 * (ri - rj));
                const double theta = 0.5 * (phi + std::acos(x));
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                auto u = work.row(static_cast<std::size_t>(lo));
                auto v = work.row(static_cast<std::size_t>(hi));
                for (int k = 0; k < n; ++k) {
                    const double uk = u[static_cast<std::size_t>(k)];
                    const double vk = v[static_cast<std::size_t>(k)];
                    u[static_cast<std::size_t>(k)] = c * uk + s * vk;
                    v[static_cast<std::size_t>(k)] = -s * uk + c * vk;
                }
                cur[static_cast<std::size_t>(lo)] = dot(u, u);
                cur[static_cast<std::size_t>(hi)] = dot(v, v);
            }
            // radius ~ 0 means both rows already sit on the target.
        }
        slot_of_target[static_cast<std::size_t>(t)] = fixed;
        active[static_cast<std::size_t>(fixed)] = 0;
    }

    Matrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (int t = 0; t < m; ++t) {
        const auto src = work.row(static_cast<std::size_t>(slot_of_target[static_cast<std::size_t>(t)]));
        auto dst = out.row(static_cast<std::size_t>(order[static_cast<std::size_t>(t)]));
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return Frame(std::move(out));
}

Frame harmonic_frame(int m, int n) {
    if (n < 1 || m < n)
        throw std::invalid_argument("harmonic frame needs m >= n >= 1, got m=" + std::to_string(m) +
                                    ", n=" + std::to_string(n));
    const bool use_const = (n % 2 == 1) || (n == m);
    const bool use_alt = (n % 2 == 0) && (n == m);
    const int pairs = (n - (use_const ? 1 : 0) - (use_alt ? 1 : 0)) / 2;

    Matrix rows(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    const double step = 2.0 * std::numbers::pi / m;
    const double pair_scale = std::sqrt(2.0 / m);
    const double flat_scale = std::sqrt(1.0 / m);
    for (int k = 0; k < m; ++k) {
        int col = 0;
        if (use_const) rows(static_cast<std::size_t>(k), static_cast<std::size_t>(col++)) = flat_scale;
        for (int j = 1; j <= pairs; ++j) {
            const double angle = step * j * k;
            rows(static_cast<std::size_t>(k), static_cast<std::size_t>(col++)) =
                pair_scale * std::cos(angle);
            rows(static_cast<std::size_t>(k), static_cast<std::size_t>(col++)) =
                pair_scale * std::sin(angle);
        }
        if (use_alt)
            rows(static_cast<std::size_t>(k), static_cast<std::size_t>(col++)) =
                (k % 2 == 0 ? flat_scale : -flat_scale);
    }
    return Frame(std::move(rows), "harmonic");
}

}  // namespace frameopt
