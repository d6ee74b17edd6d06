#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qnr/matrix.hpp"

namespace qnr {

struct SymEigenResult {
    std::vector<double> values; // descending
    RealMatrix vectors;         // orthonormal columns, M = V diag(values) V^T
};

namespace detail {

inline double offdiag_norm(const RealMatrix& a) {
    double acc = 0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) acc += 2 * a(p, q) * a(p, q);
    return std::sqrt(acc);
}

} // namespace detail

/// Cyclic Jacobi for dense real symmetric matrices.  Every eigen
/// computation in this project funnels through here: quaternionic and
/// complex Hermitian problems are embedded to real symmetric form first.
///
/// Each sweep visits all (p,q) pairs and applies the rotation that zeroes
/// A[p][q]; off-diagonal mass is strictly decreasing and the iteration
/// converges quadratically once small.  Returns eigenvalues in descending
/// order with matching orthonormal eigenvector columns.
inline SymEigenResult sym_eigen(const RealMatrix& m_in) {
    detail::require(m_in.rows() == m_in.cols(), "sym_eigen: matrix must be square");
    const std::size_t n = m_in.rows();
    const double scale = frobenius(m_in);
    detail::require(frobenius(m_in - transpose(m_in)) <= 1e-12 * std::max(1.0, scale),
                    "sym_eigen: matrix is not symmetric");

    RealMatrix a = sym_part(m_in); // exact symmetry for the rotations
    RealMatrix v = RealMatrix::identity(n);
    if (n == 0) return {{}, v};

    const double stop = 1e-13 * std::max(scale, 1e-300);
    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_norm(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp - s * (arq + tau * arp);
                    a(r, q) = arq + s * (arp - tau * arq);
                    a(p, r) = a(r, p);
                    a(q, r) = a(r, q);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    if (sweep == max_sweeps && detail::offdiag_norm(a) > 1e-10 * std::max(scale, 1e-300))
        throw std::runtime_error("sym_eigen: Jacobi sweeps failed to converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t s, std::size_t t) { return a(s, s) > a(t, t); });

    SymEigenResult res;
    res.values.resize(n);
    res.vectors = RealMatrix(n, n);
    for (std::size_t t = 0; t < n; ++t) {
        res.values[t] = a(order[t], order[t]);
        for (std::size_t r = 0; r < n; ++r) res.vectors(r, t) = v(r, order[t]);
    }
    return res;
}

/// Largest eigenvalue only (still Jacobi under the hood).
inline double sym_eigen_max(const RealMatrix& m) { return sym_eigen(m).values.front(); }

} // namespace qnr
