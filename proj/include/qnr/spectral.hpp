#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qnr/jacobi.hpp"
#include "qnr/matrix.hpp"
#include "qnr/repr.hpp"

namespace qnr {

struct EigenResult {
    std::vector<double> values; // real, descending
    QuatMatrix vectors;         // orthonormal columns, A u_s = u_s values[s]
};

struct SvdResult {
    std::vector<double> singulars; // positive, descending (rank entries)
    QuatMatrix left;               // m x rank
    QuatMatrix right;              // n x rank
    std::size_t rank = 0;
};

struct ComplexEigenResult {
    std::vector<double> values;
    ComplexMatrix vectors;
};

namespace detail {

template <typename T>
T column_dot(const Matrix<T>& a, std::size_t ca, const Matrix<T>& b, std::size_t cb) {
    T acc{};
    for (std::size_t r = 0; r < a.rows(); ++r) acc += conj_of(a(r, ca)) * b(r, cb);
    return acc;
}

template <typename T>
double column_norm(const Matrix<T>& a, std::size_t c) {
    double acc = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) acc += abs_sq(a(r, c));
    return std::sqrt(acc);
}

// v <- v - u <u,v> over accepted columns of basis; right-module projection.
template <typename T>
void project_out(std::vector<T>& v, const Matrix<T>& basis, std::size_t ncols) {
    for (std::size_t c = 0; c < ncols; ++c) {
        T coef{};
        for (std::size_t r = 0; r < v.size(); ++r) coef += conj_of(basis(r, c)) * v[r];
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= basis(r, c) * coef;
    }
}

} // namespace detail

/// Gram-Schmidt with re-orthogonalization; dependent columns are dropped at
/// threshold 1e-10 relative to the incoming column norm.  For quaternionic
/// input the columns span the same right-submodule.
template <typename T>
Matrix<T> gram_schmidt(const Matrix<T>& v, double drop_tol = 1e-10) {
    const std::size_t m = v.rows();
    Matrix<T> u(m, v.cols());
    std::size_t kept = 0;
    for (std::size_t c = 0; c < v.cols(); ++c) {
        std::vector<T> w(m);
        double in_norm = 0;
        for (std::size_t r = 0; r < m; ++r) {
            w[r] = v(r, c);
            in_norm += detail::abs_sq(w[r]);
        }
        in_norm = std::sqrt(in_norm);
        detail::project_out(w, u, kept);
        detail::project_out(w, u, kept);
        double norm = 0;
        for (const auto& q : w) norm += detail::abs_sq(q);
        norm = std::sqrt(norm);
        if (norm <= drop_tol * (1.0 + in_norm)) continue;
        for (std::size_t r = 0; r < m; ++r) u(r, kept) = w[r] * (1.0 / norm);
        ++kept;
    }
    return block(u, 0, 0, m, kept);
}

/// H(A) = [[0, A], [A*, 0]]; Hermitian with nonzero eigenvalues +-sigma_l(A).
inline QuatMatrix h_block(const QuatMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    QuatMatrix h(m + n, m + n);
    set_block(h, 0, m, a);
    set_block(h, m, 0, adjoint(a));
    return h;
}

inline ComplexMatrix h_block(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    ComplexMatrix h(m + n, m + n);
    set_block(h, 0, m, a);
    set_block(h, m, 0, adjoint(a));
    return h;
}

/// Eigendecomposition of a complex Hermitian matrix via the real symmetric
/// embedding.  Eigenvalues of the embedding come in pairs; the pair spread
/// is asserted and collapsed.
inline ComplexEigenResult complex_herm_eigen(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    const double scale = 1.0 + frobenius(h);
    detail::require(is_hermitian(h, 1e-10 * scale), "complex_herm_eigen: input is not Hermitian");
    const SymEigenResult se = sym_eigen(herm_to_real_sym(h));

    ComplexEigenResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t l = 0; l < n; ++l) {
        const double hi = se.values[2 * l], lo = se.values[2 * l + 1];
        if (hi - lo > 1e-8 * scale)
            throw std::runtime_error("complex_herm_eigen: eigenvalue pairing violated");
        res.values[l] = 0.5 * (hi + lo);
    }
    // Greedy orthonormal selection: each embedded eigenvector (u, v) maps to
    // u + i v; a pair of real columns maps onto one complex direction.
    const std::vector<double> group_vals = res.values;
    std::size_t kept = 0;
    for (std::size_t c = 0; c < 2 * n && kept < n; ++c) {
        std::vector<std::complex<double>> w(n);
        for (std::size_t r = 0; r < n; ++r) w[r] = {se.vectors(r, c), se.vectors(n + r, c)};
        detail::project_out(w, res.vectors, kept);
        detail::project_out(w, res.vectors, kept);
        double norm = 0;
        for (const auto& q : w) norm += std::norm(q);
        norm = std::sqrt(norm);
        if (norm <= 1e-4) continue;
        for (std::size_t r = 0; r < n; ++r) res.vectors(r, kept) = w[r] / norm;
        res.values[kept] = group_vals[std::min(c / 2, n - 1)];
        ++kept;
    }
    if (kept != n) throw std::runtime_error("complex_herm_eigen: eigenvector extraction failed");
    return res;
}

/// Eigendecomposition of a Hermitian quaternionic matrix.
///
/// Pipeline: A -> C(A) -> real symmetric embedding -> cyclic Jacobi.  The
/// 4n embedded eigenvalues carry each eigenvalue of A four times; groups
/// with spread above 1e-8 * (1 + |A|_F) signal an eigensolver failure.
/// Eigenvectors are mapped back from embedding columns ([a; b] of C(A)
/// gives a - conj(b) j) and re-orthonormalized quaternionically.
inline EigenResult hermitian_eigen(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "hermitian_eigen: matrix must be square");
    const std::size_t n = a.rows();
    const double scale = 1.0 + frobenius(a);
    detail::require(is_hermitian(a, 1e-10 * scale), "hermitian_eigen: input is not Hermitian");
    if (n == 0) return {{}, QuatMatrix()};

    const SymEigenResult se = sym_eigen(herm_to_real_sym(complex_repr(a)));

    EigenResult res;
    res.values.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        const double hi = se.values[4 * l], lo = se.values[4 * l + 3];
        if (hi - lo > 1e-8 * scale)
            throw std::runtime_error("hermitian_eigen: eigenvalue pairing violated");
        res.values[l] = 0.25 * (se.values[4 * l] + se.values[4 * l + 1] + se.values[4 * l + 2] +
                                se.values[4 * l + 3]);
    }

    res.vectors = QuatMatrix(n, n);
    const std::vector<double> group_vals = res.values;
    std::size_t kept = 0;
    for (std::size_t c = 0; c < 4 * n && kept < n; ++c) {
        // real column (u, v) of the embedding -> complex [a; b] -> quaternion.
        std::vector<Quaternion> w(n);
        for (std::size_t r = 0; r < n; ++r) {
            const std::complex<double> top{se.vectors(r, c), se.vectors(2 * n + r, c)};
            const std::complex<double> bot{se.vectors(n + r, c), se.vectors(3 * n + r, c)};
            w[r] = Quaternion::from_complex_pair(top, -std::conj(bot));
        }
        detail::project_out(w, res.vectors, kept);
        detail::project_out(w, res.vectors, kept);
        double norm = 0;
        for (const auto& q : w) norm += q.norm_sq();
        norm = std::sqrt(norm);
        if (norm <= 1e-4) continue;
        for (std::size_t r = 0; r < n; ++r) res.vectors(r, kept) = w[r] * (1.0 / norm);
        res.values[kept] = group_vals[std::min<std::size_t>(c / 4, n - 1)];
        ++kept;
    }
    if (kept != n) throw std::runtime_error("hermitian_eigen: eigenvector extraction failed");

    // Residual check: A u_s = u_s lambda_s within 1e-9 * (1 + |A|_F).
    const QuatMatrix au = a * res.vectors;
    for (std::size_t s = 0; s < n; ++s) {
        double resid = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const Quaternion d = au(r, s) - res.vectors(r, s) * res.values[s];
            resid += d.norm_sq();
        }
        if (std::sqrt(resid) > 1e-9 * scale)
            throw std::runtime_error("hermitian_eigen: eigenpair residual too large");
    }
    return res;
}

/// SVD through the Hermitian block matrix H(A) = [[0, A], [A*, 0]], whose
/// positive spectrum is exactly the singular values (no squaring, so tiny
/// singular values are resolved to eigensolver precision).  A unit
/// eigenvector [w; z] at +sigma satisfies A z = sigma w with |w| = |z| =
/// 1/sqrt(2); scaling by sqrt(2) yields matched orthonormal singular vector
/// pairs, degenerate blocks included.  rank counts singular values above
/// 1e-10 * (1 + |A|_F).
inline SvdResult svd(const QuatMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    const double scale = 1.0 + frobenius(a);
    const EigenResult eig = hermitian_eigen(h_block(a));

    const double thresh = 1e-10 * scale;
    SvdResult res;
    const std::size_t kmax = std::min(m, n);
    for (std::size_t s = 0; s < kmax; ++s)
        if (eig.values[s] > thresh) res.singulars.push_back(eig.values[s]);
    res.rank = res.singulars.size();

    res.left = QuatMatrix(m, res.rank);
    res.right = QuatMatrix(n, res.rank);
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t s = 0; s < res.rank; ++s) {
        for (std::size_t r = 0; r < m; ++r) res.left(r, s) = eig.vectors(r, s) * sqrt2;
        for (std::size_t r = 0; r < n; ++r) res.right(r, s) = eig.vectors(m + r, s) * sqrt2;
    }
    if (res.rank) {
        const QuatMatrix gl = adjoint(res.left) * res.left;
        const QuatMatrix gr = adjoint(res.right) * res.right;
        const QuatMatrix id = to_quat(RealMatrix::identity(res.rank));
        if (frobenius(gl - id) > 1e-8 || frobenius(gr - id) > 1e-8)
            throw std::runtime_error("svd: singular vectors lost orthonormality");
    }
    return res;
}

/// p-Schatten norm; p = infinity gives the spectral norm, p = 1 the nuclear
/// norm, p = 2 the Frobenius norm.
inline double schatten(const QuatMatrix& a, double p) {
    detail::require(p >= 1.0 && !std::isnan(p), "schatten: p must satisfy p >= 1");
    const SvdResult s = svd(a);
    if (s.singulars.empty()) return 0.0;
    if (std::isinf(p)) return s.singulars.front();
    double acc = 0;
    for (double sig : s.singulars) acc += std::pow(sig, p);
    return std::pow(acc, 1.0 / p);
}

inline double spectral_norm(const QuatMatrix& a) {
    return schatten(a, std::numeric_limits<double>::infinity());
}

inline bool is_psd(const QuatMatrix& a) {
    const EigenResult eig = hermitian_eigen(a);
    if (eig.values.empty()) return true;
    return eig.values.back() >= -1e-9 * (1.0 + frobenius(a));
}

inline double complex_spectral_norm(const ComplexMatrix& c) {
    if (c.rows() == 0 || c.cols() == 0) return 0.0;
    const ComplexEigenResult eig = complex_herm_eigen(h_block(c));
    return std::max(eig.values.front(), 0.0);
}

} // namespace qnr
