#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qnr/jacobi.hpp"
#include "qnr/matrix.hpp"
#include "qnr/numrange.hpp"
#include "qnr/repr.hpp"
#include "qnr/rng.hpp"
#include "qnr/sdp.hpp"

namespace qnr {

/// S = (A + A^T)/2; the pseudo-numerical range of A depends only on this.
inline ComplexMatrix symmetrize(const ComplexMatrix& a) {
    detail::require(a.rows() == a.cols(), "symmetrize: matrix must be square");
    ComplexMatrix s = a + transpose(a);
    return 0.5 * s;
}

/// x^T A x for a unit complex column x.
inline std::complex<double> prange_point(const ComplexMatrix& a, const ComplexMatrix& x) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < a.cols(); ++t) {
        std::complex<double> row = 0;
        for (std::size_t r = 0; r < a.rows(); ++r) row += x(r, 0) * a(r, t);
        acc += row * x(t, 0);
    }
    return acc;
}

/// The pair of real symmetric matrices of order 2n carrying the pseudo-form:
/// for x = u + i v,  x^T S x = w^T Shat1 w + i w^T Shat2 w with w = [u; v].
struct SHatPair {
    RealMatrix s1hat;
    RealMatrix s2hat;
    std::size_t n = 0;

    RealMatrix combine(double theta) const {
        RealMatrix m = std::cos(theta) * s1hat;
        m += std::sin(theta) * s2hat;
        return m;
    }
};

/// Builds Shat1 = [[S1, -S2], [-S2, -S1]] and Shat2 = [[S2, S1], [S1, -S2]]
/// from S = S1 + S2 i, and verifies the defining identity on 100 random
/// probes before returning.
inline SHatPair build_shat(const ComplexMatrix& s) {
    const std::size_t n = s.rows();
    const double scale = 1.0 + frobenius(s);
    detail::require(s.rows() == s.cols(), "build_shat: matrix must be square");
    detail::require(frobenius(s - transpose(s)) <= 1e-10 * scale,
                    "build_shat: matrix must be symmetric");

    const RealMatrix s1 = real_part(s), s2 = imag_part(s);
    SHatPair hat;
    hat.n = n;
    hat.s1hat = RealMatrix(2 * n, 2 * n);
    hat.s2hat = RealMatrix(2 * n, 2 * n);
    set_block(hat.s1hat, 0, 0, s1);
    set_block(hat.s1hat, 0, n, -s2);
    set_block(hat.s1hat, n, 0, -s2);
    set_block(hat.s1hat, n, n, -s1);
    set_block(hat.s2hat, 0, 0, s2);
    set_block(hat.s2hat, 0, n, s1);
    set_block(hat.s2hat, n, 0, s1);
    set_block(hat.s2hat, n, n, -s2);

    Rng rng(0x51a7);
    for (int probe = 0; probe < 100; ++probe) {
        const ComplexMatrix x = rng.unit_complex_vector(n);
        const std::complex<double> want = prange_point(s, x);
        std::vector<double> w(2 * n);
        for (std::size_t r = 0; r < n; ++r) {
            w[r] = x(r, 0).real();
            w[n + r] = x(r, 0).imag();
        }
        double re = 0, im = 0;
        for (std::size_t p = 0; p < 2 * n; ++p) {
            double row1 = 0, row2 = 0;
            for (std::size_t q = 0; q < 2 * n; ++q) {
                row1 += hat.s1hat(p, q) * w[q];
                row2 += hat.s2hat(p, q) * w[q];
            }
            re += w[p] * row1;
            im += w[p] * row2;
        }
        if (std::abs(re - want.real()) > 1e-10 * scale ||
            std::abs(im - want.imag()) > 1e-10 * scale)
            throw std::runtime_error("build_shat: probe identity failed");
    }
    return hat;
}

/// Supporting slab of co(W_pi(A)) at angle theta: the extreme eigenvalues of
/// cos(theta) Shat1 + sin(theta) Shat2.
inline std::pair<double, double> prange_support(const SHatPair& hat, double theta) {
    const SymEigenResult e = sym_eigen(hat.combine(theta));
    return {e.values.back(), e.values.front()};
}

inline std::pair<double, double> prange_support(const ComplexMatrix& a, double theta) {
    return prange_support(build_shat(symmetrize(a)), theta);
}

/// r_pi(A) = max over theta of lambda_max(cos theta Shat1 + sin theta Shat2),
/// by a theta grid (default 720 points) plus golden-section refinement of the
/// best bracket.  The eigenvalue is Lipschitz in theta with constant bounded
/// by |Shat1| + |Shat2|, so the grid pins the bracketing error.
struct PradiusResult {
    double value = 0;
    double theta = 0;
};

inline PradiusResult pradius_detailed(const SHatPair& hat, double tol = 1e-12,
                                      int grid = 720) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    auto f = [&](double theta) { return sym_eigen(hat.combine(theta)).values.front(); };

    double best_f = -1e300, best_theta = 0;
    for (int g = 0; g < grid; ++g) {
        const double theta = two_pi * g / grid;
        const double v = f(theta);
        if (v > best_f) {
            best_f = v;
            best_theta = theta;
        }
    }

    // golden-section refinement of the winning bracket
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_theta - two_pi / grid, hi = best_theta + two_pi / grid;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    PradiusResult res;
    res.theta = 0.5 * (lo + hi);
    res.value = std::max({best_f, f1, f2});
    return res;
}

inline double pradius(const ComplexMatrix& a, double tol = 1e-12) {
    const ComplexMatrix s = symmetrize(a);
    if (frobenius(s) == 0.0) return 0.0;
    return pradius_detailed(build_shat(s), tol).value;
}

/// r_pi(A) = r(C) for C = Shat1 + Shat2 i, computed through the complex-case
/// radius SDP; independent of the theta sweep.
inline SdpSolution pradius_via_complex_radius(const ComplexMatrix& a, double eps = 1e-7) {
    const SHatPair hat = build_shat(symmetrize(a));
    const ComplexMatrix c = real_pair_to_complex(hat.s1hat, hat.s2hat);
    return complex_radius_sdp(c, eps);
}

/// N points x^T A x with x uniform on the unit sphere of C^n.
inline std::vector<std::complex<double>> sample_prange(const ComplexMatrix& a,
                                                       std::size_t count,
                                                       std::uint64_t seed = 0) {
    detail::require(a.rows() == a.cols(), "sample_prange: matrix must be square");
    detail::require(count >= 1, "sample_prange: need at least one sample");
    Rng rng(seed);
    std::vector<std::complex<double>> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s)
        pts.push_back(prange_point(a, rng.unit_complex_vector(a.rows())));
    return pts;
}

/// Supporting slab of the classical numerical range W(M) of a complex matrix
/// at angle theta: extreme eigenvalues of the Hermitian part of e^{-i theta} M.
inline std::pair<double, double> complex_range_support(const ComplexMatrix& m, double theta) {
    const std::complex<double> phase{std::cos(theta), -std::sin(theta)};
    ComplexMatrix h = phase * m;
    h = 0.5 * (h + adjoint(h));
    const SymEigenResult e = sym_eigen(herm_to_real_sym(h));
    return {e.values.back(), e.values.front()};
}

/// Projection identities: P1(W(A)) = W(C(A)) and P2(W(A)) = W_pi(C(-A j)).
/// Samples W(A), projects, and checks containment in the supporting slabs of
/// the right-hand sides; also reports how much of each hull the projected
/// cloud fills (the reverse gap).
struct ProjectionReport {
    double p1_max_violation = 0; // containment: <= 0 means fully inside
    double p2_max_violation = 0;
    double p1_reverse_gap = 0; // hull support minus best cloud support
    double p2_reverse_gap = 0;
    double p1_sampling_gap = 0; // same, random cloud only (no witnesses)
    double p2_sampling_gap = 0;
    std::size_t samples = 0;
    std::size_t angles = 0;
};

inline ProjectionReport projection_check(const QuatMatrix& a, std::size_t samples = 10000,
                                         std::size_t angles = 36, std::uint64_t seed = 0) {
    detail::require(a.rows() == a.cols(), "projection_check: matrix must be square");
    const double two_pi = 2.0 * 3.14159265358979323846;

    // W(A) is invariant under unit-quaternion conjugation, so each sample
    // w = x* A x carries its whole orbit {conj(q) w q}: real part fixed, the
    // imaginary vector rotated freely.  Per direction the orbit's support
    // coordinate is available in closed form, which removes the phase
    // dimensions from the sampling error.
    const std::vector<Quaternion> cloud = sample_range(a, samples, seed);
    std::vector<std::pair<double, double>> re_im(cloud.size()); // (Re w, |Im w|)
    for (std::size_t s = 0; s < cloud.size(); ++s) {
        const Quaternion& w = cloud[s];
        re_im[s] = {w.w, std::sqrt(w.x * w.x + w.y * w.y + w.z * w.z)};
    }

    const std::size_t n = a.rows();
    const ComplexMatrix ca = complex_repr(a);
    // C(-A j): with A = A1 + A2 j, -A j = A2 - A1 j
    const auto [a1, a2] = split(a);
    const ComplexMatrix c_maj = complex_repr(join(a2, -a1));
    const SHatPair hat = build_shat(symmetrize(c_maj));

    ProjectionReport rep;
    rep.samples = samples;
    rep.angles = angles;
    rep.p1_max_violation = -1e300;
    rep.p2_max_violation = -1e300;
    rep.p1_reverse_gap = -1e300;
    rep.p2_reverse_gap = -1e300;
    rep.p1_sampling_gap = -1e300;
    rep.p2_sampling_gap = -1e300;

    for (std::size_t g = 0; g < angles; ++g) {
        const double theta = two_pi * g / angles;
        const double ct = std::cos(theta), st = std::sin(theta);

        const std::complex<double> phase{ct, -st};
        ComplexMatrix herm = phase * ca;
        herm = 0.5 * (herm + adjoint(herm));
        const ComplexEigenResult e1 = complex_herm_eigen(herm);
        const double hi1 = e1.values.front();
        const SymEigenResult e2 = sym_eigen(hat.combine(theta));
        const double hi2 = e2.values.front();

        double s1 = -1e300, s2 = -1e300;
        for (const auto& [re, im] : re_im) {
            // P1 orbit = segment {(re, t) : |t| <= im}; P2 orbit = disk of
            // radius im around the origin
            s1 = std::max(s1, ct * re + std::abs(st) * im);
            s2 = std::max(s2, im);
        }
        rep.p1_sampling_gap = std::max(rep.p1_sampling_gap, hi1 - s1);
        rep.p2_sampling_gap = std::max(rep.p2_sampling_gap, hi2 - s2);

        // Directional witnesses: both projection identities are constructive,
        // so the extreme point of each hull is the projection of an explicit
        // range point.  For P1, the top eigenvector y of Herm(e^{-i theta}
        // C(A)) lifts to z with [u; v] = conj(y); for P2, the top embedding
        // eigenvector [s; t] lifts through x_c = s - ... (coords of W_pi).
        {
            QuatMatrix z(n, 1);
            for (std::size_t r = 0; r < n; ++r)
                z(r, 0) = Quaternion::from_complex_pair(std::conj(e1.vectors(r, 0)),
                                                        std::conj(e1.vectors(n + r, 0)));
            const Quaternion w = detail::range_form(a, z);
            const double im = std::sqrt(w.x * w.x + w.y * w.y + w.z * w.z);
            s1 = std::max(s1, ct * w.w + std::abs(st) * im);
            s2 = std::max(s2, im);
        }
        {
            // real embedding coordinates [u_r; v_r] of the W_pi maximizer
            QuatMatrix z(n, 1);
            for (std::size_t r = 0; r < n; ++r) {
                const std::complex<double> u{e2.vectors(r, 0), e2.vectors(2 * n + r, 0)};
                const std::complex<double> v{e2.vectors(n + r, 0), e2.vectors(3 * n + r, 0)};
                z(r, 0) = Quaternion::from_complex_pair(u, v);
            }
            const Quaternion w = detail::range_form(a, z);
            const double im = std::sqrt(w.x * w.x + w.y * w.y + w.z * w.z);
            s1 = std::max(s1, ct * w.w + std::abs(st) * im);
            s2 = std::max(s2, im);
        }

        rep.p1_max_violation = std::max(rep.p1_max_violation, s1 - hi1);
        rep.p2_max_violation = std::max(rep.p2_max_violation, s2 - hi2);
        rep.p1_reverse_gap = std::max(rep.p1_reverse_gap, hi1 - s1);
        rep.p2_reverse_gap = std::max(rep.p2_reverse_gap, hi2 - s2);
    }
    return rep;
}

/// Experiment for the open hull question "co(W_pi(S)) = W(C)?", C = Shat1 +
/// Shat2 i: reports the support-function discrepancy over an angle fan.
/// This is measurement, not assertion; the question is open.
struct HullGapStats {
    double max_abs_gap = 0;
    double mean_abs_gap = 0;
    std::size_t angles = 0;
};

inline HullGapStats hull_gap_experiment(const ComplexMatrix& a, std::size_t angles = 360) {
    const SHatPair hat = build_shat(symmetrize(a));
    const ComplexMatrix c = real_pair_to_complex(hat.s1hat, hat.s2hat);
    const double two_pi = 2.0 * 3.14159265358979323846;

    HullGapStats stats;
    stats.angles = angles;
    double acc = 0;
    for (std::size_t g = 0; g < angles; ++g) {
        const double theta = two_pi * g / angles;
        const auto [lo_pi, hi_pi] = prange_support(hat, theta);
        const auto [lo_c, hi_c] = complex_range_support(c, theta);
        (void)lo_pi;
        (void)lo_c;
        const double gap = std::abs(hi_pi - hi_c);
        stats.max_abs_gap = std::max(stats.max_abs_gap, gap);
        acc += gap;
    }
    stats.mean_abs_gap = acc / angles;
    return stats;
}

} // namespace qnr
