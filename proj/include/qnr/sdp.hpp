#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnr/jacobi.hpp"
#include "qnr/matrix.hpp"
#include "qnr/repr.hpp"
#include "qnr/spectral.hpp"

namespace qnr {

/// SDP in span form over the real symmetric cone:
///   minimize c . s   subject to   X(s) = X0 + sum_i s_i X_i  PSD.
/// Quaternionic and complex Hermitian problems arrive here through their
/// real embeddings; embed_scale records the trace scale factor (4 for the
/// quaternionic embedding, 2 for the complex one, 1 for native real data).
struct SdpProblem {
    RealMatrix x0;
    std::vector<RealMatrix> xs;
    std::vector<double> c;
    double embed_scale = 1.0;
    std::string origin;

    std::size_t order() const { return x0.rows(); }
    std::size_t num_vars() const { return xs.size(); }

    RealMatrix at(const std::vector<double>& s) const {
        detail::require(s.size() == xs.size(), "SdpProblem::at: wrong number of variables");
        RealMatrix x = x0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double si = s[i];
            for (std::size_t t = 0; t < x.data().size(); ++t)
                x.data()[t] += si * xs[i].data()[t];
        }
        return x;
    }

    /// Shape/symmetry checks plus linear independence of X_1..X_k via the
    /// Gram spectrum at threshold 1e-10.
    void validate() const {
        detail::require(x0.rows() == x0.cols(), "SdpProblem: X0 must be square");
        detail::require(c.size() == xs.size(), "SdpProblem: |c| must equal |X_i|");
        const auto check_sym = [](const RealMatrix& m) {
            detail::require(m.rows() == m.cols() &&
                                frobenius(m - transpose(m)) <= 1e-12 * (1.0 + frobenius(m)),
                            "SdpProblem: constraint matrices must be symmetric");
        };
        check_sym(x0);
        for (const auto& x : xs) {
            check_sym(x);
            detail::require(x.rows() == x0.rows(), "SdpProblem: order mismatch");
        }
        if (xs.empty()) return;
        RealMatrix gram(xs.size(), xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i; j < xs.size(); ++j)
                gram(i, j) = gram(j, i) = inner_re(xs[i], xs[j]);
        const SymEigenResult eg = sym_eigen(gram);
        if (eg.values.back() <= 1e-10 * std::max(1.0, eg.values.front()))
            throw std::invalid_argument("SdpProblem: X_i are linearly dependent");
    }
};

struct SdpSolution {
    std::vector<double> s_star;
    double value = 0;
    RealMatrix dual_matrix;
    double dual_value = 0;
    double gap = 0;
    int iterations = 0;
    double dual_residual = 0;  // max_i |tr(X_i Z) - c_i|
    double primal_min_eig = 0; // lambda_min(X(s*))
    double dual_min_eig = 0;   // lambda_min(Z)
    double mu_final = 0;
};

struct SdpBuild {
    SdpProblem problem;
    std::vector<double> start;
};

/// Conditioned instance per the polynomial-computability construction:
/// interior point with a ball of radius r_ball inside the feasible set,
/// which itself sits inside the ball of radius R_ball around the start.
struct ConditionedSdpBuild {
    SdpProblem problem;
    std::vector<double> start;
    double r_ball = 0;
    double R_ball = 0;
    double omega = 0;
};

namespace detail {

inline bool cholesky(const RealMatrix& a, RealMatrix& l) {
    const std::size_t n = a.rows();
    l = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / ljj;
        }
    }
    return true;
}

inline double logdet_from_cholesky(const RealMatrix& l) {
    double acc = 0;
    for (std::size_t j = 0; j < l.rows(); ++j) acc += std::log(l(j, j));
    return 2.0 * acc;
}

/// Solve L W = B for lower-triangular L.
inline RealMatrix forward_solve(const RealMatrix& l, const RealMatrix& b) {
    const std::size_t n = l.rows(), m = b.cols();
    RealMatrix w = b;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            double v = w(r, c);
            for (std::size_t k = 0; k < r; ++k) v -= l(r, k) * w(k, c);
            w(r, c) = v / l(r, r);
        }
    }
    return w;
}

inline std::vector<double> spd_solve(const RealMatrix& a, std::vector<double> b) {
    RealMatrix l;
    RealMatrix work = a;
    double ridge = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (cholesky(work, l)) {
            const std::size_t n = a.rows();
            // forward then backward substitution
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t k = 0; k < r; ++k) b[r] -= l(r, k) * b[k];
                b[r] /= l(r, r);
            }
            for (std::size_t r = n; r-- > 0;) {
                for (std::size_t k = r + 1; k < n; ++k) b[r] -= l(k, r) * b[k];
                b[r] /= l(r, r);
            }
            return b;
        }
        ridge = (ridge == 0 ? 1e-14 : ridge * 100) * (1.0 + frobenius(a));
        work = a;
        for (std::size_t r = 0; r < a.rows(); ++r) work(r, r) += ridge;
    }
    throw std::runtime_error("sdp: Newton linear system is singular");
}

inline double dot(const RealMatrix& a, const RealMatrix& b) {
    double acc = 0;
    for (std::size_t t = 0; t < a.data().size(); ++t) acc += a.data()[t] * b.data()[t];
    return acc;
}

} // namespace detail

/// Short-step primal path-following with the log-det barrier.
///
/// Phase 1 centers the strictly feasible start at mu0 with damped Newton
/// steps; phase 2 follows the central path with the conservative update
/// mu <- mu (1 - 1/(8 sqrt(nu))), nu = cone order, one Newton step per
/// update, until nu mu certifies the requested gap.
///
/// The dual certificate is the Newton-corrected multiplier
///   Z = mu (X^{-1} - X^{-1} DX X^{-1}),   DX = sum_i delta_i X_i,
/// which satisfies tr(X_i Z) = c_i exactly by the Newton equations and is
/// positive definite whenever the decrement stays below sqrt(mu); a final
/// least-squares touch-up removes the linear-solver roundoff.  Weak duality
/// is checked before reporting.
inline SdpSolution solve(const SdpProblem& p, const std::vector<double>& start,
                         double eps = 1e-7) {
    p.validate();
    detail::require(eps > 0, "sdp solve: eps must be positive");
    const std::size_t n = p.order();
    const std::size_t k = p.num_vars();
    detail::require(start.size() == k, "sdp solve: start has wrong dimension");

    std::vector<double> s = start;
    {
        const RealMatrix x_start = p.at(s);
        const SymEigenResult e = sym_eigen(x_start);
        if (e.values.back() < 1e-8 * (1.0 + frobenius(x_start)))
            throw std::invalid_argument("sdp solve: start is not strictly feasible");
    }

    const double nu = static_cast<double>(n);
    double mu = 1.0 + frobenius(p.at(s));
    const double mu_target = 0.25 * eps / nu;
    const double gap0 = nu * mu;
    const int iter_cap =
        static_cast<int>(10.0 * std::sqrt(nu) * std::log(std::max(gap0 / eps, 2.0)) * 5.0) + 200;

    int iterations = 0;

    auto barrier_value = [&](const std::vector<double>& sv, double& out) {
        RealMatrix l;
        if (!detail::cholesky(p.at(sv), l)) return false;
        double lin = 0;
        for (std::size_t i = 0; i < k; ++i) lin += p.c[i] * sv[i];
        out = lin - mu * detail::logdet_from_cholesky(l);
        return true;
    };

    // Newton data at the current iterate: scaled constraint images
    // Ytil_i = L^{-1} X_i L^{-T}, gradient, Hessian, and the Newton step.
    struct NewtonData {
        RealMatrix l;
        std::vector<RealMatrix> ytil;
        std::vector<double> g;
        std::vector<double> delta;
        double decrement = 0;
    };
    auto newton_data = [&]() {
        NewtonData nd;
        const RealMatrix x = p.at(s);
        if (!detail::cholesky(x, nd.l))
            throw std::runtime_error("sdp solve: iterate left the cone");
        nd.ytil.resize(k);
        nd.g.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            const RealMatrix w = detail::forward_solve(nd.l, p.xs[i]);
            nd.ytil[i] = detail::forward_solve(nd.l, transpose(w));
            double tr = 0;
            for (std::size_t r = 0; r < n; ++r) tr += nd.ytil[i](r, r);
            nd.g[i] = p.c[i] - mu * tr;
        }
        RealMatrix h(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j)
                h(i, j) = h(j, i) = mu * detail::dot(nd.ytil[i], nd.ytil[j]);
        std::vector<double> rhs(k);
        for (std::size_t i = 0; i < k; ++i) rhs[i] = -nd.g[i];
        nd.delta = detail::spd_solve(h, rhs);
        double lambda_sq = 0;
        for (std::size_t i = 0; i < k; ++i) lambda_sq -= nd.g[i] * nd.delta[i];
        nd.decrement = std::sqrt(std::max(lambda_sq, 0.0));
        return nd;
    };

    // Advance s by a safeguarded Newton step; returns the decrement at the
    // point the step started from.
    auto newton_step = [&](bool damped) {
        const NewtonData nd = newton_data();
        const double lambda_sq = nd.decrement * nd.decrement;
        double alpha = 1.0;
        double phi0 = 0;
        const bool have_phi0 = damped ? barrier_value(s, phi0) : true;
        for (int bt = 0; bt < 80; ++bt) {
            std::vector<double> cand = s;
            for (std::size_t i = 0; i < k; ++i) cand[i] += alpha * nd.delta[i];
            double phi1 = 0;
            if (barrier_value(cand, phi1)) {
                if (!damped || !have_phi0 || phi1 <= phi0 - 0.25 * alpha * lambda_sq) {
                    s = std::move(cand);
                    return nd.decrement;
                }
            }
            alpha *= 0.5;
        }
        throw std::runtime_error("sdp solve: line search failed");
    };

    // Phase 1: center the start at mu0.
    while (true) {
        if (++iterations > iter_cap)
            throw std::runtime_error("sdp solve: iteration cap " + std::to_string(iter_cap) +
                                     " exceeded while centering");
        if (newton_step(true) <= 0.125) break;
    }

    // Phase 2: follow the path.
    const double shrink = 1.0 - 1.0 / (8.0 * std::sqrt(nu));
    while (mu > mu_target) {
        if (++iterations > iter_cap)
            throw std::runtime_error("sdp solve: iteration cap " + std::to_string(iter_cap) +
                                     " exceeded on the path");
        mu *= shrink;
        newton_step(false);
    }

    // Polish at the final mu: the corrected dual below needs the decrement
    // well under sqrt(mu) to stay inside the cone.
    for (int polish = 0; polish < 25; ++polish) {
        ++iterations;
        if (newton_step(false) <= std::min(1e-8, 1e-3 * std::sqrt(mu))) break;
    }

    SdpSolution sol;
    sol.s_star = s;
    sol.iterations = iterations;
    sol.mu_final = mu;
    sol.value = 0;
    for (std::size_t i = 0; i < k; ++i) sol.value += p.c[i] * s[i];

    // Newton-corrected dual certificate:
    //   Z = L^{-T} ( mu (I - sum_i delta_i Ytil_i) ) L^{-1}
    const NewtonData nd = newton_data();
    RealMatrix core = RealMatrix::identity(n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t t = 0; t < core.data().size(); ++t)
            core.data()[t] -= nd.delta[i] * nd.ytil[i].data()[t];
    for (auto& v : core.data()) v *= mu;
    const RealMatrix linv = detail::forward_solve(nd.l, RealMatrix::identity(n));
    RealMatrix z = transpose(linv) * core * linv;
    z = sym_part(z);

    // touch-up: remove linear-solver roundoff from tr(X_i Z) = c_i
    RealMatrix gram(k, k);
    std::vector<double> resid(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j)
            gram(i, j) = gram(j, i) = detail::dot(p.xs[i], p.xs[j]);
        resid[i] = p.c[i] - detail::dot(p.xs[i], z);
    }
    const std::vector<double> corr = detail::spd_solve(gram, resid);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t t = 0; t < z.data().size(); ++t)
            z.data()[t] += corr[i] * p.xs[i].data()[t];

    sol.dual_matrix = z;
    sol.dual_value = -detail::dot(p.x0, z);
    sol.gap = sol.value - sol.dual_value;
    sol.dual_residual = 0;
    for (std::size_t i = 0; i < k; ++i)
        sol.dual_residual =
            std::max(sol.dual_residual, std::abs(detail::dot(p.xs[i], z) - p.c[i]));

    sol.primal_min_eig = sym_eigen(p.at(s)).values.back();
    sol.dual_min_eig = sym_eigen(z).values.back();

    // weak duality is mandatory: a certificate that fails it is worthless
    const double slack = 1e-9 * (1.0 + std::abs(sol.value));
    if (sol.gap < -slack) throw std::runtime_error("sdp solve: weak duality violated");
    if (sol.dual_min_eig < -1e-9 * (1.0 + frobenius(z)))
        throw std::runtime_error("sdp solve: dual certificate lost positive semidefiniteness");
    if (sol.dual_residual > 1e-8 * (1.0 + std::abs(sol.value)))
        throw std::runtime_error("sdp solve: dual feasibility residual too large");
    return sol;
}

/// R(A) with a Hermitian-input guard; the real step behind every
/// quaternionic SDP in this module.  tr embed(A) embed(B) = 4 Re tr AB.
inline RealMatrix embed(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "embed: matrix must be square");
    detail::require(is_hermitian(a, 1e-10 * (1.0 + frobenius(a))),
                    "embed: input is not Hermitian");
    return real_repr(a);
}

inline RealMatrix embed_complex(const ComplexMatrix& h) {
    detail::require(h.rows() == h.cols(), "embed_complex: matrix must be square");
    detail::require(is_hermitian(h, 1e-10 * (1.0 + frobenius(h))),
                    "embed_complex: input is not Hermitian");
    return herm_to_real_sym(h);
}

/// Orthonormal standard basis of the selfadjoint quaternionic matrices
/// H_n(H) under Re tr(AB): the n diagonal units, then for each s < t the
/// four matrices with (s,t)/(t,s) entries (1,1), (i,-i), (j,-j), (k,-k),
/// scaled by 1/sqrt(2).  Dimension n(2n-1).
inline std::vector<QuatMatrix> hermitian_basis(std::size_t n) {
    std::vector<QuatMatrix> basis;
    basis.reserve(n * (2 * n - 1));
    for (std::size_t s = 0; s < n; ++s) {
        QuatMatrix e(n, n);
        e(s, s) = Quaternion::one();
        basis.push_back(e);
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Quaternion units[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                 Quaternion::k()};
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            for (const Quaternion& u : units) {
                QuatMatrix e(n, n);
                e(s, t) = u * inv_sqrt2;
                e(t, s) = u.conj() * inv_sqrt2;
                basis.push_back(e);
            }
    return basis;
}

/// Orthonormal basis of complex Hermitian matrices, dimension n^2.
inline std::vector<ComplexMatrix> hermitian_basis_complex(std::size_t n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(n * n);
    for (std::size_t s = 0; s < n; ++s) {
        ComplexMatrix e(n, n);
        e(s, s) = 1.0;
        basis.push_back(e);
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            ComplexMatrix e(n, n);
            e(s, t) = inv_sqrt2;
            e(t, s) = inv_sqrt2;
            basis.push_back(e);
            ComplexMatrix f(n, n);
            f(s, t) = std::complex<double>(0, inv_sqrt2);
            f(t, s) = std::complex<double>(0, -inv_sqrt2);
            basis.push_back(f);
        }
    return basis;
}

namespace detail {

inline QuatMatrix quat_block_diag(const QuatMatrix& a, const QuatMatrix& b) {
    QuatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    set_block(m, 0, 0, a);
    set_block(m, a.rows(), a.cols(), b);
    return m;
}

inline QuatMatrix quat_append_scalar(const QuatMatrix& a, double t) {
    QuatMatrix m(a.rows() + 1, a.cols() + 1);
    set_block(m, 0, 0, a);
    m(a.rows(), a.cols()) = Quaternion(t);
    return m;
}

} // namespace detail

/// min a such that [[aI + Z, A], [A*, aI - Z]] is PSD, over a in R and
/// Z selfadjoint: the value is the numerical radius r(A).  Variables are
/// (a, coefficients of Z in the standard Hermitian basis); everything is
/// embedded to a real cone of order 8n.  The start a = |A|_inf + 1, Z = 0
/// is strictly feasible.
inline SdpBuild build_radius_sdp(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "build_radius_sdp: matrix must be square");
    const std::size_t n = a.rows();
    const auto basis = hermitian_basis(n);

    SdpProblem p;
    p.origin = "radius-sdp";
    p.embed_scale = 4.0;
    p.x0 = embed(h_block(a));
    p.xs.push_back(real_repr(to_quat(RealMatrix::identity(2 * n)))); // X1 = I_2n
    p.c.push_back(1.0);
    for (const auto& w : basis) {
        p.xs.push_back(embed(detail::quat_block_diag(w, -w)));
        p.c.push_back(0.0);
    }

    std::vector<double> start(p.num_vars(), 0.0);
    start[0] = spectral_norm(a) + 1.0;
    return {std::move(p), std::move(start)};
}

/// min tr W such that [[W, Y], [Y*, W]] is PSD: the value is the dual norm
/// of the numerical radius at Y.  Start W = (sigma_1(Y) + 1) I.
inline SdpBuild build_dual_norm_sdp(const QuatMatrix& y) {
    detail::require(y.rows() == y.cols(), "build_dual_norm_sdp: matrix must be square");
    const std::size_t n = y.rows();
    const auto basis = hermitian_basis(n);

    SdpProblem p;
    p.origin = "dual-norm-sdp";
    p.embed_scale = 4.0;
    p.x0 = embed(h_block(y));
    for (const auto& w : basis) {
        p.xs.push_back(embed(detail::quat_block_diag(w, w)));
        p.c.push_back(trace(w).w); // objective tr W in basis coordinates
    }

    std::vector<double> start(p.num_vars(), 0.0);
    const double s1 = spectral_norm(y) + 1.0;
    for (std::size_t i = 0; i < n; ++i) start[i] = s1; // diagonal units come first
    return {std::move(p), std::move(start)};
}

inline double conditioning_omega(const QuatMatrix& a) {
    return std::ceil(frobenius(a)) + 1.0;
}

/// Well-conditioned radius instance on the (2n+1)-block cone: the slack
/// scalar t absorbs the normalization 2na + t = 3(2n+1) omega(A), the
/// interior point E0 = diag(3 omega I + H(A), 3 omega) has
/// lambda_min > 2 omega, and the feasible set is sandwiched between balls
/// of radius omega and 8n omega around it.
inline ConditionedSdpBuild build_conditioned_radius_sdp(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "build_conditioned_radius_sdp: matrix must be square");
    detail::require(frobenius(a) > 0, "build_conditioned_radius_sdp: A = 0 is degenerate");
    const std::size_t n = a.rows();
    const double om = conditioning_omega(a);
    const auto basis = hermitian_basis(n);

    SdpProblem p;
    p.origin = "conditioned-radius-sdp";
    p.embed_scale = 4.0;
    p.x0 = embed(detail::quat_append_scalar(h_block(a), 3.0 * (2.0 * n + 1.0) * om));
    p.xs.push_back(embed(detail::quat_append_scalar(to_quat(RealMatrix::identity(2 * n)),
                                                    -2.0 * static_cast<double>(n))));
    p.c.push_back(1.0);
    for (const auto& w : basis) {
        p.xs.push_back(embed(detail::quat_append_scalar(detail::quat_block_diag(w, -w), 0.0)));
        p.c.push_back(0.0);
    }

    std::vector<double> start(p.num_vars(), 0.0);
    start[0] = 3.0 * om;
    return {std::move(p), std::move(start), om, 8.0 * n * om, om};
}

/// Well-conditioned dual-norm instance: trace-normalized block
/// diag([[X, A], [A*, X]], t) with tr = (4n+2) omega(A); interior point
/// Z0 = diag(2 omega I + H(A), 2 omega) with lambda_min >= omega and ball
/// radii (omega, 5n omega).
inline ConditionedSdpBuild build_conditioned_dual_sdp(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "build_conditioned_dual_sdp: matrix must be square");
    detail::require(frobenius(a) > 0, "build_conditioned_dual_sdp: A = 0 is degenerate");
    const std::size_t n = a.rows();
    const double om = conditioning_omega(a);
    const auto basis = hermitian_basis(n);

    SdpProblem p;
    p.origin = "conditioned-dual-norm-sdp";
    p.embed_scale = 4.0;
    p.x0 = embed(detail::quat_append_scalar(h_block(a), (4.0 * n + 2.0) * om));
    for (const auto& w : basis) {
        const double trw = trace(w).w;
        p.xs.push_back(
            embed(detail::quat_append_scalar(detail::quat_block_diag(w, w), -2.0 * trw)));
        p.c.push_back(trw);
    }

    std::vector<double> start(p.num_vars(), 0.0);
    for (std::size_t i = 0; i < n; ++i) start[i] = 2.0 * om;
    return {std::move(p), std::move(start), om, 5.0 * n * om, om};
}

/// Complex numerical radius r(C) = min{a : [[aI + Z, C], [C*, aI - Z]] PSD}
/// over the complex Hermitian cone, embedded to real order 4n.
inline SdpSolution complex_radius_sdp(const ComplexMatrix& c, double eps = 1e-7) {
    detail::require(c.rows() == c.cols(), "complex_radius_sdp: matrix must be square");
    const std::size_t n = c.rows();
    const auto basis = hermitian_basis_complex(n);

    SdpProblem p;
    p.origin = "complex-radius-sdp";
    p.embed_scale = 2.0;
    p.x0 = embed_complex(h_block(c));
    p.xs.push_back(embed_complex(ComplexMatrix::identity(2 * n)));
    p.c.push_back(1.0);
    for (const auto& w : basis) {
        ComplexMatrix x(2 * n, 2 * n);
        set_block(x, 0, 0, w);
        set_block(x, n, n, -w);
        p.xs.push_back(embed_complex(x));
        p.c.push_back(0.0);
    }

    std::vector<double> start(p.num_vars(), 0.0);
    start[0] = complex_spectral_norm(c) + 1.0;
    return solve(p, start, eps);
}

/// Affine subspace {X : <A_j, X> = b_j} equal to {X0 + sum s_i X_i}.
struct AffineSpace {
    std::vector<RealMatrix> constraints;
    std::vector<double> rhs;
};

namespace detail {

// Isometric vectorization of symmetric matrices: diagonal entries as-is,
// off-diagonal scaled by sqrt(2), so Euclidean dot = Frobenius inner product.
inline std::vector<double> vech_iso(const RealMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> v;
    v.reserve(n * (n + 1) / 2);
    const double r2 = std::sqrt(2.0);
    for (std::size_t s = 0; s < n; ++s) {
        v.push_back(m(s, s));
        for (std::size_t t = s + 1; t < n; ++t) v.push_back(r2 * m(s, t));
    }
    return v;
}

inline RealMatrix unvech_iso(const std::vector<double>& v, std::size_t n) {
    RealMatrix m(n, n);
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    std::size_t idx = 0;
    for (std::size_t s = 0; s < n; ++s) {
        m(s, s) = v[idx++];
        for (std::size_t t = s + 1; t < n; ++t) {
            m(s, t) = m(t, s) = inv_r2 * v[idx++];
        }
    }
    return m;
}

inline double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t t = 0; t < a.size(); ++t) acc += a[t] * b[t];
    return acc;
}

inline void project_out_vec(std::vector<double>& v,
                            const std::vector<std::vector<double>>& basis) {
    for (const auto& u : basis) {
        const double coef = vdot(u, v);
        for (std::size_t t = 0; t < v.size(); ++t) v[t] -= coef * u[t];
    }
}

} // namespace detail

/// Convert the span form X0 + span{X_i} into constraint form.  Case (a):
/// X0 = 0, all right-hand sides vanish and the A_j span the orthogonal
/// complement of the X_i.  Case (b): X0 independent of the X_i, the last
/// constraint is normalized so that <X0, A_m> = b_m = 1.
inline AffineSpace affine_to_constraints(const RealMatrix& x0,
                                         const std::vector<RealMatrix>& xs) {
    detail::require(!xs.empty(), "affine_to_constraints: need at least one X_i");
    const std::size_t n = x0.rows();
    const std::size_t dim = n * (n + 1) / 2;

    std::vector<std::vector<double>> span;
    for (const auto& x : xs) {
        std::vector<double> v = detail::vech_iso(x);
        detail::project_out_vec(v, span);
        detail::project_out_vec(v, span);
        const double norm = std::sqrt(detail::vdot(v, v));
        if (norm <= 1e-10 * (1.0 + frobenius(x)))
            throw std::invalid_argument("affine_to_constraints: X_i are linearly dependent");
        for (auto& t : v) t /= norm;
        span.push_back(std::move(v));
    }

    const bool homogeneous = frobenius(x0) <= 1e-12;
    std::vector<double> rho; // component of X0 orthogonal to span{X_i}
    if (!homogeneous) {
        rho = detail::vech_iso(x0);
        detail::project_out_vec(rho, span);
        detail::project_out_vec(rho, span);
        const double rnorm = std::sqrt(detail::vdot(rho, rho));
        if (rnorm <= 1e-10 * frobenius(x0))
            throw std::invalid_argument(
                "affine_to_constraints: X0 lies in span{X_i}; shift it to zero first");
    }

    // orthogonal complement of span{X_i} (and X0 in the inhomogeneous case)
    std::vector<std::vector<double>> full = span;
    if (!homogeneous) {
        std::vector<double> rho_unit = rho;
        const double rn = std::sqrt(detail::vdot(rho_unit, rho_unit));
        for (auto& t : rho_unit) t /= rn;
        full.push_back(rho_unit);
    }

    AffineSpace out;
    for (std::size_t e = 0; e < dim && full.size() < dim; ++e) {
        std::vector<double> v(dim, 0.0);
        v[e] = 1.0;
        detail::project_out_vec(v, full);
        detail::project_out_vec(v, full);
        const double norm = std::sqrt(detail::vdot(v, v));
        if (norm <= 1e-8) continue;
        for (auto& t : v) t /= norm;
        out.constraints.push_back(detail::unvech_iso(v, n));
        out.rhs.push_back(0.0);
        full.push_back(std::move(v));
    }

    if (!homogeneous) {
        // A_m = rho / <X0, rho>; then <X_i, A_m> = 0 and <X0, A_m> = 1
        const double x0_dot_rho = detail::vdot(detail::vech_iso(x0), rho);
        std::vector<double> am = rho;
        for (auto& t : am) t /= x0_dot_rho;
        out.constraints.push_back(detail::unvech_iso(am, n));
        out.rhs.push_back(1.0);
    }
    return out;
}

} // namespace qnr
