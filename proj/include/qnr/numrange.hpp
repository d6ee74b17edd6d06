#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qnr/jacobi.hpp"
#include "qnr/matrix.hpp"
#include "qnr/repr.hpp"
#include "qnr/rng.hpp"
#include "qnr/spectral.hpp"

namespace qnr {

/// The four real symmetric matrices of order 4n whose pencil describes the
/// convex hull of the numerical range: for every unit t in R^4,
///   Re(conj(t) z^T A conj(z)) = xi^T (sum_l t_l C_l) xi
/// where xi stacks the real coordinates of z.
struct CMatrices {
    std::array<RealMatrix, 4> c;
    std::size_t n = 0;

    std::size_t order() const { return 4 * n; }

    RealMatrix combine(const std::array<double, 4>& t) const {
        RealMatrix m = t[0] * c[0];
        for (int l = 1; l < 4; ++l) m += t[l] * c[l];
        return m;
    }
};

struct SupportSlab {
    std::array<double, 4> t{1, 0, 0, 0};
    double lo = 0;
    double hi = 0;
};

namespace detail {

/// xi in R^{4n} -> z in H^n: z = u + v j with [u; v] = s - t i,
/// s = xi[0..2n), t = xi[2n..4n).
inline QuatMatrix coords_to_quat_vector(const std::vector<double>& xi, std::size_t n) {
    QuatMatrix z(n, 1);
    for (std::size_t r = 0; r < n; ++r)
        z(r, 0) = Quaternion{xi[r], -xi[2 * n + r], xi[n + r], -xi[3 * n + r]};
    return z;
}

inline std::vector<double> quat_vector_to_coords(const QuatMatrix& z) {
    const std::size_t n = z.rows();
    std::vector<double> xi(4 * n);
    for (std::size_t r = 0; r < n; ++r) {
        xi[r] = z(r, 0).w;
        xi[n + r] = z(r, 0).y;
        xi[2 * n + r] = -z(r, 0).x;
        xi[3 * n + r] = -z(r, 0).z;
    }
    return xi;
}

/// z^T A conj(z), the generic point of the numerical range (x = conj(z)).
inline Quaternion range_form(const QuatMatrix& a, const QuatMatrix& z) {
    const std::size_t n = a.rows();
    Quaternion acc{};
    for (std::size_t t = 0; t < n; ++t) {
        Quaternion row{};
        for (std::size_t s = 0; s < n; ++s) row += z(s, 0) * a(s, t);
        acc += row * z(t, 0).conj();
    }
    return acc;
}

} // namespace detail

/// x* A x for a unit column x.
inline Quaternion range_point(const QuatMatrix& a, const QuatMatrix& x) {
    return detail::range_form(a, conjugate(x));
}

/// Build C_1..C_4 by polarizing the quadratic form q(xi) = z(xi)^T A conj(z(xi))
/// over the 4n real coordinates.  One form evaluation yields all four
/// components at once (the l-th component is the form for t = e_l).
inline CMatrices build_c_matrices(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "build_c_matrices: matrix must be square");
    const std::size_t n = a.rows();
    const std::size_t dim = 4 * n;

    auto eval = [&](const std::vector<double>& xi) {
        return detail::range_form(a, detail::coords_to_quat_vector(xi, n));
    };
    auto comp = [](const Quaternion& q, int l) {
        switch (l) {
            case 0: return q.w;
            case 1: return q.x;
            case 2: return q.y;
            default: return q.z;
        }
    };

    std::vector<Quaternion> diag(dim);
    std::vector<double> xi(dim, 0.0);
    for (std::size_t p = 0; p < dim; ++p) {
        xi[p] = 1.0;
        diag[p] = eval(xi);
        xi[p] = 0.0;
    }

    CMatrices cm;
    cm.n = n;
    for (int l = 0; l < 4; ++l) cm.c[l] = RealMatrix(dim, dim);
    for (std::size_t p = 0; p < dim; ++p)
        for (int l = 0; l < 4; ++l) cm.c[l](p, p) = comp(diag[p], l);

    for (std::size_t p = 0; p < dim; ++p) {
        for (std::size_t q = p + 1; q < dim; ++q) {
            xi[p] = 1.0;
            xi[q] = 1.0;
            const Quaternion both = eval(xi);
            xi[p] = 0.0;
            xi[q] = 0.0;
            for (int l = 0; l < 4; ++l) {
                const double v = 0.5 * (comp(both, l) - comp(diag[p], l) - comp(diag[q], l));
                cm.c[l](p, q) = v;
                cm.c[l](q, p) = v;
            }
        }
    }
    return cm;
}

/// Literal transcription of the published block formulas for C_1..C_4.
/// Kept as a cross-check only; the display plausibly carries sign slips, so
/// mismatches against the polarization result are reported, never asserted.
inline CMatrices printed_c_matrices(const QuatMatrix& a) {
    detail::require(a.rows() == a.cols(), "printed_c_matrices: matrix must be square");
    const std::size_t n = a.rows();
    const QuatComponents qc = components(a);

    const RealMatrix e1 = sym_part(qc.w);
    const RealMatrix f1 = skew_part(qc.x);
    const RealMatrix e2 = sym_part(qc.x);
    const RealMatrix f2 = -skew_part(qc.w);
    const RealMatrix s1 = sym_part(qc.y);
    const RealMatrix s2 = sym_part(qc.z);
    const RealMatrix t1 = skew_part(qc.y);
    const RealMatrix t2 = skew_part(qc.z);

    auto assemble = [n](std::array<RealMatrix, 16> blocks) {
        RealMatrix m(4 * n, 4 * n);
        for (int br = 0; br < 4; ++br)
            for (int bc = 0; bc < 4; ++bc) set_block(m, br * n, bc * n, blocks[br * 4 + bc]);
        return m;
    };

    CMatrices cm;
    cm.n = n;
    cm.c[0] = assemble({e1, t1, -f1, -t2, -t1, e1, -t2, f1, f1, t2, e1, t1, t2, -f1, -t1, e1});
    cm.c[1] = assemble({e2, s2, -f2, s1, s2, e2, -s1, f2, f2, -s1, e2, s2, s1, -f2, s2, e2});
    cm.c[2] = assemble({s1, f2, s2, -e2, -f2, s1, -e2, -s2, s2, -e2, -s1, -f2, -e2, -s2, f2, -s1});
    cm.c[3] = assemble({s2, -e2, -s1, -f2, -e2, -s2, f2, -s1, -s1, -f2, -s2, e2, f2, -s1, e2, s2});
    return cm;
}

struct CMatrixComparison {
    std::array<double, 4> frob_diff{};
    std::array<double, 4> max_entry_diff{};

    double worst() const {
        double w = 0;
        for (double v : max_entry_diff) w = std::max(w, v);
        return w;
    }
};

inline CMatrixComparison compare_c_matrices(const QuatMatrix& a) {
    const CMatrices pol = build_c_matrices(a);
    const CMatrices pub = printed_c_matrices(a);
    CMatrixComparison cmp;
    for (int l = 0; l < 4; ++l) {
        cmp.frob_diff[l] = frobenius(pol.c[l] - pub.c[l]);
        cmp.max_entry_diff[l] = max_abs(pol.c[l] - pub.c[l]);
    }
    return cmp;
}

inline SupportSlab support_interval(const CMatrices& cm, const std::array<double, 4>& t) {
    const double nrm = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
    detail::require(std::abs(nrm - 1.0) <= 1e-12, "support_interval: direction must be unit");
    const SymEigenResult e = sym_eigen(cm.combine(t));
    return {t, e.values.back(), e.values.front()};
}

inline SupportSlab support_interval(const QuatMatrix& a, const std::array<double, 4>& t) {
    return support_interval(build_c_matrices(a), t);
}

struct RadiusSearchOptions {
    int seeds = 4096;           // uniform S^3 seeding
    double tol = 1e-10;         // stop when an ascent round improves less than this
    int max_ascent_iters = 500; // per start
    int ascent_starts = 8;      // best seeds kept for gradient ascent
    std::uint64_t seed = 0;
};

struct RadiusSearchResult {
    double radius = 0;
    std::array<double, 4> t_star{1, 0, 0, 0};
    int eig_evals = 0;
};

namespace detail {

struct EigTop {
    double value;
    std::vector<double> vector;
    double gap;
};

inline EigTop top_eigenpair(const RealMatrix& m) {
    const SymEigenResult e = sym_eigen(m);
    EigTop t;
    t.value = e.values.front();
    t.vector.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) t.vector[r] = e.vectors(r, 0);
    t.gap = e.values.size() > 1 ? e.values[0] - e.values[1] : 1e300;
    return t;
}

// lambda_max <= min(Frobenius norm, max absolute row sum); used to prune
// seeds that provably cannot beat the incumbent.
inline double lambda_max_upper_bound(const RealMatrix& m) {
    double fro = 0, row_max = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double row = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row += std::abs(m(r, c));
            fro += m(r, c) * m(r, c);
        }
        row_max = std::max(row_max, row);
    }
    return std::min(std::sqrt(fro), row_max);
}

inline std::array<double, 4> normalize4(std::array<double, 4> t) {
    const double n = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
    for (double& v : t) v /= n;
    return t;
}

} // namespace detail

/// Maximize f(t) = lambda_max(sum_l t_l C_l) over the unit sphere in R^4.
/// f is convex, so the maximum over the ball sits on the sphere; there is no
/// global certificate for this maximization, which is why the SDP route
/// exists as an independent check.  Multistart: deterministic axis seeds,
/// uniform random seeds, projected subgradient ascent from the best few.
/// The result is always a valid lower bound on the radius.
inline RadiusSearchResult radius_eig_search(const CMatrices& cm,
                                            const RadiusSearchOptions& opts = {}) {
    RadiusSearchResult res;
    Rng rng(opts.seed);
    int evals = 0;

    auto f_exact = [&](const std::array<double, 4>& t) {
        ++evals;
        return detail::top_eigenpair(cm.combine(t));
    };

    struct Cand {
        double f;
        std::array<double, 4> t;
    };
    std::vector<Cand> cands;
    double best_f = -1e300;
    std::array<double, 4> best_t{1, 0, 0, 0};

    auto consider = [&](const std::array<double, 4>& t, bool prune) {
        if (prune) {
            const double ub = detail::lambda_max_upper_bound(cm.combine(t));
            if (ub <= best_f) return;
        }
        const auto top = f_exact(t);
        cands.push_back({top.value, t});
        if (top.value > best_f) {
            best_f = top.value;
            best_t = t;
        }
    };

    for (int l = 0; l < 4; ++l) {
        std::array<double, 4> t{0, 0, 0, 0};
        t[l] = 1.0;
        consider(t, false);
        t[l] = -1.0;
        consider(t, false);
    }
    for (int s = 0; s < opts.seeds; ++s) consider(rng.unit_r4(), true);

    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.f > b.f; });
    const std::size_t starts = std::min<std::size_t>(cands.size(), opts.ascent_starts);

    auto ascend = [&](std::array<double, 4> t) {
        detail::EigTop top = f_exact(t);
        double step = 0.5;
        int degenerate_retries = 0;
        for (int it = 0; it < opts.max_ascent_iters; ++it) {
            // subgradient: d lambda_max / d t_l = v^T C_l v
            std::array<double, 4> g{};
            for (int l = 0; l < 4; ++l) {
                double acc = 0;
                const RealMatrix& cl = cm.c[l];
                for (std::size_t r = 0; r < cl.rows(); ++r) {
                    double row = 0;
                    for (std::size_t c = 0; c < cl.cols(); ++c) row += cl(r, c) * top.vector[c];
                    acc += top.vector[r] * row;
                }
                g[l] = acc;
            }
            const double gdott = g[0] * t[0] + g[1] * t[1] + g[2] * t[2] + g[3] * t[3];
            std::array<double, 4> gt;
            double gt_norm = 0;
            for (int l = 0; l < 4; ++l) {
                gt[l] = g[l] - gdott * t[l];
                gt_norm += gt[l] * gt[l];
            }
            gt_norm = std::sqrt(gt_norm);
            if (gt_norm <= 1e-14 * (1.0 + std::abs(top.value))) {
                if (top.gap < 1e-10 * (1.0 + std::abs(top.value)) && degenerate_retries < 3) {
                    // eigenvalue crossing: the subgradient is ambiguous here,
                    // nudge t and continue
                    ++degenerate_retries;
                    std::array<double, 4> pert = t;
                    for (int l = 0; l < 4; ++l) pert[l] += 1e-4 * rng.gaussian();
                    t = detail::normalize4(pert);
                    top = f_exact(t);
                    continue;
                }
                break;
            }

            bool improved = false;
            while (step > 1e-18) {
                std::array<double, 4> tn = t;
                for (int l = 0; l < 4; ++l) tn[l] += step * gt[l] / gt_norm;
                tn = detail::normalize4(tn);
                const detail::EigTop cand = f_exact(tn);
                if (cand.value > top.value) {
                    const double gain = cand.value - top.value;
                    t = tn;
                    top = cand;
                    improved = true;
                    step = std::min(step * 1.5, 1.0);
                    if (gain < opts.tol) improved = false; // converged
                    break;
                }
                step *= 0.5;
            }
            if (!improved) {
                if (top.gap < 1e-10 * (1.0 + std::abs(top.value)) && degenerate_retries < 3) {
                    ++degenerate_retries;
                    std::array<double, 4> pert = t;
                    for (int l = 0; l < 4; ++l) pert[l] += 1e-4 * rng.gaussian();
                    t = detail::normalize4(pert);
                    top = f_exact(t);
                    continue;
                }
                break;
            }
        }
        if (top.value > best_f) {
            best_f = top.value;
            best_t = t;
        }
    };

    for (std::size_t s = 0; s < starts; ++s) ascend(cands[s].t);

    res.radius = best_f;
    res.t_star = best_t;
    res.eig_evals = evals;
    return res;
}

inline RadiusSearchResult radius_eig_search(const QuatMatrix& a,
                                            const RadiusSearchOptions& opts = {}) {
    return radius_eig_search(build_c_matrices(a), opts);
}

/// N points x* A x with x uniform on the unit sphere of H^n.
inline std::vector<Quaternion> sample_range(const QuatMatrix& a, std::size_t count,
                                            std::uint64_t seed = 0) {
    detail::require(a.rows() == a.cols(), "sample_range: matrix must be square");
    detail::require(count >= 1, "sample_range: need at least one sample");
    Rng rng(seed);
    std::vector<Quaternion> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s)
        pts.push_back(range_point(a, rng.unit_quat_vector(a.rows())));
    return pts;
}

/// co(W(A)) of a normal matrix with eigenvalue representatives in the closed
/// upper half plane: the convex hull of the spheres W(lambda_s), each a
/// 2-sphere centered at Re lambda_s on the real axis with imaginary radius
/// |Im lambda_s|.
struct NormalRangeHull {
    struct Sphere {
        double re;
        double im_radius;
    };
    std::vector<Sphere> spheres;
    double radius = 0; // max |lambda_s| = numerical radius of the matrix
    bool real_only = true;
    double lo = 0, hi = 0; // W(A) = [lo, hi] when all eigenvalues are real

    /// Support function of the hull: max over w of Re(conj(t) w).
    double support(const std::array<double, 4>& t) const {
        const double im_norm = std::sqrt(t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
        double best = -1e300;
        for (const auto& s : spheres) best = std::max(best, t[0] * s.re + im_norm * s.im_radius);
        return best;
    }
};

inline NormalRangeHull normal_range_hull(const std::vector<std::complex<double>>& eigenvalues) {
    detail::require(!eigenvalues.empty(), "normal_range_hull: need at least one eigenvalue");
    NormalRangeHull hull;
    hull.lo = 1e300;
    hull.hi = -1e300;
    for (const auto& lam : eigenvalues) {
        detail::require(lam.imag() >= 0.0,
                        "normal_range_hull: eigenvalue representative has Im < 0");
        hull.spheres.push_back({lam.real(), lam.imag()});
        hull.radius = std::max(hull.radius, std::abs(lam));
        if (lam.imag() > 0.0) hull.real_only = false;
        hull.lo = std::min(hull.lo, lam.real());
        hull.hi = std::max(hull.hi, lam.real());
    }
    return hull;
}

} // namespace qnr
