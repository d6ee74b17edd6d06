#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "qnr/numrange.hpp"
#include "qnr/sdp.hpp"
#include "test_util.hpp"

using namespace qnr;

namespace {

// Brute-force LP oracle for diagonal SDPs: min c.s subject to d0 + D s >= 0,
// by enumerating all k-subsets of active rows (vertex enumeration).
double lp_vertex_enumeration(const RealMatrix& d, const std::vector<double>& d0,
                             const std::vector<double>& c) {
    const std::size_t rows = d.rows(), k = d.cols();
    REQUIRE(k == 3);
    double best = 1e300;
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = a + 1; b < rows; ++b)
            for (std::size_t e = b + 1; e < rows; ++e) {
                // solve the 3x3 active system D_T s = -d0_T
                std::array<std::size_t, 3> rowsel{a, b, e};
                double m[3][4];
                for (int r = 0; r < 3; ++r) {
                    for (int col = 0; col < 3; ++col) m[r][col] = d(rowsel[r], col);
                    m[r][3] = -d0[rowsel[r]];
                }
                // Gaussian elimination with partial pivoting
                bool singular = false;
                for (int col = 0; col < 3 && !singular; ++col) {
                    int piv = col;
                    for (int r = col + 1; r < 3; ++r)
                        if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
                    if (std::abs(m[piv][col]) < 1e-12) {
                        singular = true;
                        break;
                    }
                    std::swap(m[col], m[piv]);
                    for (int r = 0; r < 3; ++r) {
                        if (r == col) continue;
                        const double f = m[r][col] / m[col][col];
                        for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
                    }
                }
                if (singular) continue;
                std::array<double, 3> s{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
                bool feasible = true;
                for (std::size_t r = 0; r < rows && feasible; ++r) {
                    double v = d0[r];
                    for (int col = 0; col < 3; ++col) v += d(r, col) * s[col];
                    feasible = v >= -1e-9;
                }
                if (!feasible) continue;
                double obj = 0;
                for (int col = 0; col < 3; ++col) obj += c[col] * s[col];
                best = std::min(best, obj);
            }
    return best;
}

} // namespace

TEST_CASE("solve: scalar cone") {
    SdpProblem p;
    p.x0 = RealMatrix(1, 1);
    p.x0(0, 0) = 1;
    p.xs.push_back(p.x0);
    p.c.push_back(1.0);
    const SdpSolution sol = solve(p, {0.0}, 1e-8);
    CHECK(std::abs(sol.value + 1.0) <= 1e-7);
    CHECK(sol.gap <= 1e-7);
    CHECK(sol.gap >= -1e-9);
}

TEST_CASE("solve: smallest shift making an off-diagonal block PSD") {
    SdpProblem p;
    p.x0 = RealMatrix(2, 2);
    p.x0(0, 1) = p.x0(1, 0) = 1;
    p.xs.push_back(RealMatrix::identity(2));
    p.c.push_back(1.0);
    const SdpSolution sol = solve(p, {2.0}, 1e-8);
    CHECK(std::abs(sol.value - 1.0) <= 1e-7);
    CHECK(sol.gap <= 1e-7);
}

TEST_CASE("solve: infeasible start rejected") {
    SdpProblem p;
    p.x0 = RealMatrix(2, 2);
    p.x0(0, 0) = 1;
    p.x0(1, 1) = -1;
    p.xs.push_back(RealMatrix::identity(2));
    p.c.push_back(1.0);
    CHECK_THROWS_AS(solve(p, {0.0}, 1e-8), std::invalid_argument);
}

TEST_CASE("solve: unbounded problem hits the iteration cap") {
    SdpProblem p;
    p.x0 = RealMatrix(1, 1);
    p.x0(0, 0) = 1;
    p.xs.push_back(p.x0);
    p.c.push_back(-1.0); // value unbounded below: X = 1 + s stays PSD as s grows
    CHECK_THROWS_AS(solve(p, {0.0}, 1e-6), std::runtime_error);
}

TEST_CASE("solve: dependent constraint matrices rejected") {
    SdpProblem p;
    p.x0 = RealMatrix::identity(2);
    p.xs.push_back(RealMatrix::identity(2));
    p.xs.push_back(2.0 * RealMatrix::identity(2));
    p.c = {1.0, 0.0};
    CHECK_THROWS_AS(solve(p, {0.0, 0.0}, 1e-8), std::invalid_argument);
}

TEST_CASE("solve matches LP vertex enumeration on diagonal problems") {
    Rng rng(51);
    for (int it = 0; it < 8; ++it) {
        const std::size_t rows = 6, k = 3;
        RealMatrix d(rows, k);
        for (auto& v : d.data()) v = rng.uniform(-2, 2);
        std::vector<double> d0(rows);
        for (auto& v : d0) v = rng.uniform(0.5, 2.0);
        std::vector<double> lam(rows), c(k, 0.0);
        for (auto& v : lam) v = rng.uniform(0.1, 1.0); // dual-feasible multipliers
        for (std::size_t col = 0; col < k; ++col)
            for (std::size_t r = 0; r < rows; ++r) c[col] += lam[r] * d(r, col);

        SdpProblem p;
        p.x0 = RealMatrix(rows, rows);
        for (std::size_t r = 0; r < rows; ++r) p.x0(r, r) = d0[r];
        for (std::size_t col = 0; col < k; ++col) {
            RealMatrix x(rows, rows);
            for (std::size_t r = 0; r < rows; ++r) x(r, r) = d(r, col);
            p.xs.push_back(x);
        }
        p.c = c;

        const double want = lp_vertex_enumeration(d, d0, c);
        const SdpSolution sol = solve(p, std::vector<double>(k, 0.0), 1e-8);
        CHECK(std::abs(sol.value - want) <= 1e-6 * (1 + std::abs(want)));
        CHECK(sol.gap <= 1e-7);
    }
}

TEST_CASE("embed") {
    const RealMatrix e = embed(to_quat(RealMatrix::identity(3)));
    CHECK(frobenius(e - RealMatrix::identity(12)) == 0.0);
    CHECK(std::abs(detail::dot(e, e) - 4.0 * 3.0) <= 1e-12); // trace scale 4

    QuatMatrix a(2, 2);
    a(0, 1) = Quaternion::i();
    a(1, 0) = -Quaternion::i();
    const RealMatrix r = embed(a);
    REQUIRE(r.rows() == 8);
    const SymEigenResult se = sym_eigen(r);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(se.values[i] - 1) <= 1e-12);
        CHECK(std::abs(se.values[7 - i] + 1) <= 1e-12);
    }

    Rng rng(52);
    for (int it = 0; it < 20; ++it) {
        const QuatMatrix h1 = testing::random_hermitian(rng, 3);
        const QuatMatrix h2 = testing::random_hermitian(rng, 3);
        const double lhs = detail::dot(embed(h1), embed(h2));
        const double rhs = 4.0 * inner_re(h1, h2); // A* = A, so Re tr AB
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }

    QuatMatrix bad(2, 2);
    bad(0, 1) = Quaternion::j();
    CHECK_THROWS_AS(embed(bad), std::invalid_argument);
}

TEST_CASE("hermitian basis is orthonormal and complete") {
    const std::size_t n = 3;
    const auto basis = hermitian_basis(n);
    REQUIRE(basis.size() == n * (2 * n - 1));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(is_hermitian(basis[i], 1e-14));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double want = i == j ? 1.0 : 0.0;
            CHECK(std::abs(inner_re(basis[i], basis[j]) - want) <= 1e-14);
        }
    }
    // expansion of a random Hermitian matrix is exact
    Rng rng(53);
    const QuatMatrix h = testing::random_hermitian(rng, n);
    QuatMatrix rec(n, n);
    for (const auto& w : basis) rec += w * Quaternion(inner_re(w, h));
    CHECK(frobenius(rec - h) <= 1e-12 * (1 + frobenius(h)));
}

TEST_CASE("affine_to_constraints round trip") {
    Rng rng(54);
    const std::size_t n = 4;

    // case (a): homogeneous span
    {
        std::vector<RealMatrix> xs;
        for (int i = 0; i < 5; ++i) xs.push_back(sym_part(rng.gaussian_real_matrix(n, n)));
        const RealMatrix zero(n, n);
        const AffineSpace sp = affine_to_constraints(zero, xs);
        CHECK(sp.constraints.size() == n * (n + 1) / 2 - xs.size());
        for (double b : sp.rhs) CHECK(b == 0.0);

        for (int probe = 0; probe < 20; ++probe) {
            RealMatrix x(n, n);
            for (const auto& xi : xs) x += rng.uniform(-2, 2) * xi;
            for (std::size_t j = 0; j < sp.constraints.size(); ++j)
                CHECK(std::abs(inner_re(sp.constraints[j], x) - sp.rhs[j]) <=
                      1e-10 * (1 + frobenius(x)));
        }
    }

    // case (a) with k = dim - 1: a single homogeneous constraint survives
    {
        std::vector<RealMatrix> xs;
        const std::size_t dim = n * (n + 1) / 2;
        for (std::size_t i = 0; i + 1 < dim; ++i)
            xs.push_back(sym_part(rng.gaussian_real_matrix(n, n)));
        const AffineSpace sp = affine_to_constraints(RealMatrix(n, n), xs);
        CHECK(sp.constraints.size() == 1);
        CHECK(sp.rhs[0] == 0.0);
    }

    // case (b): X0 independent; last constraint carries the normalization
    {
        std::vector<RealMatrix> xs;
        for (int i = 0; i < 4; ++i) xs.push_back(sym_part(rng.gaussian_real_matrix(n, n)));
        const RealMatrix x0 = sym_part(rng.gaussian_real_matrix(n, n));
        const AffineSpace sp = affine_to_constraints(x0, xs);
        REQUIRE(!sp.constraints.empty());
        CHECK(sp.rhs.back() == 1.0);
        CHECK(std::abs(inner_re(sp.constraints.back(), x0) - 1.0) <= 1e-10);

        // membership, forward direction
        for (int probe = 0; probe < 20; ++probe) {
            RealMatrix x = x0;
            for (const auto& xi : xs) x += rng.uniform(-2, 2) * xi;
            for (std::size_t j = 0; j < sp.constraints.size(); ++j)
                CHECK(std::abs(inner_re(sp.constraints[j], x) - sp.rhs[j]) <=
                      1e-9 * (1 + frobenius(x)));
        }

        // membership, reverse direction: project a random symmetric matrix
        // onto the constraint set (the A_j are mutually orthogonal by
        // construction) and verify it lies in the affine span
        for (int probe = 0; probe < 20; ++probe) {
            RealMatrix y = sym_part(rng.gaussian_real_matrix(n, n));
            for (std::size_t j = 0; j < sp.constraints.size(); ++j) {
                const double denom = inner_re(sp.constraints[j], sp.constraints[j]);
                const double coef = (sp.rhs[j] - inner_re(sp.constraints[j], y)) / denom;
                y += coef * sp.constraints[j];
            }
            // residual of y - x0 outside span{X_i}
            RealMatrix resid = y - x0;
            std::vector<RealMatrix> ortho; // orthonormalized span
            for (const auto& xi : xs) {
                RealMatrix v = xi;
                for (const auto& u : ortho) v -= inner_re(u, v) * u;
                const double nn = frobenius(v);
                REQUIRE(nn > 1e-10);
                ortho.push_back((1.0 / nn) * v);
            }
            for (const auto& u : ortho) resid -= inner_re(u, resid) * u;
            CHECK(frobenius(resid) <= 1e-9 * (1 + frobenius(y)));
        }
    }

    // dependent X_i rejected
    {
        std::vector<RealMatrix> xs;
        xs.push_back(RealMatrix::identity(n));
        xs.push_back(2.0 * RealMatrix::identity(n));
        CHECK_THROWS_AS(affine_to_constraints(RealMatrix(n, n), xs), std::invalid_argument);
    }
}

TEST_CASE("radius SDP on closed-form cases") {
    const QuatMatrix zero(2, 2);
    const SdpBuild bz = build_radius_sdp(zero);
    const SdpSolution sz = solve(bz.problem, bz.start, 1e-7);
    CHECK(std::abs(sz.value) <= 1e-6);

    QuatMatrix nil(2, 2);
    nil(0, 1) = Quaternion(1.0);
    const SdpBuild bn = build_radius_sdp(nil);
    const SdpSolution sn = solve(bn.problem, bn.start, 1e-7);
    CHECK(std::abs(sn.value - 0.5) <= 1e-5);
    CHECK(sn.gap <= 1e-7);

    Rng rng(55);
    const QuatMatrix h = testing::random_hermitian(rng, 2);
    const EigenResult eh = hermitian_eigen(h);
    const double want = std::max(std::abs(eh.values.front()), std::abs(eh.values.back()));
    const SdpBuild bh = build_radius_sdp(h);
    const SdpSolution shh = solve(bh.problem, bh.start, 1e-7);
    CHECK(std::abs(shh.value - want) <= 1e-5);
}

TEST_CASE("radius SDP agrees with eigenvalue search") {
    Rng rng(56);
    RadiusSearchOptions opts;
    opts.seeds = 2048;
    for (int it = 0; it < 3; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(2, 2);
        const SdpBuild b = build_radius_sdp(a);
        const SdpSolution sol = solve(b.problem, b.start, 1e-7);
        const double r_search = radius_eig_search(a, opts).radius;
        CHECK(std::abs(sol.value - r_search) <= 1e-5 * (1 + std::abs(sol.value)));
        CHECK(sol.gap <= 1e-7);
    }
}

TEST_CASE("dual norm SDP") {
    const QuatMatrix zero(2, 2);
    const SdpBuild bz = build_dual_norm_sdp(zero);
    const SdpSolution sz = solve(bz.problem, bz.start, 1e-7);
    CHECK(std::abs(sz.value) <= 1e-6);

    // rank one z t z* with |z| = |t| = 1 sits on the unit sphere of the norm
    QuatMatrix y(2, 2);
    y(0, 0) = Quaternion::k();
    const SdpBuild b1 = build_dual_norm_sdp(y);
    const SdpSolution s1 = solve(b1.problem, b1.start, 1e-7);
    CHECK(std::abs(s1.value - 1.0) <= 1e-5);

    for (std::size_t n = 1; n <= 3; ++n) {
        const QuatMatrix id = to_quat(RealMatrix::identity(n));
        const SdpBuild bi = build_dual_norm_sdp(id);
        const SdpSolution si = solve(bi.problem, bi.start, 1e-7);
        CHECK(std::abs(si.value - static_cast<double>(n)) <= 1e-5);
        // dual certificate of the embedded problem satisfies the trace
        // normalization tr Z = n of the dual characterization
        double trz = 0;
        for (std::size_t r = 0; r < si.dual_matrix.rows(); ++r) trz += si.dual_matrix(r, r);
        CHECK(std::abs(trz - static_cast<double>(n)) <= 1e-5);
    }
}

TEST_CASE("dual norm invariances and sandwich") {
    Rng rng(57);
    for (int it = 0; it < 2; ++it) {
        const QuatMatrix y = rng.gaussian_quat_matrix(2, 2);
        const SdpBuild b = build_dual_norm_sdp(y);
        const double rv = solve(b.problem, b.start, 1e-7).value;

        const QuatMatrix u = testing::random_unitary(rng, 2);
        const SdpBuild bu = build_dual_norm_sdp(adjoint(u) * y * u);
        CHECK(std::abs(solve(bu.problem, bu.start, 1e-7).value - rv) <= 1e-5 * (1 + rv));

        const double nuclear = schatten(y, 1.0);
        CHECK(rv >= nuclear - 1e-6 * (1 + nuclear));
        CHECK(rv <= 2.0 * nuclear + 1e-6 * (1 + nuclear));
    }
}

TEST_CASE("duality product") {
    Rng rng(58);
    RadiusSearchOptions opts;
    opts.seeds = 1024;
    for (int it = 0; it < 3; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(2, 2);
        const QuatMatrix b = rng.gaussian_quat_matrix(2, 2);
        const double r_a = radius_eig_search(a, opts).radius;
        const SdpBuild db = build_dual_norm_sdp(b);
        const double rv_b = solve(db.problem, db.start, 1e-7).value;
        CHECK(inner_re(b, a) <= rv_b * r_a + 1e-6 * (1 + rv_b * r_a));
    }
}

TEST_CASE("conditioned instances") {
    Rng rng(59);
    for (int it = 0; it < 20; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(2, 2);
        const double om = conditioning_omega(a);
        CHECK(om >= frobenius(a) + 1.0);
        CHECK(om <= frobenius(a) + 2.0);

        const ConditionedSdpBuild cr = build_conditioned_radius_sdp(a);
        const RealMatrix e0 = cr.problem.at(cr.start);
        CHECK(sym_eigen(e0).values.back() > 2.0 * om);
        CHECK(cr.R_ball == 8.0 * a.rows() * om);
        CHECK(cr.r_ball == om);

        const ConditionedSdpBuild cd = build_conditioned_dual_sdp(a);
        const RealMatrix z0 = cd.problem.at(cd.start);
        CHECK(sym_eigen(z0).values.back() >= om - 1e-9);
        CHECK(cd.R_ball == 5.0 * a.rows() * om);
    }

    // same optimum as the plain builders
    for (int it = 0; it < 2; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(2, 2);
        const SdpBuild plain = build_radius_sdp(a);
        const ConditionedSdpBuild cond = build_conditioned_radius_sdp(a);
        const double v_plain = solve(plain.problem, plain.start, 1e-7).value;
        const double v_cond = solve(cond.problem, cond.start, 1e-7).value;
        CHECK(std::abs(v_plain - v_cond) <= 1e-5 * (1 + std::abs(v_plain)));

        const SdpBuild dplain = build_dual_norm_sdp(a);
        const ConditionedSdpBuild dcond = build_conditioned_dual_sdp(a);
        const double dv_plain = solve(dplain.problem, dplain.start, 1e-7).value;
        const double dv_cond = solve(dcond.problem, dcond.start, 1e-7).value;
        CHECK(std::abs(dv_plain - dv_cond) <= 1e-5 * (1 + std::abs(dv_plain)));
    }

    CHECK_THROWS_AS(build_conditioned_radius_sdp(QuatMatrix(2, 2)), std::invalid_argument);
}

TEST_CASE("complex radius SDP") {
    ComplexMatrix nil(2, 2);
    nil(0, 1) = 1.0;
    const SdpSolution sn = complex_radius_sdp(nil, 1e-7);
    CHECK(std::abs(sn.value - 0.5) <= 1e-5);
    CHECK(sn.gap <= 1e-7);

    Rng rng(60);
    ComplexMatrix h = rng.gaussian_complex_matrix(2, 2);
    h = 0.5 * (h + adjoint(h));
    const ComplexEigenResult eh = complex_herm_eigen(h);
    const double want = std::max(std::abs(eh.values.front()), std::abs(eh.values.back()));
    CHECK(std::abs(complex_radius_sdp(h, 1e-7).value - want) <= 1e-5);
}

TEST_CASE("problem serialization fields survive validate") {
    QuatMatrix a(2, 2);
    a(0, 1) = Quaternion{0.5, 1, 0, 0};
    a(1, 0) = Quaternion{-0.25, 0, 2, 0};
    const SdpBuild b = build_radius_sdp(a);
    b.problem.validate();
    CHECK(b.problem.origin == "radius-sdp");
    CHECK(b.problem.embed_scale == 4.0);
    CHECK(b.problem.order() == 16);
    CHECK(b.problem.num_vars() == 7); // n(2n-1) + 1 at n = 2
}
