#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "qnr/jacobi.hpp"
#include "qnr/spectral.hpp"
#include "test_util.hpp"

using namespace qnr;

namespace {

std::vector<double> complex_singulars(const ComplexMatrix& c) {
    const ComplexEigenResult e = complex_herm_eigen(adjoint(c) * c);
    std::vector<double> s;
    for (double v : e.values) s.push_back(std::sqrt(std::max(v, 0.0)));
    return s;
}

double complex_schatten(const ComplexMatrix& c, double p) {
    const auto sig = complex_singulars(c);
    if (std::isinf(p)) return sig.empty() ? 0.0 : sig.front();
    double acc = 0;
    for (double v : sig) acc += std::pow(v, p);
    return std::pow(acc, 1.0 / p);
}

} // namespace

TEST_CASE("sym_eigen basics") {
    RealMatrix d(3, 3);
    d(0, 0) = 3;
    d(1, 1) = 1;
    d(2, 2) = 2;
    const SymEigenResult e = sym_eigen(d);
    CHECK(e.values == std::vector<double>{3, 2, 1});

    RealMatrix f(2, 2);
    f(0, 1) = 1;
    f(1, 0) = 1;
    const SymEigenResult g = sym_eigen(f);
    CHECK(std::abs(g.values[0] - 1) < 1e-14);
    CHECK(std::abs(g.values[1] + 1) < 1e-14);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(std::abs(g.vectors(0, c)) - inv_sqrt2) < 1e-12);
        CHECK(std::abs(std::abs(g.vectors(1, c)) - inv_sqrt2) < 1e-12);
    }

    RealMatrix bad(2, 2);
    bad(0, 1) = 1;
    CHECK_THROWS_AS(sym_eigen(bad), std::invalid_argument);
}

TEST_CASE("sym_eigen reconstructs random spectra") {
    Rng rng(11);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 5;
        RealMatrix g = rng.gaussian_real_matrix(n, n);
        // orthogonalize columns (real Gram-Schmidt via the generic routine)
        const RealMatrix q = gram_schmidt(g);
        REQUIRE(q.cols() == n);
        RealMatrix lam(n, n);
        std::vector<double> want(n);
        for (std::size_t s = 0; s < n; ++s) {
            want[s] = rng.uniform(-5, 5);
            lam(s, s) = want[s];
        }
        std::sort(want.rbegin(), want.rend());
        const RealMatrix m = q * lam * transpose(q);
        const SymEigenResult e = sym_eigen(m);
        for (std::size_t s = 0; s < n; ++s) CHECK(std::abs(e.values[s] - want[s]) <= 1e-10);
        // V diag V^T reproduces M
        RealMatrix rec(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t s = 0; s < n; ++s)
                    rec(r, c) += e.vectors(r, s) * e.values[s] * e.vectors(c, s);
        CHECK(frobenius(rec - m) <= 1e-10 * (1 + frobenius(m)));
    }
}

TEST_CASE("hermitian_eigen on small fixed matrices") {
    QuatMatrix a(2, 2);
    a(0, 1) = Quaternion::i();
    a(1, 0) = -Quaternion::i();
    const EigenResult e = hermitian_eigen(a);
    CHECK(std::abs(e.values[0] - 1) < 1e-12);
    CHECK(std::abs(e.values[1] + 1) < 1e-12);

    QuatMatrix d(2, 2);
    d(0, 0) = Quaternion(5.0);
    d(1, 1) = Quaternion(-2.0);
    const EigenResult ed = hermitian_eigen(d);
    CHECK(std::abs(ed.values[0] - 5) < 1e-12);
    CHECK(std::abs(ed.values[1] + 2) < 1e-12);

    QuatMatrix bad(2, 2);
    bad(0, 1) = Quaternion::i(); // not Hermitian
    CHECK_THROWS_AS(hermitian_eigen(bad), std::invalid_argument);
}

TEST_CASE("hermitian_eigen recovers constructed spectra") {
    Rng rng(12);
    for (int it = 0; it < 25; ++it) {
        const std::size_t n = 4;
        const QuatMatrix u = testing::random_unitary(rng, n);
        std::vector<double> mu(n);
        QuatMatrix lam(n, n);
        for (std::size_t s = 0; s < n; ++s) {
            mu[s] = rng.uniform(-3, 3);
            lam(s, s) = Quaternion(mu[s]);
        }
        std::sort(mu.rbegin(), mu.rend());
        const QuatMatrix a = u * lam * adjoint(u);
        const EigenResult e = hermitian_eigen(a);
        const double scale = 1 + frobenius(a);
        for (std::size_t s = 0; s < n; ++s) CHECK(std::abs(e.values[s] - mu[s]) <= 1e-9 * scale);

        // columns orthonormal and A u_s = u_s lambda_s
        const QuatMatrix gram = adjoint(e.vectors) * e.vectors;
        CHECK(frobenius(gram - to_quat(RealMatrix::identity(n))) <= 1e-9);
        const QuatMatrix au = a * e.vectors;
        for (std::size_t s = 0; s < n; ++s) {
            double resid = 0;
            for (std::size_t r = 0; r < n; ++r)
                resid += (au(r, s) - e.vectors(r, s) * e.values[s]).norm_sq();
            CHECK(std::sqrt(resid) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("hermitian_eigen handles degenerate spectra") {
    Rng rng(13);
    const std::size_t n = 4;
    const QuatMatrix u = testing::random_unitary(rng, n);
    QuatMatrix lam(n, n);
    lam(0, 0) = lam(1, 1) = Quaternion(2.0); // double eigenvalue
    lam(2, 2) = Quaternion(1.0);
    lam(3, 3) = Quaternion(-1.0);
    const QuatMatrix a = u * lam * adjoint(u);
    const EigenResult e = hermitian_eigen(a);
    CHECK(std::abs(e.values[0] - 2) < 1e-9);
    CHECK(std::abs(e.values[1] - 2) < 1e-9);
    CHECK(std::abs(e.values[2] - 1) < 1e-9);
    CHECK(std::abs(e.values[3] + 1) < 1e-9);
    const QuatMatrix gram = adjoint(e.vectors) * e.vectors;
    CHECK(frobenius(gram - to_quat(RealMatrix::identity(n))) <= 1e-9);
}

TEST_CASE("svd basics and pairing with C(A)") {
    QuatMatrix jm(1, 1);
    jm(0, 0) = Quaternion::j();
    const SvdResult sj = svd(jm);
    REQUIRE(sj.rank == 1);
    CHECK(std::abs(sj.singulars[0] - 1) < 1e-12);
    // C([j]) = [[0,1],[-1,0]] has singular values (1, 1)
    const auto sig_c = complex_singulars(complex_repr(jm));
    CHECK(std::abs(sig_c[0] - 1) < 1e-12);
    CHECK(std::abs(sig_c[1] - 1) < 1e-12);

    QuatMatrix d(2, 2);
    d(0, 0) = Quaternion(2.0);
    const SvdResult sd = svd(d);
    CHECK(sd.rank == 1);
    CHECK(std::abs(sd.singulars[0] - 2) < 1e-12);

    Rng rng(14);
    for (int it = 0; it < 20; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(3, 2);
        const SvdResult s = svd(a);
        const Quaternion q = rng.gaussian_quaternion();
        const SvdResult sq = svd(a * q);
        REQUIRE(s.rank == sq.rank);
        for (std::size_t l = 0; l < s.rank; ++l)
            CHECK(std::abs(sq.singulars[l] - q.abs() * s.singulars[l]) <=
                  1e-9 * (1 + frobenius(a)) * (1 + q.abs()));

        // sigma_{2s-1}(C(A)) = sigma_{2s}(C(A)) = sigma_s(A)
        const auto sc = complex_singulars(complex_repr(a));
        for (std::size_t l = 0; l < s.rank; ++l) {
            CHECK(std::abs(sc[2 * l] - s.singulars[l]) <= 1e-9 * (1 + frobenius(a)));
            CHECK(std::abs(sc[2 * l + 1] - s.singulars[l]) <= 1e-9 * (1 + frobenius(a)));
        }

        // A = W Sigma Z*
        QuatMatrix rec(3, 2);
        for (std::size_t l = 0; l < s.rank; ++l)
            rec += (column(s.left, l) * s.singulars[l]) * adjoint(column(s.right, l));
        CHECK(frobenius(rec - a) <= 1e-9 * (1 + frobenius(a)));
    }
}

TEST_CASE("singular values under adjoint, transpose, conjugate") {
    // The adjoint preserves singular values.  Transpose and entrywise
    // conjugate agree with EACH OTHER (conj(A) = (A^T)^*), but over the
    // quaternions they need not preserve the singular values of A; the
    // witness below even changes rank.  Only the Frobenius norm survives
    // all four variants.
    Rng rng(161);
    for (int it = 0; it < 10; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(3, 2);
        const auto sig = svd(a).singulars;
        const auto sv_adj = svd(adjoint(a)).singulars;
        REQUIRE(sv_adj.size() == sig.size());
        for (std::size_t l = 0; l < sig.size(); ++l)
            CHECK(std::abs(sv_adj[l] - sig[l]) <= 1e-9 * (1 + frobenius(a)));

        const auto sv_t = svd(transpose(a)).singulars;
        const auto sv_c = svd(conjugate(a)).singulars;
        REQUIRE(sv_t.size() == sv_c.size());
        for (std::size_t l = 0; l < sv_t.size(); ++l)
            CHECK(std::abs(sv_t[l] - sv_c[l]) <= 1e-9 * (1 + frobenius(a)));
    }

    // A = [[i, j], [1, k]]: A*A = 2I so sigma = (sqrt2, sqrt2), while the
    // transpose has sigma = (2, 0)
    QuatMatrix a(2, 2);
    a(0, 0) = Quaternion::i();
    a(0, 1) = Quaternion::j();
    a(1, 0) = Quaternion::one();
    a(1, 1) = Quaternion::k();
    const auto sig = svd(a).singulars;
    REQUIRE(sig.size() == 2);
    CHECK(std::abs(sig[0] - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(sig[1] - std::sqrt(2.0)) <= 1e-12);
    const SvdResult st = svd(transpose(a));
    REQUIRE(st.rank == 1);
    CHECK(std::abs(st.singulars[0] - 2.0) <= 1e-12);
}

TEST_CASE("schatten norms") {
    Rng rng(15);
    const double inf = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 15; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(3, 3);
        const double scale = 1 + frobenius(a);
        CHECK(std::abs(schatten(a, 2.0) - frobenius(a)) <= 1e-10 * scale);
        for (double p : {1.0, 1.5, 2.0, 3.0, inf}) {
            const double via_c = (std::isinf(p) ? 1.0 : std::pow(2.0, -1.0 / p)) *
                                 complex_schatten(complex_repr(a), p);
            CHECK(std::abs(schatten(a, p) - via_c) <= 1e-9 * scale);
        }
        const QuatMatrix u = testing::random_unitary(rng, 3);
        const QuatMatrix v = testing::random_unitary(rng, 3);
        for (double p : {1.0, 2.0, inf})
            CHECK(std::abs(schatten(u * a * v, p) - schatten(a, p)) <= 1e-9 * scale);
    }
    QuatMatrix a(2, 2);
    CHECK_THROWS_AS((void)schatten(a, 0.5), std::invalid_argument);
}

TEST_CASE("h_block spectrum is plus-minus singular values") {
    QuatMatrix two(1, 1);
    two(0, 0) = Quaternion(2.0);
    const EigenResult e2 = hermitian_eigen(h_block(two));
    CHECK(std::abs(e2.values[0] - 2) < 1e-12);
    CHECK(std::abs(e2.values[1] + 2) < 1e-12);

    const QuatMatrix zero(2, 3);
    for (double v : hermitian_eigen(h_block(zero)).values) CHECK(std::abs(v) < 1e-12);

    Rng rng(16);
    for (int it = 0; it < 10; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(3, 2);
        // oracle: singular values through the Gram matrix, independent of
        // the H(A) diagonalization used by the production svd
        const auto sig = testing::singulars_via_gram(a);
        const EigenResult e = hermitian_eigen(h_block(a));
        std::vector<double> want;
        for (double s : sig) want.push_back(s);
        want.push_back(0.0); // m + n - 2 min(m, n) = 1 structural zero
        for (std::size_t l = sig.size(); l-- > 0;) want.push_back(-sig[l]);
        REQUIRE(want.size() == e.values.size());
        for (std::size_t l = 0; l < want.size(); ++l)
            CHECK(std::abs(e.values[l] - want[l]) <= 1e-9 * (1 + frobenius(a)));
    }
}

TEST_CASE("gram_schmidt") {
    Rng rng(17);
    const QuatMatrix u0 = testing::random_unitary(rng, 4);
    const QuatMatrix u = gram_schmidt(u0);
    REQUIRE(u.cols() == 4);
    CHECK(frobenius(adjoint(u) * u - to_quat(RealMatrix::identity(4))) <= 1e-12);

    // duplicated column dropped
    QuatMatrix vv(3, 2);
    for (std::size_t r = 0; r < 3; ++r) vv(r, 0) = vv(r, 1) = rng.gaussian_quaternion();
    CHECK(gram_schmidt(vv).cols() == 1);

    const QuatMatrix g = gram_schmidt(rng.gaussian_quat_matrix(4, 4));
    REQUIRE(g.cols() == 4);
    CHECK(frobenius(adjoint(g) * g - to_quat(RealMatrix::identity(4))) <= 1e-10);
    CHECK(frobenius(g * adjoint(g) - to_quat(RealMatrix::identity(4))) <= 1e-10);
}

TEST_CASE("is_psd") {
    CHECK(is_psd(to_quat(RealMatrix::identity(3))));
    QuatMatrix d(2, 2);
    d(0, 0) = Quaternion(1.0);
    d(1, 1) = Quaternion(-1e-3);
    CHECK(!is_psd(d));

    Rng rng(18);
    for (int it = 0; it < 10; ++it) {
        const QuatMatrix b = rng.gaussian_quat_matrix(3, 3);
        CHECK(is_psd(adjoint(b) * b));
    }
}

TEST_CASE("unitarity transfer and Rayleigh bounds") {
    Rng rng(19);
    for (int it = 0; it < 10; ++it) {
        const QuatMatrix u = testing::random_unitary(rng, 3);
        const ComplexMatrix cu = complex_repr(u);
        CHECK(frobenius(adjoint(cu) * cu - ComplexMatrix::identity(6)) <= 1e-10);

        const QuatMatrix a = testing::random_hermitian(rng, 3);
        const EigenResult e = hermitian_eigen(a);
        const QuatMatrix x = rng.unit_quat_vector(3);
        const Quaternion rq = (adjoint(x) * a * x)(0, 0);
        CHECK(std::abs(rq.x) + std::abs(rq.y) + std::abs(rq.z) <= 1e-10 * (1 + frobenius(a)));
        CHECK(rq.w <= e.values.front() + 1e-10 * (1 + frobenius(a)));
        CHECK(rq.w >= e.values.back() - 1e-10 * (1 + frobenius(a)));
    }
}

TEST_CASE("Schatten duality inequality") {
    Rng rng(20);
    const double inf = std::numeric_limits<double>::infinity();
    const std::pair<double, double> pairs[] = {{1.0, inf}, {2.0, 2.0}, {1.5, 3.0}, {inf, 1.0}};
    for (int it = 0; it < 10; ++it) {
        const QuatMatrix a = rng.gaussian_quat_matrix(3, 3);
        const QuatMatrix b = rng.gaussian_quat_matrix(3, 3);
        for (auto [p, q] : pairs)
            CHECK(std::abs(inner_re(b, a)) <=
                  schatten(a, p) * schatten(b, q) + 1e-9 * (1 + frobenius(a) * frobenius(b)));
    }
}
