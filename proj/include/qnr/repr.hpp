#pragma once

#include <utility>

#include "qnr/matrix.hpp"

namespace qnr {

/// A = A1 + A2 j with A1, A2 complex.
inline std::pair<ComplexMatrix, ComplexMatrix> split(const QuatMatrix& a) {
    ComplexMatrix a1(a.rows(), a.cols()), a2(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t) {
        a1.data()[t] = a.data()[t].c1();
        a2.data()[t] = a.data()[t].c2();
    }
    return {a1, a2};
}

inline QuatMatrix join(const ComplexMatrix& a1, const ComplexMatrix& a2) {
    detail::require(a1.same_shape(a2), "join: shape mismatch");
    QuatMatrix a(a1.rows(), a1.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t)
        a.data()[t] = Quaternion::from_complex_pair(a1.data()[t], a2.data()[t]);
    return a;
}

inline QuatMatrix to_quat(const ComplexMatrix& a) {
    return join(a, ComplexMatrix(a.rows(), a.cols()));
}

inline QuatMatrix to_quat(const RealMatrix& a) {
    QuatMatrix r(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t) r.data()[t] = Quaternion(a.data()[t]);
    return r;
}

/// Real component matrices: A = W + X i + Y j + Z k.
struct QuatComponents {
    RealMatrix w, x, y, z;
};

inline QuatComponents components(const QuatMatrix& a) {
    QuatComponents c{RealMatrix(a.rows(), a.cols()), RealMatrix(a.rows(), a.cols()),
                     RealMatrix(a.rows(), a.cols()), RealMatrix(a.rows(), a.cols())};
    for (std::size_t t = 0; t < a.data().size(); ++t) {
        c.w.data()[t] = a.data()[t].w;
        c.x.data()[t] = a.data()[t].x;
        c.y.data()[t] = a.data()[t].y;
        c.z.data()[t] = a.data()[t].z;
    }
    return c;
}

/// Complex representation C(A) of size 2m x 2n:
///   [  A1   A2 ]
///   [ -A2~  A1~ ]   (~ = entrywise conjugate)
/// Multiplicative: C(AB) = C(A) C(B), and C(A*) = C(A)*.
inline ComplexMatrix complex_repr(const QuatMatrix& a) {
    auto [a1, a2] = split(a);
    const std::size_t m = a.rows(), n = a.cols();
    ComplexMatrix c(2 * m, 2 * n);
    set_block(c, 0, 0, a1);
    set_block(c, 0, n, a2);
    set_block(c, m, 0, -conjugate(a2));
    set_block(c, m, n, conjugate(a1));
    return c;
}

/// Real representation R(A) of size 4m x 4n, built from the component
/// matrices of A = A11 + A21 i + A12 j + A22 k.  Multiplicative like C, and
/// symmetric with each eigenvalue of A repeated 4 times when A is Hermitian.
inline RealMatrix real_repr(const QuatMatrix& a) {
    const QuatComponents c = components(a);
    const RealMatrix &a11 = c.w, &a21 = c.x, &a12 = c.y, &a22 = c.z;
    const std::size_t m = a.rows(), n = a.cols();
    RealMatrix r(4 * m, 4 * n);
    set_block(r, 0 * m, 0 * n, a11);
    set_block(r, 0 * m, 1 * n, a21);
    set_block(r, 0 * m, 2 * n, a12);
    set_block(r, 0 * m, 3 * n, a22);
    set_block(r, 1 * m, 0 * n, -a21);
    set_block(r, 1 * m, 1 * n, a11);
    set_block(r, 1 * m, 2 * n, -a22);
    set_block(r, 1 * m, 3 * n, a12);
    set_block(r, 2 * m, 0 * n, -a12);
    set_block(r, 2 * m, 1 * n, a22);
    set_block(r, 2 * m, 2 * n, a11);
    set_block(r, 2 * m, 3 * n, -a21);
    set_block(r, 3 * m, 0 * n, -a22);
    set_block(r, 3 * m, 1 * n, -a12);
    set_block(r, 3 * m, 2 * n, a21);
    set_block(r, 3 * m, 3 * n, a11);
    return r;
}

/// Real symmetric embedding of a complex Hermitian matrix H = E + F i:
///   [ E  -F ]
///   [ F   E ]
/// Eigenvalues of H appear twice; (u, v) eigenvector pairs map to u + i v.
inline RealMatrix herm_to_real_sym(const ComplexMatrix& h) {
    detail::require(h.rows() == h.cols(), "herm_to_real_sym: matrix must be square");
    const std::size_t n = h.rows();
    RealMatrix m(2 * n, 2 * n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const double e = h(s, t).real(), f = h(s, t).imag();
            m(s, t) = e;
            m(s, n + t) = -f;
            m(n + s, t) = f;
            m(n + s, n + t) = e;
        }
    return m;
}

inline ComplexMatrix real_pair_to_complex(const RealMatrix& re, const RealMatrix& im) {
    detail::require(re.same_shape(im), "real_pair_to_complex: shape mismatch");
    ComplexMatrix c(re.rows(), re.cols());
    for (std::size_t t = 0; t < c.data().size(); ++t)
        c.data()[t] = {re.data()[t], im.data()[t]};
    return c;
}

inline RealMatrix real_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t) r.data()[t] = a.data()[t].real();
    return r;
}

inline RealMatrix imag_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t) r.data()[t] = a.data()[t].imag();
    return r;
}

} // namespace qnr
