#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qnr/quaternion.hpp"

namespace qnr {

namespace detail {

inline void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

inline double conj_of(double v) { return v; }
inline std::complex<double> conj_of(const std::complex<double>& v) { return std::conj(v); }
inline Quaternion conj_of(const Quaternion& v) { return v.conj(); }

inline double abs_sq(double v) { return v * v; }
inline double abs_sq(const std::complex<double>& v) { return std::norm(v); }
inline double abs_sq(const Quaternion& v) { return v.norm_sq(); }

inline double re_of(double v) { return v; }
inline double re_of(const std::complex<double>& v) { return v.real(); }
inline double re_of(const Quaternion& v) { return v.w; }

} // namespace detail

/// Dense row-major matrix over double, complex<double> or Quaternion.
/// Values are immutable in spirit: every operation returns a fresh matrix.
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t s = 0; s < n; ++s) m(s, s) = T{1.0};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Matrix& operator+=(const Matrix& o) {
        detail::require(same_shape(o), "matrix addition: shape mismatch");
        for (std::size_t t = 0; t < data_.size(); ++t) data_[t] += o.data_[t];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        detail::require(same_shape(o), "matrix subtraction: shape mismatch");
        for (std::size_t t = 0; t < data_.size(); ++t) data_[t] -= o.data_[t];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    // Scalar on the right: entries a_st * q.  For quaternions this is the
    // right-module action A.q and differs from q.A below.
    friend Matrix operator*(Matrix a, const T& q) {
        for (auto& v : a.data_) v = v * q;
        return a;
    }
    // Scalar on the left: entries q * a_st.
    friend Matrix operator*(const T& q, Matrix a) {
        for (auto& v : a.data_) v = q * v;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        detail::require(a.cols_ == b.rows_, "matrix product: inner dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t s = 0; s < a.rows_; ++s)
            for (std::size_t u = 0; u < a.cols_; ++u) {
                const T& asu = a(s, u);
                for (std::size_t t = 0; t < b.cols_; ++t) r(s, t) += asu * b(u, t);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using QuatMatrix = Matrix<Quaternion>;

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (std::size_t s = 0; s < a.rows(); ++s)
        for (std::size_t t = 0; t < a.cols(); ++t) r(t, s) = a(s, t);
    return r;
}

template <typename T>
Matrix<T> conjugate(const Matrix<T>& a) {
    Matrix<T> r = a;
    for (auto& v : r.data()) v = detail::conj_of(v);
    return r;
}

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (std::size_t s = 0; s < a.rows(); ++s)
        for (std::size_t t = 0; t < a.cols(); ++t) r(t, s) = detail::conj_of(a(s, t));
    return r;
}

template <typename T>
T trace(const Matrix<T>& a) {
    detail::require(a.rows() == a.cols(), "trace: matrix must be square");
    T acc{};
    for (std::size_t s = 0; s < a.rows(); ++s) acc += a(s, s);
    return acc;
}

template <typename T>
double frobenius(const Matrix<T>& a) {
    double acc = 0;
    for (const auto& v : a.data()) acc += detail::abs_sq(v);
    return std::sqrt(acc);
}

template <typename T>
double max_abs(const Matrix<T>& a) {
    double m = 0;
    for (const auto& v : a.data()) m = std::max(m, std::sqrt(detail::abs_sq(v)));
    return m;
}

/// Re tr A*B, the real inner product on any of the three scalar fields.
template <typename T>
double inner_re(const Matrix<T>& a, const Matrix<T>& b) {
    detail::require(a.same_shape(b), "inner_re: shape mismatch");
    double acc = 0;
    for (std::size_t t = 0; t < a.data().size(); ++t)
        acc += detail::re_of(detail::conj_of(a.data()[t]) * b.data()[t]);
    return acc;
}

template <typename T>
bool is_hermitian(const Matrix<T>& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return frobenius(a - adjoint(a)) <= tol;
}

template <typename T>
void set_block(Matrix<T>& dst, std::size_t r0, std::size_t c0, const Matrix<T>& src) {
    detail::require(r0 + src.rows() <= dst.rows() && c0 + src.cols() <= dst.cols(),
                    "set_block: block exceeds target shape");
    for (std::size_t s = 0; s < src.rows(); ++s)
        for (std::size_t t = 0; t < src.cols(); ++t) dst(r0 + s, c0 + t) = src(s, t);
}

template <typename T>
Matrix<T> block(const Matrix<T>& a, std::size_t r0, std::size_t c0, std::size_t rows,
                std::size_t cols) {
    detail::require(r0 + rows <= a.rows() && c0 + cols <= a.cols(), "block: range out of bounds");
    Matrix<T> r(rows, cols);
    for (std::size_t s = 0; s < rows; ++s)
        for (std::size_t t = 0; t < cols; ++t) r(s, t) = a(r0 + s, c0 + t);
    return r;
}

/// Column s as an n x 1 matrix.
template <typename T>
Matrix<T> column(const Matrix<T>& a, std::size_t c) {
    return block(a, 0, c, a.rows(), 1);
}

inline RealMatrix sym_part(const RealMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t s = 0; s < a.rows(); ++s)
        for (std::size_t t = 0; t < a.cols(); ++t) r(s, t) = 0.5 * (a(s, t) + a(t, s));
    return r;
}

inline RealMatrix skew_part(const RealMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t s = 0; s < a.rows(); ++s)
        for (std::size_t t = 0; t < a.cols(); ++t) r(s, t) = 0.5 * (a(s, t) - a(t, s));
    return r;
}

} // namespace qnr
