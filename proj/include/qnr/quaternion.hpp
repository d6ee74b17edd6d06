#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace qnr {

/// Quaternion q = w + x i + y j + z k over doubles, with the Hamilton
/// multiplication table ij = -ji = k, jk = -kj = i, ki = -ik = j.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quaternion(double real) : w(real) {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    // q = c1 + c2 j with c1, c2 complex (the j/k parts ride on c2).
    static Quaternion from_complex_pair(std::complex<double> c1, std::complex<double> c2) {
        return {c1.real(), c1.imag(), c2.real(), c2.imag()};
    }
    std::complex<double> c1() const { return {w, x}; }
    std::complex<double> c2() const { return {y, z}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double re() const { return w; }
    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double abs() const { return std::sqrt(norm_sq()); }

    bool is_finite() const {
        return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        w += r.w;
        x += r.x;
        y += r.y;
        z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        w -= r.w;
        x -= r.x;
        y -= r.y;
        z -= r.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
    friend constexpr Quaternion operator/(Quaternion a, double s) { return a *= 1.0 / s; }

    // Hamilton product (noncommutative).
    friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
    }
};

inline Quaternion qmul(const Quaternion& a, const Quaternion& b) { return a * b; }

inline Quaternion inverse(const Quaternion& q) {
    const double n2 = q.norm_sq();
    return q.conj() * (1.0 / n2);
}

} // namespace qnr
