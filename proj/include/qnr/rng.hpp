#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qnr/matrix.hpp"

namespace qnr {

/// Deterministic random source.  mt19937_64 is fully specified by the
/// standard; uniform and Gaussian draws are built on raw 64-bit output so
/// that identical seeds give identical streams everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; drops the pathological u = 0 draw.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform01();
        while (u <= 0.0) u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * 3.14159265358979323846 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Quaternion gaussian_quaternion() {
        return {gaussian(), gaussian(), gaussian(), gaussian()};
    }

    std::array<double, 4> unit_r4() {
        while (true) {
            std::array<double, 4> t{gaussian(), gaussian(), gaussian(), gaussian()};
            const double n = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2] + t[3] * t[3]);
            if (n > 1e-12) {
                for (double& v : t) v /= n;
                return t;
            }
        }
    }

    Quaternion unit_quaternion() {
        const auto t = unit_r4();
        return {t[0], t[1], t[2], t[3]};
    }

    /// Uniform point on the unit sphere of H^n, as an n x 1 matrix.
    QuatMatrix unit_quat_vector(std::size_t n) {
        while (true) {
            QuatMatrix v(n, 1);
            double nsq = 0;
            for (std::size_t s = 0; s < n; ++s) {
                v(s, 0) = gaussian_quaternion();
                nsq += v(s, 0).norm_sq();
            }
            if (nsq > 1e-24) {
                const double inv = 1.0 / std::sqrt(nsq);
                for (auto& q : v.data()) q *= inv;
                return v;
            }
        }
    }

    /// Uniform point on the unit sphere of C^n, as an n x 1 matrix.
    ComplexMatrix unit_complex_vector(std::size_t n) {
        while (true) {
            ComplexMatrix v(n, 1);
            double nsq = 0;
            for (std::size_t s = 0; s < n; ++s) {
                v(s, 0) = {gaussian(), gaussian()};
                nsq += std::norm(v(s, 0));
            }
            if (nsq > 1e-24) {
                const double inv = 1.0 / std::sqrt(nsq);
                for (auto& c : v.data()) c *= inv;
                return v;
            }
        }
    }

    QuatMatrix gaussian_quat_matrix(std::size_t m, std::size_t n, double scale = 1.0) {
        QuatMatrix a(m, n);
        for (auto& q : a.data()) q = gaussian_quaternion() * scale;
        return a;
    }

    ComplexMatrix gaussian_complex_matrix(std::size_t m, std::size_t n, double scale = 1.0) {
        ComplexMatrix a(m, n);
        for (auto& c : a.data()) c = std::complex<double>(gaussian(), gaussian()) * scale;
        return a;
    }

    RealMatrix gaussian_real_matrix(std::size_t m, std::size_t n, double scale = 1.0) {
        RealMatrix a(m, n);
        for (auto& v : a.data()) v = gaussian() * scale;
        return a;
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0;
    bool have_spare_ = false;
};

} // namespace qnr
