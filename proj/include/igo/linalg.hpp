#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace igo {

/// Fixed-size 3-vector with value semantics.
struct Vec3 {
    std::array<double, 3> v{};

    constexpr Vec3() = default;
    constexpr Vec3(double a, double b, double c) : v{a, b, c} {}

    constexpr double& operator[](std::size_t i) { return v[i]; }
    constexpr double operator[](std::size_t i) const { return v[i]; }

    friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    }
    friend constexpr Vec3 operator*(double s, const Vec3& a) {
        return {s * a[0], s * a[1], s * a[2]};
    }
};

/// 3x3 matrix, row-major storage.
struct Mat3 {
    std::array<double, 9> m{};

    constexpr double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
    constexpr double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

    static constexpr Mat3 identity() {
        Mat3 e;
        e(0, 0) = e(1, 1) = e(2, 2) = 1.0;
        return e;
    }

    constexpr Vec3 col(std::size_t c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
    constexpr Vec3 row(std::size_t r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }

    friend constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }
    friend constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }
    friend constexpr Mat3 operator*(double s, const Mat3& a) {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
        return r;
    }
    friend constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }
    friend constexpr Vec3 operator*(const Mat3& a, const Vec3& x) {
        Vec3 r;
        for (std::size_t i = 0; i < 3; ++i)
            r[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
        return r;
    }

    constexpr double trace() const { return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2); }

    constexpr double det() const {
        const Mat3& a = *this;
        return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
               a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
               a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    }

    /// Sum of the three principal 2x2 minors.
    constexpr double minor_sum() const {
        const Mat3& a = *this;
        double m11 = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
        double m22 = a(0, 0) * a(2, 2) - a(2, 0) * a(0, 2);
        double m33 = a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1);
        return m11 + m22 + m33;
    }
};

inline double norm_inf(const Vec3& x) {
    return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
}

inline double norm_inf(const Mat3& a) {
    double n = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
        double s = std::abs(a(r, 0)) + std::abs(a(r, 1)) + std::abs(a(r, 2));
        n = std::max(n, s);
    }
    return n;
}

inline bool all_finite(const Vec3& x) {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

inline bool all_finite(const Mat3& a) {
    for (double e : a.m)
        if (!std::isfinite(e)) return false;
    return true;
}

/// Pre-jump state of the oscillator: three concentrations.
using StateVec = Vec3;

} // namespace igo
