#include "igo/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igo/errors.hpp"

namespace igo {

namespace {

[[noreturn]] void throw_degenerate(double z0, double z1) {
    throw DegenerateNodes("nodes too close: " + std::to_string(z0) + " vs " + std::to_string(z1));
}

void check_separation(double z0, double z1) {
    if (std::abs(z0 - z1) <= node_separation_threshold(z0, z1)) throw_degenerate(z0, z1);
}

// Complete homogeneous symmetric polynomial h_k(u0,u1,u2), used by the
// clustered-node series for the second divided difference of exp.
double homogeneous_sym(int k, double u0, double u1, double u2) {
    // h_k(u0,u1,u2) = sum_{j=0..k} u2^j * h_{k-j}(u0,u1),
    // h_m(u0,u1) = sum_{i=0..m} u0^i u1^{m-i}.
    double total = 0.0;
    double u2j = 1.0;
    for (int j = 0; j <= k; ++j) {
        int m = k - j;
        double s = 0.0;
        double u0i = 1.0;
        for (int i = 0; i <= m; ++i) {
            s += u0i * std::pow(u1, m - i);
            u0i *= u0;
        }
        total += u2j * s;
        u2j *= u2;
    }
    return total;
}

} // namespace

double node_separation_threshold(double z0, double z1) {
    return 1e-9 * std::max({1.0, std::abs(z0), std::abs(z1)});
}

double dd1(const ScalarFn& f, double z0, double z1) {
    check_separation(z0, z1);
    return (f(z1) - f(z0)) / (z1 - z0);
}

double dd2(const ScalarFn& f, double z0, double z1, double z2) {
    check_separation(z0, z1);
    check_separation(z1, z2);
    check_separation(z0, z2);
    return (dd1(f, z1, z2) - dd1(f, z0, z1)) / (z2 - z0);
}

double exp_dd1(double x, double y) {
    // e[x,y] = exp((x+y)/2) * sinh(h)/h with h = (y-x)/2; the sinh form has
    // no subtractive cancellation and the h -> 0 limit is exact.
    double h = 0.5 * (y - x);
    double mid = 0.5 * (x + y);
    double ratio;
    if (h == 0.0) {
        ratio = 1.0;
    } else if (std::abs(h) < 1e-4) {
        double h2 = h * h;
        ratio = 1.0 + h2 / 6.0 * (1.0 + h2 / 20.0);
    } else {
        ratio = std::sinh(h) / h;
    }
    return std::exp(mid) * ratio;
}

double exp_dd2(double x, double y, double z) {
    double lo = std::min({x, y, z});
    double hi = std::max({x, y, z});
    double spread = hi - lo;

    if (spread < 0.05) {
        // Centered series: e[u0,u1,u2] = exp(m) * sum_k h_k(u)/(k+2)! with
        // u_i = nodes - m. Terms decay like spread^k; a handful suffice.
        double m = (x + y + z) / 3.0;
        double u0 = x - m, u1 = y - m, u2 = z - m;
        double sum = 0.0;
        double fact = 2.0; // (k+2)! starting at k = 0
        for (int k = 0;; ++k) {
            double term = homogeneous_sym(k, u0, u1, u2) / fact;
            sum += term;
            if (k >= 2 && std::abs(term) < 1e-18 * std::abs(sum)) break;
            if (k > 24) break;
            fact *= static_cast<double>(k + 3);
        }
        return std::exp(m) * sum;
    }

    // Recursive form over sorted nodes so the outer division uses the full
    // spread; the two inner differences are stable in sinh form.
    double a = x, b = y, c = z;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return (exp_dd1(b, c) - exp_dd1(a, b)) / (c - a);
}

double mu(double z) {
    if (std::abs(z) <= node_separation_threshold(z, 0.0))
        throw DegenerateNodes("mu(z) undefined at z = 0, got " + std::to_string(z));
    return 1.0 / std::expm1(-z);
}

double nu(double z) {
    return z * mu(z);
}

Mat3 opitz_apply(const ScalarFn& f, const PlantParams& plant) {
    double x = -plant.a1, y = -plant.a2, z = -plant.a3;
    Mat3 r;
    r(0, 0) = f(x);
    r(1, 1) = f(y);
    r(2, 2) = f(z);
    r(1, 0) = plant.g1 * dd1(f, x, y);
    r(2, 1) = plant.g2 * dd1(f, y, z);
    r(2, 0) = plant.g1 * plant.g2 * dd2(f, x, y, z);
    return r;
}

Mat3 expm_At(const PlantParams& plant, double t) {
    if (t == 0.0) return Mat3::identity();
    if (!std::isfinite(t)) throw InvalidParams("expm_At requires finite t");
    double x = -plant.a1 * t, y = -plant.a2 * t, z = -plant.a3 * t;
    Mat3 r;
    r(0, 0) = std::exp(x);
    r(1, 1) = std::exp(y);
    r(2, 2) = std::exp(z);
    r(1, 0) = plant.g1 * t * exp_dd1(x, y);
    r(2, 1) = plant.g2 * t * exp_dd1(y, z);
    r(2, 0) = plant.g1 * plant.g2 * t * t * exp_dd2(x, y, z);
    return r;
}

} // namespace igo
