#include "igo/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"

namespace igo {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::complex<double> polish_root(std::complex<double> r, double b, double c, double d) {
    // One Newton step on p(x) = x^3 - b x^2 + c x - d; skipped when the
    // derivative is too small (clustered roots).
    std::complex<double> p = ((r - b) * r + c) * r - d;
    std::complex<double> dp = (3.0 * r - 2.0 * b) * r + c;
    double scale = 1.0 + std::abs(r) * std::abs(r);
    if (std::abs(dp) > 1e-8 * scale) r -= p / dp;
    return r;
}

} // namespace

Mat3 jacobian(const IgoModel& model, const StateVec& X) {
    double res = cycle_residual(model, X);
    if (res > 1e-7 * (1.0 + norm_inf(X))) {
        throw NotAFixedPoint("fixed-point residual " + std::to_string(res) +
                             " exceeds gate at X[2] = " + std::to_string(X[2]));
    }
    double z0 = X[2];
    double T = phi(model.hill, z0);
    double fp = f_prime(model.hill, z0);
    double pp = phi_prime(model.hill, z0);

    Mat3 E = expm_At(model.plant, T);
    Vec3 J = E.col(0); // E * B
    Vec3 D = model.plant.A() * X;

    Mat3 Q = E;
    for (std::size_t i = 0; i < 3; ++i) Q(i, 2) += fp * J[i] + pp * D[i];
    return Q;
}

JacobianParts jacobian_parts(const PlantParams& plant, const CycleSpec& spec) {
    Mat3 E = expm_At(plant, spec.T);
    Vec3 J = E.col(0);
    Vec3 D = plant.A() * fixed_point(plant, spec);
    return {J, D};
}

std::pair<bool, std::array<bool, 3>> schur_test(const Mat3& m) {
    double tr = m.trace();
    double det = m.det();
    double M = m.minor_sum();
    std::array<bool, 3> flags{
        std::abs(det) < 1.0,
        std::abs(tr + det) < 1.0 + M,
        std::abs(tr * det - M) < 1.0 - det * det,
    };
    return {flags[0] && flags[1] && flags[2], flags};
}

CharInvariants invariants_closed_form(const PlantParams& plant, const CycleSpec& spec,
                                      const Slopes& s) {
    double T = spec.T;
    Mat3 E = expm_At(plant, T);
    Vec3 J = E.col(0);
    Vec3 D = plant.A() * fixed_point(plant, spec);

    double tr = E.trace() + J[2] * s.f_prime + D[2] * s.phi_prime;

    // det(exp(AT) + K C) = det(exp(AT)) (1 + C exp(-AT) K); the J term drops
    // because C exp(-AT) J = C B = 0.
    double det0 = std::exp(-(plant.a1 + plant.a2 + plant.a3) * T);
    Mat3 Em = expm_At(plant, -T);
    double ceD = Em(2, 0) * D[0] + Em(2, 1) * D[1] + Em(2, 2) * D[2];
    double det = det0 * (1.0 + ceD * s.phi_prime);

    double m0 = std::exp(-(plant.a1 + plant.a2) * T) + std::exp(-(plant.a1 + plant.a3) * T) +
                std::exp(-(plant.a2 + plant.a3) * T);
    double psi1 = (E(0, 0) + E(1, 1)) * J[2] - E(2, 1) * J[1] - E(2, 0) * J[0];
    double psi2 = (E(0, 0) + E(1, 1)) * D[2] - E(2, 1) * D[1] - E(2, 0) * D[0];
    double M = m0 + psi1 * s.f_prime + psi2 * s.phi_prime;

    return {tr, det, M};
}

std::array<std::complex<double>, 3> cubic_roots(double tr, double M, double det) {
    const double b = tr, c = M, d = det;
    // Depressed form x = y + b/3: y^3 + p y + q.
    double p = c - b * b / 3.0;
    double q = -2.0 * b * b * b / 27.0 + b * c / 3.0 - d;
    double shift = b / 3.0;

    std::array<std::complex<double>, 3> roots;
    double disc = -4.0 * p * p * p - 27.0 * q * q;

    if (p == 0.0 && q == 0.0) {
        roots = {shift, shift, shift};
    } else if (disc > 0.0) {
        // Three distinct real roots: trigonometric branch (p < 0 here).
        double rho = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * rho); // = (3q/2p) sqrt(-3/p)
        arg = std::clamp(arg, -1.0, 1.0);
        double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            roots[k] = rho * std::cos((theta - 2.0 * kPi * k) / 3.0) + shift;
    } else {
        // One real root, complex pair (or borderline repeated roots).
        double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
        double t = (q >= 0.0) ? -q / 2.0 - s : -q / 2.0 + s;
        double u = std::cbrt(t);
        double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
        double y1 = u + v;
        double re = -0.5 * y1;
        double im = 0.5 * std::sqrt(3.0) * std::abs(u - v);
        roots[0] = y1 + shift;
        roots[1] = std::complex<double>(re + shift, im);
        roots[2] = std::complex<double>(re + shift, -im);
    }

    for (auto& r : roots) r = polish_root(r, b, c, d);
    return roots;
}

std::array<std::complex<double>, 3> multipliers(const Mat3& m) {
    return cubic_roots(m.trace(), m.minor_sum(), m.det());
}

double convergence_time(double r0) {
    double lam = std::log(r0);
    if (std::abs(lam) < 1e-12)
        throw MarginalStability("spectral radius " + std::to_string(r0) +
                                " too close to 1 for a convergence time");
    return 1.0 / std::abs(lam);
}

StabilityReport stability_report(const Mat3& jac) {
    StabilityReport rep;
    rep.jac = jac;
    rep.tr = jac.trace();
    rep.det = jac.det();
    rep.M = jac.minor_sum();
    rep.multipliers = multipliers(jac);
    rep.r0 = 0.0;
    for (const auto& m : rep.multipliers) rep.r0 = std::max(rep.r0, std::abs(m));
    rep.Lambda = std::log(rep.r0);
    rep.tau = std::abs(rep.Lambda) < 1e-12 ? std::numeric_limits<double>::infinity()
                                           : 1.0 / std::abs(rep.Lambda);
    auto [ok, flags] = schur_test(jac);
    rep.is_schur = ok;
    rep.condition_flags = flags;
    rep.clustered_roots = false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(rep.multipliers[i] - rep.multipliers[j]) < 1e-5)
                rep.clustered_roots = true;
    return rep;
}

} // namespace igo
