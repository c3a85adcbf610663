#include "igo/cycle.hpp"

#include <cmath>
#include <string>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"

namespace igo {

namespace {

// Third component of lambda (exp(-A T) - I)^{-1} B, i.e. the output value of
// the fixed point for pinned modulation values (lambda, T).
double fixed_point_x3(const PlantParams& p, double lambda, double T) {
    double x = -p.a1 * T, y = -p.a2 * T, z = -p.a3 * T;
    return lambda * p.g1 * p.g2 * T * T * dd2(mu, x, y, z);
}

} // namespace

CycleSpec::CycleSpec(double lambda_, double T_) : lambda(lambda_), T(T_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidParams("cycle weight lambda must be positive, got " + std::to_string(lambda));
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidParams("cycle period T must be positive, got " + std::to_string(T));
}

StateVec map_Q(const IgoModel& model, const StateVec& X) {
    double z = X[2];
    double T = phi(model.hill, z);       // throws NonPositiveOutput for z <= 0
    double lam = f_mod(model.hill, z);
    StateVec jumped = X + lam * PlantParams::B();
    return expm_At(model.plant, T) * jumped;
}

StateVec fixed_point(const PlantParams& plant, const CycleSpec& spec) {
    double T = spec.T;
    double x = -plant.a1 * T, y = -plant.a2 * T, z = -plant.a3 * T;
    StateVec X{
        spec.lambda * mu(x),
        spec.lambda * plant.g1 * T * dd1(mu, x, y),
        spec.lambda * plant.g1 * plant.g2 * T * T * dd2(mu, x, y, z),
    };
    if (!(X[0] > 0.0 && X[1] > 0.0 && X[2] > 0.0))
        throw Error("fixed point lost positivity (parameters out of floating-point range)");
    return X;
}

double output_z0(const PlantParams& plant, const CycleSpec& spec) {
    const double a[3] = {plant.a1, plant.a2, plant.a3};
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        double alpha = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            double d = a[j] - a[i];
            if (std::abs(d) <= node_separation_threshold(a[i], a[j]))
                throw DegenerateNodes("partial fractions undefined for coincident decay rates");
            alpha /= d;
        }
        sum += alpha / std::expm1(a[i] * spec.T);
    }
    return spec.lambda * plant.g1 * plant.g2 * sum;
}

double cycle_residual(const IgoModel& model, const StateVec& X) {
    return norm_inf(map_Q(model, X) - X);
}

CycleSolution solve_one_cycle(const IgoModel& model) {
    const PlantParams& p = model.plant;
    const HillParams& h = model.hill;

    // The scalar equation g(z) = z - x3(Phi(z), F(z)) is increasing: its
    // right-hand side is bounded above by the value at the modulation
    // extremes (shortest period, largest weight).
    double z_hi = fixed_point_x3(p, h.f_hi(), h.phi_lo());
    double z_lo = 1e-8 * z_hi;

    auto g = [&](double z) { return z - fixed_point_x3(p, f_mod(h, z), phi(h, z)); };

    // Models with a wide modulation range can push the root below the default
    // lower end; extend it before declaring the bracket broken.
    double glo = g(z_lo);
    for (int widen = 0; widen < 32 && !(glo < 0.0); ++widen) {
        z_lo *= 1e-8;
        glo = g(z_lo);
    }
    double ghi = g(z_hi);
    if (!(glo < 0.0) || !(ghi >= 0.0)) {
        throw BracketingFailure("cycle equation not bracketed on [" + std::to_string(z_lo) +
                                ", " + std::to_string(z_hi) + "]");
    }

    // Relative stopping rule: the root can live at any magnitude (outputs of
    // strongly damped plants are far below 1), so no absolute floor.
    double lo = z_lo, hi = z_hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-12 * mid) break;
        if (g(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double z_star = 0.5 * (lo + hi);

    CycleSpec realized(f_mod(h, z_star), phi(h, z_star));
    StateVec X = fixed_point(p, realized);
    return CycleSolution{X, X[2], realized.lambda, realized.T, cycle_residual(model, X)};
}

} // namespace igo
