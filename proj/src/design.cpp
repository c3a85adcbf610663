#include "igo/design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"

namespace igo {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

HillSolveDiagnostics solve_quadratic(double z0, double theta, double p, double lin_coeff,
                                     RootChoice choice, const char* side) {
    // eta^2 + 2 lin_coeff eta + 1 = 0 with lin_coeff = (1 - theta) for Phi and
    // (1 + theta) for F. Root product is 1, so the roots are reciprocal.
    HillSolveDiagnostics d;
    d.theta = theta;
    double disc = lin_coeff * lin_coeff - 1.0;
    if (disc < 0.0 && disc > -1e-12 * (lin_coeff * lin_coeff + 1.0)) disc = 0.0;
    if (disc < 0.0)
        throw Infeasible(std::string(side) + " slope quadratic has no real roots (theta = " +
                         fmt(theta) + ")");
    double s = std::sqrt(disc);
    double r1 = -lin_coeff + s;
    double r2 = -lin_coeff - s;
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw Infeasible(std::string(side) + " slope quadratic has non-positive roots (theta = " +
                         fmt(theta) + ")");
    if (r1 < r2) std::swap(r1, r2);
    d.roots = {r1, r2};
    d.h_candidates = {z0 / std::pow(r1, 1.0 / p), z0 / std::pow(r2, 1.0 / p)};
    // Smaller eta gives the larger half-rise point.
    bool larger_h = (choice == RootChoice::LargerH);
    d.eta = larger_h ? r2 : r1;
    d.h = larger_h ? d.h_candidates[1] : d.h_candidates[0];
    d.chosen_root = larger_h ? "smaller eta root (larger h: shallower modulation around z0)"
                             : "larger eta root (smaller h)";
    return d;
}

} // namespace

bool feasibility_phi(double z0, double k2, double p_phi, double phi_prime) {
    if (phi_prime == 0.0) return true; // flat request: no quadratic constrains h
    if (phi_prime < 0.0) return false;
    return p_phi >= 4.0 * z0 * phi_prime / k2;
}

bool feasibility_f(double z0, double k4, double p_f, double f_prime) {
    if (!(f_prime < 0.0)) return false;
    return p_f >= -4.0 * z0 * f_prime / k4;
}

HillSolveDiagnostics solve_hill_phi(double z0, double k2, double p_phi, double phi_prime,
                                    RootChoice choice) {
    if (!(phi_prime > 0.0))
        throw Infeasible("Phi slope must be positive to solve for h, got " + fmt(phi_prime));
    if (!feasibility_phi(z0, k2, p_phi, phi_prime))
        throw Infeasible("Phi slope " + fmt(phi_prime) + " infeasible: requires p_phi >= " +
                         fmt(4.0 * z0 * phi_prime / k2) + ", got " + fmt(p_phi));
    double theta = k2 * p_phi / (2.0 * z0 * phi_prime);
    return solve_quadratic(z0, theta, p_phi, 1.0 - theta, choice, "Phi");
}

HillSolveDiagnostics solve_hill_f(double z0, double k4, double p_f, double f_prime,
                                  RootChoice choice) {
    if (!(f_prime < 0.0))
        throw Infeasible("F slope must be negative to solve for h, got " + fmt(f_prime));
    if (!feasibility_f(z0, k4, p_f, f_prime))
        throw Infeasible("F slope " + fmt(f_prime) + " infeasible: requires p_f >= " +
                         fmt(-4.0 * z0 * f_prime / k4) + ", got " + fmt(p_f));
    double theta = k4 * p_f / (2.0 * z0 * f_prime);
    return solve_quadratic(z0, theta, p_f, 1.0 + theta, choice, "F");
}

std::pair<double, double> calibrate_offsets(double z0, const CycleSpec& spec,
                                            const HillShape& shape) {
    double eta_phi = std::pow(z0 / shape.h_phi, shape.p_phi);
    double eta_f = std::pow(z0 / shape.h_f, shape.p_f);
    double k1 = spec.T - shape.k2 * eta_phi / (1.0 + eta_phi);
    double k3 = spec.lambda - shape.k4 / (1.0 + eta_f);
    if (!(k1 > 0.0))
        throw Infeasible("offset calibration: k1 = " + fmt(k1) +
                         " <= 0 (requested T too small for the Phi span)");
    if (!(k3 > 0.0))
        throw Infeasible("offset calibration: k3 = " + fmt(k3) +
                         " <= 0 (requested lambda too small for the F span)");
    return {k1, k3};
}

Slopes choose_slopes(const PlantParams& plant, const CycleSpec& spec,
                     const SlopeSearchOptions& opt) {
    Mat3 E = expm_At(plant, spec.T);
    Vec3 J = E.col(0);
    Vec3 D = plant.A() * fixed_point(plant, spec);

    bool found = false;
    Slopes best{0.0, 0.0};
    double best_r0 = 0.0, best_norm = 0.0;

    for (int i = 0; i < opt.n_f; ++i) {
        double fp = opt.n_f == 1 ? opt.f_lo
                                 : opt.f_lo + (opt.f_hi - opt.f_lo) * i / double(opt.n_f - 1);
        for (int j = 0; j < opt.n_p; ++j) {
            double pp = opt.n_p == 1 ? opt.p_lo
                                     : opt.p_lo + (opt.p_hi - opt.p_lo) * j / double(opt.n_p - 1);
            if (fp > 0.0 || pp < 0.0) continue;

            Mat3 Q = E;
            for (std::size_t r = 0; r < 3; ++r) Q(r, 2) += fp * J[r] + pp * D[r];
            auto [schur, flags] = schur_test(Q);
            if (!schur) continue;

            double r0 = 0.0;
            for (const auto& m : multipliers(Q)) r0 = std::max(r0, std::abs(m));
            if (r0 >= 1.0) continue; // eigenvalue cross-check of the algebraic test

            double norm = std::hypot(fp, pp);
            if (!found || r0 < best_r0 || (r0 == best_r0 && norm < best_norm)) {
                found = true;
                best = {fp, pp};
                best_r0 = r0;
                best_norm = norm;
            }
        }
    }
    if (!found) throw NoStableSlopes("no grid point satisfies the stability conditions");
    return best;
}

DesignResult design(const PlantParams& plant, const CycleSpec& spec, const DesignOptions& opt) {
    if (!(opt.k2 > 0.0) || !(opt.k4 > 0.0))
        throw InvalidParams("design requires positive modulation spans k2, k4");

    std::vector<std::string> warnings;

    // Step 3: fixed point and output value of the requested cycle.
    StateVec X = fixed_point(plant, spec);
    double z0 = X[2];

    // Steps 5-6: slope selection or validation.
    Slopes slopes{};
    if (opt.slopes) {
        slopes = *opt.slopes;
        if (!(slopes.f_prime < 0.0))
            throw Infeasible("step 6: explicit F slope must be negative (a flat F needs k4 -> 0)");
        if (!(slopes.phi_prime > 0.0))
            throw Infeasible("step 6: explicit Phi slope must be positive (a flat Phi needs k2 -> 0)");
        if (!feasibility_phi(z0, opt.k2, opt.p_phi, slopes.phi_prime))
            throw Infeasible("step 6: Phi slope " + fmt(slopes.phi_prime) +
                             " not realizable with k2 = " + fmt(opt.k2) + ", p_phi = " +
                             fmt(opt.p_phi) + " at z0 = " + fmt(z0));
        if (!feasibility_f(z0, opt.k4, opt.p_f, slopes.f_prime))
            throw Infeasible("step 6: F slope " + fmt(slopes.f_prime) + " not realizable with k4 = " +
                             fmt(opt.k4) + ", p_f = " + fmt(opt.p_f) + " at z0 = " + fmt(z0));

        Mat3 probe = expm_At(plant, spec.T);
        {
            JacobianParts parts = jacobian_parts(plant, spec);
            for (std::size_t r = 0; r < 3; ++r)
                probe(r, 2) += slopes.f_prime * parts.J[r] + slopes.phi_prime * parts.D[r];
        }
        auto [schur, flags] = schur_test(probe);
        (void)flags;
        if (!schur) {
            if (opt.require_stable)
                throw NoStableSlopes("step 6: requested slopes fail the stability conditions "
                                     "(set require_stable = false to design anyway)");
            warnings.push_back("requested slopes fail the stability conditions; "
                               "designing an unstable cycle as asked");
        }
    } else {
        // Constrain the search grid to the slope box the Hill quadratics can
        // realize, staying strictly away from the flat-modulation edges.
        SlopeSearchOptions grid = opt.search.value_or(SlopeSearchOptions{});
        double f_bound = opt.p_f * opt.k4 / (4.0 * z0);
        double p_bound = opt.p_phi * opt.k2 / (4.0 * z0);
        grid.f_lo = std::max(grid.f_lo, -f_bound);
        grid.f_hi = std::min(grid.f_hi, -f_bound / double(grid.n_f));
        grid.p_hi = std::min(grid.p_hi, p_bound);
        grid.p_lo = std::max(grid.p_lo, p_bound / double(grid.n_p));
        slopes = choose_slopes(plant, spec, grid);
    }

    // Step 4/6: half-rise points realizing the slopes.
    HillSolveDiagnostics phi_diag =
        solve_hill_phi(z0, opt.k2, opt.p_phi, slopes.phi_prime, opt.root_choice);
    HillSolveDiagnostics f_diag =
        solve_hill_f(z0, opt.k4, opt.p_f, slopes.f_prime, opt.root_choice);

    // Step 7: interpolation offsets.
    HillShape shape{opt.k2, opt.p_phi, phi_diag.h, opt.k4, opt.p_f, f_diag.h};
    auto [k1, k3] = calibrate_offsets(z0, spec, shape);
    if (opt.k1 && std::abs(*opt.k1 - k1) > 1e-9 * std::max(1.0, std::abs(k1)))
        warnings.push_back("supplied k1 = " + fmt(*opt.k1) + " does not interpolate Phi(z0) = T; "
                           "recalibrated to k1 = " + fmt(k1));
    if (opt.k3 && std::abs(*opt.k3 - k3) > 1e-9 * std::max(1.0, std::abs(k3)))
        warnings.push_back("supplied k3 = " + fmt(*opt.k3) + " does not interpolate F(z0) = lambda; "
                           "recalibrated to k3 = " + fmt(k3));

    IgoModel model{plant, HillParams(k1, opt.k2, k3, opt.k4, phi_diag.h, opt.p_phi, f_diag.h,
                                     opt.p_f)};

    // Re-solve the assembled model; the realized cycle must reproduce the
    // request.
    CycleSolution cycle = solve_one_cycle(model);
    double rel_l = std::abs(cycle.lambda - spec.lambda) / spec.lambda;
    double rel_T = std::abs(cycle.T - spec.T) / spec.T;
    if (rel_l > 1e-6 || rel_T > 1e-6)
        throw Error("designed model failed verification: realized (lambda, T) = (" +
                    fmt(cycle.lambda) + ", " + fmt(cycle.T) + ")");

    StabilityReport stability = stability_report(jacobian(model, cycle.X));
    if (!stability.is_schur)
        warnings.push_back("designed cycle is not orbitally stable (spectral radius " +
                           fmt(stability.r0) + ")");
    if (stability.clustered_roots)
        warnings.push_back("multipliers are clustered; their individual values are ill-conditioned");

    return DesignResult{model, slopes, cycle, stability, phi_diag, f_diag, std::move(warnings)};
}

} // namespace igo
