#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igo/cycle.hpp"
#include "igo/model.hpp"
#include "igo/stability.hpp"

namespace igo {

/// Which of the two half-rise-point candidates to realize a requested slope.
enum class RootChoice {
    LargerH,  ///< shallower modulation around z0 (default)
    SmallerH,
};

/// Solution record of one slope-matching quadratic (eta = (z0/h)^p).
struct HillSolveDiagnostics {
    double theta = 0.0;               ///< k p / (2 z0 slope); sign follows the slope
    std::vector<double> roots;        ///< positive eta roots, largest first
    std::vector<double> h_candidates; ///< h = z0 / eta^(1/p), matching roots order
    double eta = 0.0;                 ///< selected root
    double h = 0.0;                   ///< selected half-rise point
    std::string chosen_root;          ///< which root was selected and why
};

/// True iff the rising-side quadratic has two positive real roots, i.e. a
/// Hill Phi with span k2 and exponent p_phi can realize slope phi_prime at z0.
/// Zero slope is reported feasible (no quadratic constrains h then).
bool feasibility_phi(double z0, double k2, double p_phi, double phi_prime);

/// Falling-side counterpart for F: requires f_prime < 0 and
/// p_f >= 4 z0 |f_prime| / k4 (theta <= -2).
bool feasibility_f(double z0, double k4, double p_f, double f_prime);

/// Solve eta^2 + 2(1 - theta) eta + 1 = 0 for the Phi half-rise point.
HillSolveDiagnostics solve_hill_phi(double z0, double k2, double p_phi, double phi_prime,
                                    RootChoice choice = RootChoice::LargerH);

/// Solve eta^2 + 2(1 + theta) eta + 1 = 0 for the F half-rise point.
HillSolveDiagnostics solve_hill_f(double z0, double k4, double p_f, double f_prime,
                                  RootChoice choice = RootChoice::LargerH);

/// Shape of the modulation pair with offsets still free.
struct HillShape {
    double k2, p_phi, h_phi;
    double k4, p_f, h_f;
};

/// Offsets that interpolate the cycle: k1 = T - k2 eta/(1+eta) and
/// k3 = lambda - k4/(1+eta). Throws Infeasible when an offset is <= 0.
std::pair<double, double> calibrate_offsets(double z0, const CycleSpec& spec,
                                            const HillShape& shape);

/// Rectangular slope-grid search options.
struct SlopeSearchOptions {
    double f_lo = -1.0, f_hi = 0.0;
    int n_f = 101;
    double p_lo = 0.0, p_hi = 5.0;
    int n_p = 101;
};

/// Grid search for admissible slopes minimizing the spectral radius of the
/// closed-loop Jacobian, subject to the full three-condition stability test;
/// ties broken by smaller slope norm. Deterministic in the grid.
Slopes choose_slopes(const PlantParams& plant, const CycleSpec& spec,
                     const SlopeSearchOptions& options = {});

struct DesignOptions {
    double p_phi = 2.0;
    double p_f = 2.0;
    double k2;
    double k4;
    std::optional<Slopes> slopes;    ///< if absent, chosen by grid search
    RootChoice root_choice = RootChoice::LargerH;
    bool require_stable = true;      ///< reject explicit slopes failing the stability test
    std::optional<double> k1;        ///< offset hints, compared against the calibration
    std::optional<double> k3;
    std::optional<SlopeSearchOptions> search;
};

struct DesignResult {
    IgoModel model;
    Slopes slopes;
    CycleSolution cycle;
    StabilityReport stability;
    HillSolveDiagnostics phi_diag;
    HillSolveDiagnostics f_diag;
    std::vector<std::string> warnings;
};

/// Full design procedure: fixed point and z0 from the requested cycle, slope
/// selection or validation, half-rise points from the slope quadratics,
/// offset calibration, then re-solution of the assembled model and stability
/// analysis of the realized cycle.
DesignResult design(const PlantParams& plant, const CycleSpec& spec, const DesignOptions& options);

} // namespace igo
