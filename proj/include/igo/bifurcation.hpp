#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "igo/cycle.hpp"
#include "igo/model.hpp"

namespace igo {

/// Parameters shared by every point of an a3 continuation: the first two
/// decay rates, gains, the four modulation coefficients and the common Hill
/// exponent (h_phi = h_f = h is imposed per point).
struct SweepBase {
    double a1, a2;
    double g1, g2;
    double k1, k2, k3, k4;
    double p;
};

/// Result of calibrating the shared half-rise point for one a3 value.
struct HCalibration {
    double h;
    double z0;         ///< output value of the requested cycle at this a3
    double f_residual; ///< relative gap |F(z0) - lambda| / lambda
};

/// One point of a bifurcation sweep. Failed points carry a non-empty error
/// string and NaN values; warnings are prefixed "warn:" and keep the values.
struct SweepRecord {
    double param;
    double h;
    double z0;
    std::array<std::complex<double>, 3> multipliers;
    double r0;
    double tau;
    bool is_schur;
    std::string error;
};

/// A multiplier crossing of the unit circle located between two sweep points.
struct BifurcationPoint {
    std::string type; ///< "period_doubling" (real multiplier through -1) or
                      ///< "neimark_sacker" (complex pair modulus through 1)
    double param_lo, param_hi; ///< grid bracket
    double param;              ///< refined location (bracket midpoint if unrefined)
    double critical_multiplier;
};

/// Calibrate the shared h from the interpolation condition Phi(z0) = T:
/// eta = (T - k1)/(k1 + k2 - T), h = z0 / eta^(1/p). The weight condition
/// F(z0) = lambda is then over-determined; its residual is recorded and
/// values beyond 1e-3 relative are surfaced as warnings by the sweeps.
HCalibration solve_h_for(double a3, const SweepBase& base, const CycleSpec& spec);

/// One continuation point: calibrate h, solve the realized 1-cycle, analyze
/// its Jacobian. Failures are captured in the record, never thrown.
SweepRecord evaluate_a3_point(double a3, const SweepBase& base, const CycleSpec& spec);

/// One slope-plane point under the coupling phi' = -k2_over_k4 * f'.
SweepRecord evaluate_slope_point(double f_prime, const PlantParams& plant, const CycleSpec& spec,
                                 double k2_over_k4);

/// Continuation in a3: per point, calibrate h, assemble the model, solve its
/// 1-cycle, and analyze the Jacobian. Per-point failures are captured in the
/// record and the sweep continues.
std::vector<SweepRecord> sweep_a3(const SweepBase& base, const CycleSpec& spec, double a3_lo,
                                  double a3_hi, int n_points);

/// Slope-plane sweep with the coupling phi' = -ratio * f' (ratio = k2/k4):
/// the Jacobian depends on the slopes only, so no Hill calibration is needed.
std::vector<SweepRecord> sweep_slopes(const PlantParams& plant, const CycleSpec& spec,
                                      double f_lo, double f_hi, double k2_over_k4,
                                      int n_points);

/// Re-evaluate a sweep point at an arbitrary parameter value (for bracket
/// refinement).
using PointEvaluator = std::function<SweepRecord(double)>;

/// Locate unit-circle crossings in an ordered record list: sign changes of
/// (most negative real multiplier + 1) flag period doubling; modulus
/// crossings of complex pairs are tagged as Neimark-Sacker candidates. With
/// an evaluator, each bracket is refined by bisection on the parameter.
std::vector<BifurcationPoint> detect_crossings(const std::vector<SweepRecord>& records,
                                               const PointEvaluator& eval = nullptr);

/// CSV writer with columns param,h,z0,re_rho1,im_rho1,...,r0,tau,is_schur,error.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

} // namespace igo
