#pragma once

#include <array>
#include <complex>

#include "igo/cycle.hpp"
#include "igo/linalg.hpp"
#include "igo/model.hpp"

namespace igo {

/// The two gain directions of the closed-loop Jacobian
/// Q'(X) = exp(A T) + (F'(z0) J + Phi'(z0) D) C:
/// J = exp(A T) B (strictly positive), D = A X (strictly negative).
struct JacobianParts {
    Vec3 J;
    Vec3 D;
};

/// Modulation-function derivative values at the cycle output z0.
struct Slopes {
    double f_prime;   ///< F'(z0) <= 0
    double phi_prime; ///< Phi'(z0) >= 0
};

/// Trace, determinant and principal-minor sum of the Jacobian.
struct CharInvariants {
    double tr;
    double det;
    double M;
};

/// Full stability analysis of a Jacobian matrix.
struct StabilityReport {
    Mat3 jac;
    double tr, M, det;
    std::array<std::complex<double>, 3> multipliers;
    double r0;       ///< spectral radius
    double Lambda;   ///< ln r0
    double tau;      ///< 1/|Lambda|; +inf when marginal
    bool is_schur;
    std::array<bool, 3> condition_flags; ///< the three determinant/trace tests
    bool clustered_roots;                ///< multipliers closer than 1e-5 pairwise
};

/// Jacobian of the impulse-to-impulse map at a fixed point X of the model:
/// Q'(X) = exp(A Phi(z0)) (I + F'(z0) B C) + Phi'(z0) A X C, z0 = X[2].
/// The fixed-point residual is gated before evaluation.
Mat3 jacobian(const IgoModel& model, const StateVec& X);

/// J and D for prescribed cycle parameters.
JacobianParts jacobian_parts(const PlantParams& plant, const CycleSpec& spec);

/// Necessary and sufficient Schur conditions for a real 3x3 matrix:
///   |det| < 1,  |tr + det| < 1 + M,  |tr det - M| < 1 - det^2,
/// with M the sum of the principal 2x2 minors.
std::pair<bool, std::array<bool, 3>> schur_test(const Mat3& m);

/// Closed-form characteristic invariants of the Jacobian as affine functions
/// of the slopes, assembled from the transition-matrix entries; matches the
/// matrix-level invariants of jacobian() to rounding.
CharInvariants invariants_closed_form(const PlantParams& plant, const CycleSpec& spec,
                                      const Slopes& slopes);

/// Roots of x^3 - tr x^2 + M x - det (Cardano with trigonometric branch,
/// one Newton polish step per root).
std::array<std::complex<double>, 3> cubic_roots(double tr, double M, double det);

/// Eigenvalues of m via its characteristic cubic.
std::array<std::complex<double>, 3> multipliers(const Mat3& m);

/// tau = 1/|ln r0|: e-folding impulse count of convergence to the orbit.
/// Throws MarginalStability when |ln r0| < 1e-12.
double convergence_time(double r0);

/// Assemble the full report for a Jacobian (tau set to +inf when marginal).
StabilityReport stability_report(const Mat3& jac);

} // namespace igo
