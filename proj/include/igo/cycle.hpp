#pragma once

#include "igo/linalg.hpp"
#include "igo/model.hpp"

namespace igo {

/// Requested 1-cycle characteristics: impulse weight (dose) and period.
struct CycleSpec {
    double lambda;
    double T;

    CycleSpec(double lambda_, double T_);
};

/// A solved 1-cycle: pre-jump fixed point of the impulse-to-impulse map.
struct CycleSolution {
    StateVec X;      ///< fixed point (pre-jump state)
    double z0;       ///< output at firing; equals X[2]
    double lambda;   ///< realized weight F(z0)
    double T;        ///< realized period Phi(z0)
    double residual; ///< max-norm of Q(X) - X
};

/// One application of the impulse-to-impulse map:
/// Q(X) = exp(A Phi(z)) (X + F(z) B),  z = X[2].
StateVec map_Q(const IgoModel& model, const StateVec& X);

/// Fixed point of Q for prescribed (lambda, T):
/// X = lambda (exp(-A T) - I)^{-1} B, evaluated as the first column of
/// mu(A T) scaled by lambda (divided differences of mu at -a_i T).
StateVec fixed_point(const PlantParams& plant, const CycleSpec& spec);

/// Output value at the firing instant via the partial-fraction sum
/// z0 = lambda g1 g2 sum_i alpha_i / (exp(a_i T) - 1); equals fixed_point()[2].
double output_z0(const PlantParams& plant, const CycleSpec& spec);

/// Max-norm residual of the fixed-point equation at X for the given model.
double cycle_residual(const IgoModel& model, const StateVec& X);

/// Solve the full model for its unique 1-cycle: bracketed bisection on the
/// scalar equation z = C (exp(-A Phi(z)) - I)^{-1} B F(z), then reconstruction
/// of the state from the realized (lambda, T).
CycleSolution solve_one_cycle(const IgoModel& model);

} // namespace igo
