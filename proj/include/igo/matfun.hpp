#pragma once

#include <functional>

#include "igo/linalg.hpp"
#include "igo/model.hpp"

namespace igo {

/// Scalar real function handle; all spectra used by the toolkit are real.
using ScalarFn = std::function<double(double)>;

/// Relative node-separation threshold below which divided differences are
/// rejected as degenerate rather than silently regularized.
double node_separation_threshold(double z0, double z1);

/// First divided difference f[z0, z1] = (f(z1) - f(z0)) / (z1 - z0).
/// Symmetric in its nodes. Throws DegenerateNodes for near-coincident nodes.
double dd1(const ScalarFn& f, double z0, double z1);

/// Second divided difference f[z0, z1, z2]; invariant under node permutations.
double dd2(const ScalarFn& f, double z0, double z1, double z2);

/// First divided difference of exp, computed cancellation-free via
/// exp((x+y)/2) * sinh(h)/h. Well defined for any node spacing, including
/// coincident nodes (confluent value exp(x)).
double exp_dd1(double x, double y);

/// Second divided difference of exp. Uses the recursive form with sorted
/// nodes for well-separated data and a centered series for clustered nodes,
/// so it stays accurate down to (and including) coincident nodes.
double exp_dd2(double x, double y, double z);

/// mu(z) = 1/(exp(-z) - 1) = exp(z)/(1 - exp(z)); z != 0.
double mu(double z);

/// nu(z) = z * mu(z); negative, decreasing and strictly concave on z < 0.
double nu(double z);

/// f(A) for the two-diagonal plant matrix, via divided differences at the
/// eigenvalues -a1, -a2, -a3:
///
///   [ f(-a1)              0                 0       ]
///   [ g1 f[-a1,-a2]       f(-a2)            0       ]
///   [ g1 g2 f[-a1,-a2,-a3]  g2 f[-a2,-a3]   f(-a3)  ]
Mat3 opitz_apply(const ScalarFn& f, const PlantParams& plant);

/// Transition matrix exp(A t), exact up to scalar special-function accuracy.
/// Uses the scaling law f_t[z0,z1] = t e[z0 t, z1 t] with the stable
/// exponential divided differences; entries are non-negative for t >= 0.
Mat3 expm_At(const PlantParams& plant, double t);

} // namespace igo
