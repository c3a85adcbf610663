#pragma once

#include "igo/linalg.hpp"

namespace igo {

/// Continuous third-order plant: two-diagonal Metzler matrix A with decay
/// rates a1,a2,a3 and chain gains g1,g2; input B = e1, output C = e3'.
///
/// Validated at construction: rates positive and pairwise distinct, gains
/// positive. Invalid parameter sets cannot be instantiated.
struct PlantParams {
    double a1, a2, a3;
    double g1, g2;

    PlantParams(double a1_, double a2_, double a3_, double g1_, double g2_);

    Mat3 A() const;
    static constexpr Vec3 B() { return {1.0, 0.0, 0.0}; }
    // C picks the third state: C*x == x[2].
};

/// Hill-type modulation parameters.
///
/// Phi(z) = k1 + k2 (z/h_phi)^p_phi / (1 + (z/h_phi)^p_phi)   (non-decreasing)
/// F(z)   = k3 + k4 / (1 + (z/h_f)^p_f)                       (non-increasing)
///
/// The saturation bounds are Phi in (k1, k1+k2) and F in (k3, k3+k4).
struct HillParams {
    double k1, k2, k3, k4;
    double h_phi, p_phi;
    double h_f, p_f;

    HillParams(double k1_, double k2_, double k3_, double k4_,
               double h_phi_, double p_phi_, double h_f_, double p_f_);

    double phi_lo() const { return k1; }
    double phi_hi() const { return k1 + k2; }
    double f_lo() const { return k3; }
    double f_hi() const { return k3 + k4; }
};

/// A complete oscillator model: plant plus modulation functions.
struct IgoModel {
    PlantParams plant;
    HillParams hill;
};

/// Frequency modulation function Phi evaluated at output value z > 0.
double phi(const HillParams& hill, double z);

/// Amplitude modulation function F evaluated at output value z > 0.
double f_mod(const HillParams& hill, double z);

/// dPhi/dz at z > 0; non-negative.
double phi_prime(const HillParams& hill, double z);

/// dF/dz at z > 0; non-positive.
double f_prime(const HillParams& hill, double z);

} // namespace igo
