#include "igo/model.hpp"

#include <cmath>
#include <string>

#include "igo/errors.hpp"

namespace igo {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidParams(std::string(name) + " must be positive and finite, got " +
                            std::to_string(v));
    }
}

void require_distinct(double x, double y, const char* xn, const char* yn) {
    double eps = 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x - y) <= eps) {
        throw DegenerateNodes(std::string("decay rates ") + xn + " and " + yn +
                              " coincide: " + std::to_string(x));
    }
}

// Saturation ratio q/(1+q) with q = (z/h)^p, computed overflow-free from
// whichever side of h the argument lies.
double hill_ratio(double z, double h, double p) {
    if (z <= h) {
        double q = std::pow(z / h, p);
        return q / (1.0 + q);
    }
    double qinv = std::pow(h / z, p);
    return 1.0 / (1.0 + qinv);
}

void require_output(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw NonPositiveOutput("modulation functions require z > 0, got " + std::to_string(z));
    }
}

} // namespace

PlantParams::PlantParams(double a1_, double a2_, double a3_, double g1_, double g2_)
    : a1(a1_), a2(a2_), a3(a3_), g1(g1_), g2(g2_) {
    require_positive(a1, "a1");
    require_positive(a2, "a2");
    require_positive(a3, "a3");
    require_positive(g1, "g1");
    require_positive(g2, "g2");
    require_distinct(a1, a2, "a1", "a2");
    require_distinct(a1, a3, "a1", "a3");
    require_distinct(a2, a3, "a2", "a3");
}

Mat3 PlantParams::A() const {
    Mat3 a;
    a(0, 0) = -a1;
    a(1, 0) = g1;
    a(1, 1) = -a2;
    a(2, 1) = g2;
    a(2, 2) = -a3;
    return a;
}

HillParams::HillParams(double k1_, double k2_, double k3_, double k4_,
                       double h_phi_, double p_phi_, double h_f_, double p_f_)
    : k1(k1_), k2(k2_), k3(k3_), k4(k4_),
      h_phi(h_phi_), p_phi(p_phi_), h_f(h_f_), p_f(p_f_) {
    require_positive(k1, "k1");
    require_positive(k2, "k2");
    require_positive(k3, "k3");
    require_positive(k4, "k4");
    require_positive(h_phi, "h_phi");
    require_positive(h_f, "h_f");
    if (!(p_phi >= 1.0) || !std::isfinite(p_phi))
        throw InvalidParams("p_phi must be >= 1, got " + std::to_string(p_phi));
    if (!(p_f >= 1.0) || !std::isfinite(p_f))
        throw InvalidParams("p_f must be >= 1, got " + std::to_string(p_f));
}

double phi(const HillParams& hill, double z) {
    require_output(z);
    return hill.k1 + hill.k2 * hill_ratio(z, hill.h_phi, hill.p_phi);
}

double f_mod(const HillParams& hill, double z) {
    require_output(z);
    return hill.k3 + hill.k4 * (1.0 - hill_ratio(z, hill.h_f, hill.p_f));
}

double phi_prime(const HillParams& hill, double z) {
    require_output(z);
    double u = hill_ratio(z, hill.h_phi, hill.p_phi);
    return hill.k2 * hill.p_phi * u * (1.0 - u) / z;
}

double f_prime(const HillParams& hill, double z) {
    require_output(z);
    double u = hill_ratio(z, hill.h_f, hill.p_f);
    return -hill.k4 * hill.p_f * u * (1.0 - u) / z;
}

} // namespace igo
