#include <doctest.h>

#include <cmath>
#include <sstream>

#include "igo/errors.hpp"
#include "igo/json_io.hpp"
#include "igo/model.hpp"

using namespace igo;

namespace {
HillParams reference_hill() {
    // Published modulation parameters of the bundled reference example.
    return HillParams(60.0, 40.0, 3.0, 2.0, 4.112, 2.0, 4.112, 2.0);
}
} // namespace

TEST_CASE("plant validation rejects bad parameters") {
    CHECK_THROWS_AS(PlantParams(0.0, 0.15, 0.12, 2.0, 0.5), InvalidParams);
    CHECK_THROWS_AS(PlantParams(-0.08, 0.15, 0.12, 2.0, 0.5), InvalidParams);
    CHECK_THROWS_AS(PlantParams(0.08, 0.15, 0.12, 2.0, 0.0), InvalidParams);
    CHECK_THROWS_AS(PlantParams(0.08, 0.08, 0.12, 2.0, 0.5), DegenerateNodes);
    CHECK_THROWS_AS(PlantParams(0.08, 0.15, 0.15, 2.0, 0.5), DegenerateNodes);
}

TEST_CASE("hill validation rejects bad parameters") {
    CHECK_THROWS_AS(HillParams(0.0, 40, 3, 2, 4, 2, 4, 2), InvalidParams);
    CHECK_THROWS_AS(HillParams(60, 40, 3, 2, 4, 0.5, 4, 2), InvalidParams);
    CHECK_THROWS_AS(HillParams(60, 40, 3, -2, 4, 2, 4, 2), InvalidParams);
}

TEST_CASE("phi: limits, half-rise point and reference value") {
    HillParams hill = reference_hill();
    CHECK(phi(hill, 1e-12) - hill.k1 < 1e-9 * hill.k2);
    CHECK(phi(hill, hill.h_phi) == doctest::Approx(hill.k1 + hill.k2 / 2).epsilon(1e-12));
    CHECK(phi(hill, 6.833) == doctest::Approx(89.36543358).epsilon(1e-8));
}

TEST_CASE("f_mod: limits, half-rise point and reference value") {
    HillParams hill = reference_hill();
    CHECK(f_mod(hill, 1e-12) == doctest::Approx(hill.k3 + hill.k4).epsilon(1e-9));
    CHECK(f_mod(hill, hill.h_f) == doctest::Approx(hill.k3 + hill.k4 / 2).epsilon(1e-12));
    CHECK(f_mod(hill, 6.833) == doctest::Approx(3.531728321).epsilon(1e-8));
}

TEST_CASE("modulation functions reject non-positive arguments") {
    HillParams hill = reference_hill();
    CHECK_THROWS_AS(phi(hill, 0.0), NonPositiveOutput);
    CHECK_THROWS_AS(f_mod(hill, -1.0), NonPositiveOutput);
    CHECK_THROWS_AS(phi_prime(hill, 0.0), NonPositiveOutput);
    CHECK_THROWS_AS(f_prime(hill, -0.5), NonPositiveOutput);
}

TEST_CASE("derivatives: published values and half-rise simplifications") {
    HillParams hill = reference_hill();
    CHECK(phi_prime(hill, 6.833) == doctest::Approx(2.2852).epsilon(1e-3));
    CHECK(f_prime(hill, 6.833) == doctest::Approx(-0.1143).epsilon(1e-3));
    CHECK(phi_prime(hill, hill.h_phi) ==
          doctest::Approx(hill.k2 * hill.p_phi / (4.0 * hill.h_phi)).epsilon(1e-12));
    CHECK(f_prime(hill, hill.h_f) ==
          doctest::Approx(-hill.k4 * hill.p_f / (4.0 * hill.h_f)).epsilon(1e-12));
}

TEST_CASE("derivative slopes scale linearly in the spans") {
    HillParams a(60, 20, 3, 1, 4.112, 2, 4.112, 2);
    HillParams b(60, 40, 3, 2, 4.112, 2, 4.112, 2);
    CHECK(2.0 * phi_prime(a, 6.833) == doctest::Approx(phi_prime(b, 6.833)).epsilon(1e-12));
    CHECK(2.0 * f_prime(a, 6.833) == doctest::Approx(f_prime(b, 6.833)).epsilon(1e-12));
}

TEST_CASE("monotonicity and bounds on an increasing grid") {
    HillParams hill = reference_hill();
    double prev_phi = phi(hill, 1e-6);
    double prev_f = f_mod(hill, 1e-6);
    for (double z = 1e-3; z < 1e4; z *= 1.37) {
        double p = phi(hill, z), f = f_mod(hill, z);
        CHECK(p >= prev_phi);
        CHECK(f <= prev_f);
        CHECK(p > hill.k1);
        CHECK(p < hill.k1 + hill.k2);
        CHECK(f > hill.k3);
        CHECK(f < hill.k3 + hill.k4);
        prev_phi = p;
        prev_f = f;
    }
}

TEST_CASE("derivatives agree with central differences on a log grid") {
    HillParams hill(37.4, 40.0, 4.13, 2.0, 4.112, 2.0, 4.1136, 2.0);
    for (double z = 1e-2; z < 1e3; z *= 2.1) {
        double h = 1e-6 * z;
        double dphi = (phi(hill, z + h) - phi(hill, z - h)) / (2 * h);
        double df = (f_mod(hill, z + h) - f_mod(hill, z - h)) / (2 * h);
        CHECK(phi_prime(hill, z) == doctest::Approx(dphi).epsilon(1e-6));
        if (std::abs(df) > 1e-14)
            CHECK(f_prime(hill, z) == doctest::Approx(df).epsilon(1e-6));
    }
}

TEST_CASE("overflow-safe evaluation far beyond the half-rise point") {
    HillParams hill(60, 40, 3, 2, 1e-3, 8.0, 1e-3, 8.0);
    double p = phi(hill, 1e60); // (z/h)^p would overflow naively
    CHECK(std::isfinite(p));
    CHECK(p == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(f_mod(hill, 1e60) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(phi_prime(hill, 1e60) == doctest::Approx(0.0));
}

TEST_CASE("JSON round trip uses the exact field names") {
    IgoModel model{PlantParams(0.08, 0.15, 0.12, 2.0, 0.5), reference_hill()};
    json j = to_json(model);
    for (const char* key : {"a1", "a2", "a3", "g1", "g2", "k1", "k2", "k3", "k4", "h_phi",
                            "p_phi", "h_f", "p_f"})
        CHECK(j.contains(key));
    CHECK(j.size() == 13);
    IgoModel back = model_from_json(j);
    CHECK(back.plant.a3 == model.plant.a3);
    CHECK(back.hill.h_phi == model.hill.h_phi);
}

TEST_CASE("JSON parsing rejects unknown keys and bad values") {
    json j = to_json(PlantParams(0.08, 0.15, 0.12, 2.0, 0.5));
    j["extra"] = 1.0;
    CHECK_THROWS_AS(plant_from_json(j), ConfigError);
    json good = to_json(PlantParams(0.08, 0.15, 0.12, 2.0, 0.5));
    good.erase("a2");
    CHECK_THROWS_AS(plant_from_json(good), ConfigError);
    json bad = to_json(PlantParams(0.08, 0.15, 0.12, 2.0, 0.5));
    bad["a1"] = -1.0;
    CHECK_THROWS_AS(plant_from_json(bad), ConfigError);
}
