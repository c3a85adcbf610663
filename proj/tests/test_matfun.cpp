#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"
#include "oracles.hpp"

using namespace igo;

namespace {
const ScalarFn kExp = [](double z) { return std::exp(z); };
}

TEST_CASE("dd1: slope of exp between 0 and ln 2") {
    CHECK(dd1(kExp, 0.0, std::log(2.0)) == doctest::Approx(1.4426950408889634).epsilon(1e-14));
}

TEST_CASE("dd1: constants flatten, identity has unit slope") {
    ScalarFn c = [](double) { return 3.25; };
    ScalarFn id = [](double z) { return z; };
    CHECK(dd1(c, -1.0, 2.0) == doctest::Approx(0.0));
    CHECK(dd1(id, -7.5, 0.3) == doctest::Approx(1.0));
}

TEST_CASE("dd1: coincident nodes are rejected") {
    CHECK_THROWS_AS(dd1(kExp, 1.0, 1.0), DegenerateNodes);
    CHECK_THROWS_AS(dd1(kExp, 1.0, 1.0 + 1e-12), DegenerateNodes);
    CHECK_THROWS_AS(dd1(kExp, 1e6, 1e6 * (1.0 + 1e-12)), DegenerateNodes);
}

TEST_CASE("dd2: exp at the reference nodes, recursive vs weighted-sum form") {
    double x = -5.34, y = -10.0125, z = -8.01;
    double rec = dd2(kExp, x, y, z);
    CHECK(rec == doctest::Approx(3.2709468833063329e-4).epsilon(1e-12));
    // sum beta_i f(z_i) with beta_i = prod_{j != i} 1/(z_j - z_i)
    double nodes[3] = {x, y, z};
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        double beta = 1.0;
        for (int j = 0; j < 3; ++j)
            if (j != i) beta /= nodes[j] - nodes[i];
        sum += beta * std::exp(nodes[i]);
    }
    CHECK(rec == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("dd2: affine functions vanish, z^2 gives the leading coefficient") {
    ScalarFn affine = [](double z) { return 2.5 * z - 7.0; };
    ScalarFn sq = [](double z) { return z * z; };
    CHECK(dd2(affine, -1.0, 0.5, 2.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(dd2(sq, -1.0, 0.5, 2.0) == doctest::Approx(1.0));
    CHECK(dd2(sq, 3.0, 11.0, -4.0) == doctest::Approx(1.0));
}

TEST_CASE("dd1/dd2 are symmetric under node permutations") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-12.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        double n[3] = {u(rng), u(rng), u(rng)};
        if (std::abs(n[0] - n[1]) < 1e-3 || std::abs(n[1] - n[2]) < 1e-3 ||
            std::abs(n[0] - n[2]) < 1e-3)
            continue;
        double d1 = dd1(kExp, n[0], n[1]);
        CHECK(dd1(kExp, n[1], n[0]) == doctest::Approx(d1).epsilon(1e-13));
        double d2 = dd2(kExp, n[0], n[1], n[2]);
        int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : perm)
            CHECK(dd2(kExp, n[p[0]], n[p[1]], n[p[2]]) == doctest::Approx(d2).epsilon(1e-11));
    }
}

TEST_CASE("divided differences of exp are positive") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-30.0, 0.0);
    for (int trial = 0; trial < 500; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (std::abs(a - b) < 1e-3 || std::abs(b - c) < 1e-3 || std::abs(a - c) < 1e-3) continue;
        CHECK(dd1(kExp, a, b) > 0.0);
        CHECK(dd2(kExp, a, b, c) > 0.0);
        CHECK(exp_dd1(a, b) > 0.0);
        CHECK(exp_dd2(a, b, c) > 0.0);
    }
}

TEST_CASE("scaling law: f_xi[z0,z1] = xi f[z0 xi, z1 xi], squared for dd2") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-5.0, -0.5);
    std::uniform_real_distribution<double> scale(0.2, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        double a = u(rng), b = 2.0 * u(rng), c = 3.0 * u(rng);
        if (std::abs(a - b) < 1e-2 || std::abs(b - c) < 1e-2 || std::abs(a - c) < 1e-2) continue;
        double xi = scale(rng);
        ScalarFn fxi = [xi](double z) { return std::exp(z * xi); };
        CHECK(dd1(fxi, a, b) == doctest::Approx(xi * exp_dd1(a * xi, b * xi)).epsilon(1e-11));
        CHECK(dd2(fxi, a, b, c) ==
              doctest::Approx(xi * xi * exp_dd2(a * xi, b * xi, c * xi)).epsilon(1e-10));
    }
}

TEST_CASE("exp_dd stays accurate for clustered and coincident nodes") {
    CHECK(exp_dd1(-2.0, -2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    // f''(z)/2 = e^z/2 at the confluent point
    CHECK(exp_dd2(-2.0, -2.0, -2.0) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-13));
    // tiny spread: compare against the mean-value bound e^(mid)/2 and the
    // recursive evaluation in higher spread
    double v = exp_dd2(-1.0, -1.0 + 1e-7, -1.0 + 2e-7);
    CHECK(v == doctest::Approx(0.5 * std::exp(-1.0 + 1e-7)).epsilon(1e-9));
}

TEST_CASE("mu: reference values and limits") {
    CHECK(mu(-5.34) == doctest::Approx(4.8189819245618746e-3).epsilon(1e-13));
    CHECK(mu(-std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(mu(-50.0)) < 1e-12);
    CHECK(mu(-1e-3) > 0.0); // positive for z < 0
    CHECK_THROWS_AS(mu(0.0), DegenerateNodes);
    CHECK_THROWS_AS(mu(1e-12), DegenerateNodes);
}

TEST_CASE("nu: reference values") {
    CHECK(nu(-1.0) == doctest::Approx(-0.58197670686932642).epsilon(1e-13));
    CHECK(nu(-std::log(2.0)) == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("nu is negative, decreasing and concave on a negative grid") {
    std::vector<double> z, v;
    for (double x = -20.0; x <= -0.01; x += 0.05) {
        z.push_back(x);
        v.push_back(nu(x));
    }
    for (double x : v) CHECK(x < 0.0);
    std::vector<double> d1;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        d1.push_back(v[i + 1] - v[i]);
        CHECK(d1.back() < 0.0); // decreasing
    }
    for (std::size_t i = 0; i + 1 < d1.size(); ++i) CHECK(d1[i + 1] - d1[i] < 0.0); // concave
}

TEST_CASE("opitz: identity function reproduces A, constant one gives I") {
    PlantParams plant(0.08, 0.15, 0.12, 2.0, 0.5);
    Mat3 a = opitz_apply([](double z) { return z; }, plant);
    Mat3 A = plant.A();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(a(r, c) == doctest::Approx(A(r, c)).epsilon(1e-14));
    Mat3 one = opitz_apply([](double) { return 1.0; }, plant);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(one(r, c) == doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-14));
}

TEST_CASE("opitz with exp(z t) agrees with the transition matrix") {
    PlantParams plant(0.08, 0.15, 0.12, 2.0, 0.5);
    for (double t : {0.3, 5.0, 66.75}) {
        Mat3 via_opitz = opitz_apply([t](double z) { return std::exp(z * t); }, plant);
        Mat3 direct = expm_At(plant, t);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(via_opitz(r, c) == doctest::Approx(direct(r, c)).epsilon(1e-9));
    }
}

TEST_CASE("transition matrix: t = 0 gives the identity") {
    PlantParams plant(0.08, 0.15, 0.12, 2.0, 0.5);
    Mat3 e = expm_At(plant, 0.0);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(e(r, c) == (r == c ? 1.0 : 0.0));
}

TEST_CASE("transition matrix: diagonal equals scalar exponentials at T = 66.75") {
    PlantParams plant(0.08, 0.15, 0.12, 2.0, 0.5);
    Mat3 e = expm_At(plant, 66.75);
    CHECK(e(0, 0) == doctest::Approx(std::exp(-0.08 * 66.75)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-0.15 * 66.75)).epsilon(1e-14));
    CHECK(e(2, 2) == doctest::Approx(std::exp(-0.12 * 66.75)).epsilon(1e-14));
    // upper triangle is exactly zero
    CHECK(e(0, 1) == 0.0);
    CHECK(e(0, 2) == 0.0);
    CHECK(e(1, 2) == 0.0);
}

TEST_CASE("transition matrix matches the series oracle on random plants") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> time(0.0, 100.0);
    for (int trial = 0; trial < 300; ++trial) {
        PlantParams plant = oracle::random_plant(rng);
        double t = (trial % 3 == 0) ? 0.1 : (trial % 3 == 1) ? 1.0 : 10.0 * time(rng) / 10.0;
        Mat3 got = expm_At(plant, t);
        Mat3 want = oracle::expm_series(t * plant.A());
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double denom = std::max(std::abs(want(r, c)), 1e-280);
                CHECK(std::abs(got(r, c) - want(r, c)) / denom <= 1e-10);
            }
    }
}

TEST_CASE("transition matrix semigroup property") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> time(0.01, 40.0);
    for (int trial = 0; trial < 100; ++trial) {
        PlantParams plant = oracle::random_plant(rng);
        double s = time(rng), t = time(rng);
        Mat3 prod = expm_At(plant, s) * expm_At(plant, t);
        Mat3 sum = expm_At(plant, s + t);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(prod(r, c) == doctest::Approx(sum(r, c)).epsilon(1e-9));
    }
}

TEST_CASE("transition matrix is entrywise non-negative for t >= 0") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> time(0.0, 120.0);
    for (int trial = 0; trial < 200; ++trial) {
        PlantParams plant = oracle::random_plant(rng);
        Mat3 e = expm_At(plant, time(rng));
        for (double v : e.m) CHECK(v >= 0.0);
    }
}
