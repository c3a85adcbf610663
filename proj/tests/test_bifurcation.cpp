#include <doctest.h>

#include <cmath>
#include <sstream>

#include "igo/bifurcation.hpp"
#include "igo/errors.hpp"
#include "igo/stability.hpp"
#include "oracles.hpp"

using namespace igo;

namespace {

// Continuation base of the bundled reference example.
SweepBase reference_base() { return SweepBase{0.08, 0.15, 2.0, 0.5, 60.0, 40.0, 3.0, 2.0, 2.0}; }
CycleSpec sweep_spec() { return CycleSpec(4.66, 66.7502); }

} // namespace

TEST_CASE("solve_h_for: reference arithmetic chain") {
    HCalibration cal = solve_h_for(0.12, reference_base(), CycleSpec(4.66, 66.75));
    // eta = 6.75/33.25, z0 = 6.8295, h = z0/sqrt(eta)
    CHECK(cal.z0 == doctest::Approx(6.82948087941).epsilon(1e-10));  // frozen
    CHECK(cal.h == doctest::Approx(15.15764152).epsilon(1e-8));      // frozen
    // F(z0) = 3 + 2/(1 + eta) = 4.6625, within the 1e-3 consistency band
    CHECK(cal.f_residual < 1e-3);
    CHECK(cal.f_residual == doctest::Approx(std::abs(4.6625 - 4.66) / 4.66).epsilon(1e-6));
}

TEST_CASE("solve_h_for: midpoint period gives h = z0") {
    SweepBase b = reference_base();
    CycleSpec s(4.66, b.k1 + b.k2 / 2.0); // eta = 1
    HCalibration cal = solve_h_for(0.12, b, s);
    CHECK(cal.h == doctest::Approx(cal.z0).epsilon(1e-12));
}

TEST_CASE("solve_h_for: requests outside the modulation ranges fail") {
    SweepBase b = reference_base();
    CHECK_THROWS_AS(solve_h_for(0.12, b, CycleSpec(4.66, 60.0)), Infeasible);  // T = k1
    CHECK_THROWS_AS(solve_h_for(0.12, b, CycleSpec(4.66, 40.0)), Infeasible);  // T < k1
    CHECK_THROWS_AS(solve_h_for(0.12, b, CycleSpec(5.5, 66.75)), Infeasible);  // lambda > k3+k4
}

TEST_CASE("a3 sweep: exactly one period-doubling crossing in the reference range") {
    SweepBase base = reference_base();
    CycleSpec spec = sweep_spec();
    auto records = sweep_a3(base, spec, 0.1505, 0.54, 200);
    REQUIRE(records.size() == 200);
    for (const auto& r : records) CHECK(r.error.empty());

    auto eval = [&](double a3) { return evaluate_a3_point(a3, base, spec); };
    auto crossings = detect_crossings(records, eval);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].type == "period_doubling");
    CHECK(crossings[0].param == doctest::Approx(0.243719829254888).epsilon(1e-5)); // frozen
    CHECK(std::abs(crossings[0].critical_multiplier + 1.0) < 1e-5);

    // stability flag flips exactly once along the sweep
    int flips = 0;
    for (std::size_t i = 0; i + 1 < records.size(); ++i)
        if (records[i].is_schur != records[i + 1].is_schur) ++flips;
    CHECK(flips == 1);
}

TEST_CASE("a3 sweep: calibrated h decreases monotonically") {
    auto records = sweep_a3(reference_base(), sweep_spec(), 0.1505, 0.54, 60);
    for (std::size_t i = 0; i + 1 < records.size(); ++i) CHECK(records[i].h > records[i + 1].h);
}

TEST_CASE("a3 sweep: grid points colliding with a1 or a2 are skipped, sweep continues") {
    // 0.15 == a2 lands on the grid: range [0.10, 0.20] with 11 points
    auto records = sweep_a3(reference_base(), sweep_spec(), 0.10, 0.20, 11);
    REQUIRE(records.size() == 11);
    int skipped = 0;
    for (const auto& r : records)
        if (r.error.find("DegenerateNodes") != std::string::npos) ++skipped;
    CHECK(skipped == 1);
    CHECK(records[5].error.find("DegenerateNodes") != std::string::npos); // a3 = 0.15
    CHECK(records[4].error.empty());
    CHECK(records[6].error.empty());
}

TEST_CASE("a3 sweep: closed-form invariants match the record multipliers") {
    auto records = sweep_a3(reference_base(), sweep_spec(), 0.1505, 0.54, 25);
    for (const auto& r : records) {
        REQUIRE(r.error.empty());
        // multipliers reproduce their own characteristic polynomial built
        // from elementary symmetric functions
        std::complex<double> s1 = r.multipliers[0] + r.multipliers[1] + r.multipliers[2];
        std::complex<double> s3 = r.multipliers[0] * r.multipliers[1] * r.multipliers[2];
        CHECK(std::abs(s1.imag()) < 1e-9);
        CHECK(std::abs(s3.imag()) < 1e-12);
        CHECK(r.r0 == std::max({std::abs(r.multipliers[0]), std::abs(r.multipliers[1]),
                                std::abs(r.multipliers[2])}));
    }
}

TEST_CASE("slope sweep: open-loop endpoint and instability spike") {
    PlantParams plant(0.08, 0.15, 0.3005, 2.0, 0.5);
    CycleSpec spec(4.6625, 66.7502);
    auto records = sweep_slopes(plant, spec, -0.6, 0.0, 20.0, 100);
    REQUIRE(records.size() == 100);

    // f' = 0 endpoint: open-loop multipliers exp(-a_i T)
    const SweepRecord& open = records.back();
    CHECK(open.param == 0.0);
    CHECK(open.r0 == doctest::Approx(std::exp(-0.08 * spec.T)).epsilon(1e-9));
    CHECK(open.tau == doctest::Approx(1.0 / (0.08 * spec.T)).epsilon(1e-9));
    CHECK(open.is_schur);

    // instability for steep negative slopes, with a tau spike near r0 = 1
    CHECK_FALSE(records.front().is_schur);
    double tau_max = 0.0;
    for (const auto& r : records) tau_max = std::max(tau_max, r.tau);
    CHECK(tau_max > 50.0);

    // determinism: identical inputs give identical records
    auto again = sweep_slopes(plant, spec, -0.6, 0.0, 20.0, 100);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].param == again[i].param);
        CHECK(records[i].r0 == again[i].r0);
        CHECK(records[i].tau == again[i].tau);
    }
}

TEST_CASE("slope sweep: crossing near the computed stability boundary") {
    PlantParams plant(0.08, 0.15, 0.3005, 2.0, 0.5);
    CycleSpec spec(4.6625, 66.7502);
    auto records = sweep_slopes(plant, spec, -0.6, 0.0, 20.0, 100);
    auto eval = [&](double fp) { return evaluate_slope_point(fp, plant, spec, 20.0); };
    auto crossings = detect_crossings(records, eval);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].type == "period_doubling");
    CHECK(crossings[0].param == doctest::Approx(-0.39).epsilon(0.01));
    CHECK(std::abs(crossings[0].critical_multiplier + 1.0) < 1e-5);
}

TEST_CASE("detect_crossings: synthetic linear family crosses at the midpoint") {
    // rho(s) = -0.9 - 0.2 s on s in [0, 1]: crossing of -1 at s = 0.5
    auto synthetic = [](double s) {
        SweepRecord r;
        r.param = s;
        r.h = r.z0 = 0.0;
        r.multipliers = {std::complex<double>(-0.9 - 0.2 * s, 0.0), 0.1, 0.2};
        r.r0 = std::abs(-0.9 - 0.2 * s);
        r.tau = 1.0;
        r.is_schur = r.r0 < 1.0;
        return r;
    };
    std::vector<SweepRecord> records;
    for (int i = 0; i <= 10; ++i) records.push_back(synthetic(i / 10.0));
    auto crossings = detect_crossings(records, synthetic);
    REQUIRE(crossings.size() == 1);
    CHECK(crossings[0].param == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(crossings[0].type == "period_doubling");

    // a sweep that stays inside the stability region reports nothing
    std::vector<SweepRecord> quiet;
    for (int i = 0; i <= 10; ++i) {
        SweepRecord r = synthetic(0.0);
        r.param = i / 10.0;
        quiet.push_back(r);
    }
    CHECK(detect_crossings(quiet).empty());
}

TEST_CASE("sweep csv: schema and error-column sanitation") {
    auto records = sweep_a3(reference_base(), sweep_spec(), 0.10, 0.20, 11);
    std::ostringstream os;
    write_sweep_csv(os, records);
    std::string csv = os.str();
    CHECK(csv.rfind("param,h,z0,re_rho1,im_rho1,re_rho2,im_rho2,re_rho3,im_rho3,r0,tau,is_schur,"
                    "error\n",
                    0) == 0);
    // every row has exactly 12 commas (13 columns)
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line))
        CHECK(std::count(line.begin(), line.end(), ',') == 12);
}
