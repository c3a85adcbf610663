#include "igo/bifurcation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"
#include "igo/stability.hpp"

namespace igo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepRecord failed_record(double param, std::string what) {
    SweepRecord r;
    r.param = param;
    r.h = r.z0 = r.r0 = r.tau = kNaN;
    r.multipliers = {kNaN, kNaN, kNaN};
    r.is_schur = false;
    r.error = std::move(what);
    return r;
}

SweepRecord record_from_report(double param, double h, double z0, const StabilityReport& rep) {
    SweepRecord r;
    r.param = param;
    r.h = h;
    r.z0 = z0;
    r.multipliers = rep.multipliers;
    r.r0 = rep.r0;
    r.tau = rep.tau;
    r.is_schur = rep.is_schur;
    if (std::abs(std::log(rep.r0)) < 1e-12) r.error = "warn: MarginalStability (r0 ~ 1)";
    return r;
}

SweepRecord slope_point(double fp, double ratio, const Mat3& E, const Vec3& J, const Vec3& D) {
    double pp = -ratio * fp;
    Mat3 Q = E;
    for (std::size_t r = 0; r < 3; ++r) Q(r, 2) += fp * J[r] + pp * D[r];
    return record_from_report(fp, kNaN, kNaN, stability_report(Q));
}

// Most negative real multiplier (+inf when none is real); the tracked
// quantity for period-doubling detection.
double min_real_multiplier(const SweepRecord& r) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& rho : r.multipliers) {
        if (std::isnan(rho.real())) continue;
        if (std::abs(rho.imag()) <= 1e-9 * (1.0 + std::abs(rho))) m = std::min(m, rho.real());
    }
    return m;
}

// Largest modulus among complex-pair multipliers (0 when all real).
double max_complex_modulus(const SweepRecord& r) {
    double m = 0.0;
    for (const auto& rho : r.multipliers) {
        if (std::isnan(rho.real())) continue;
        if (std::abs(rho.imag()) > 1e-9 * (1.0 + std::abs(rho))) m = std::max(m, std::abs(rho));
    }
    return m;
}

bool usable(const SweepRecord& r) {
    return r.error.empty() || r.error.rfind("warn:", 0) == 0;
}

// Sign change over [a, b], counting an exact zero at b once (it belongs to
// this bracket, not the next one, which starts from zero).
bool sign_change(double va, double vb) {
    if (!std::isfinite(va) || !std::isfinite(vb)) return false;
    if (va == 0.0) return false;
    return ((va <= 0.0) != (vb <= 0.0)) || vb == 0.0;
}

BifurcationPoint refine_bracket(double lo, double hi, const PointEvaluator& eval,
                                const std::function<double(const SweepRecord&)>& value,
                                const std::string& type) {
    BifurcationPoint pt;
    pt.type = type;
    pt.param_lo = lo;
    pt.param_hi = hi;
    double vlo = 0.0;
    if (eval) {
        vlo = value(eval(lo));
        for (int it = 0; it < 100 && hi - lo > 1e-9 * (1.0 + std::abs(lo)); ++it) {
            double mid = 0.5 * (lo + hi);
            double vm = value(eval(mid));
            if (std::abs(vm) < 1e-10) {
                lo = hi = mid;
                break;
            }
            if ((vlo < 0.0) == (vm < 0.0)) {
                lo = mid;
                vlo = vm;
            } else {
                hi = mid;
            }
        }
    }
    pt.param = 0.5 * (lo + hi);
    if (eval) {
        SweepRecord rec = eval(pt.param);
        pt.critical_multiplier =
            type == "period_doubling" ? min_real_multiplier(rec) : max_complex_modulus(rec);
    } else {
        pt.critical_multiplier = type == "period_doubling" ? -1.0 : 1.0;
    }
    return pt;
}

} // namespace

HCalibration solve_h_for(double a3, const SweepBase& b, const CycleSpec& spec) {
    if (!(spec.T > b.k1) || !(spec.T < b.k1 + b.k2))
        throw Infeasible("requested period outside the Phi range (" + std::to_string(b.k1) +
                         ", " + std::to_string(b.k1 + b.k2) + ")");
    if (!(spec.lambda > b.k3) || !(spec.lambda < b.k3 + b.k4))
        throw Infeasible("requested weight outside the F range (" + std::to_string(b.k3) + ", " +
                         std::to_string(b.k3 + b.k4) + ")");
    PlantParams plant(b.a1, b.a2, a3, b.g1, b.g2);
    double z0 = output_z0(plant, spec);
    double eta = (spec.T - b.k1) / (b.k1 + b.k2 - spec.T);
    double h = z0 / std::pow(eta, 1.0 / b.p);
    double f_at_z0 = b.k3 + b.k4 / (1.0 + eta);
    return {h, z0, std::abs(f_at_z0 - spec.lambda) / spec.lambda};
}

SweepRecord evaluate_a3_point(double a3, const SweepBase& b, const CycleSpec& spec) {
    double tol = 1e-9 * std::max({1.0, b.a1, b.a2, a3});
    if (std::abs(a3 - b.a1) <= tol || std::abs(a3 - b.a2) <= tol)
        return failed_record(a3, "DegenerateNodes: a3 collides with a1 or a2; point skipped");
    try {
        PlantParams plant(b.a1, b.a2, a3, b.g1, b.g2);
        HCalibration cal = solve_h_for(a3, b, spec);
        IgoModel model{plant, HillParams(b.k1, b.k2, b.k3, b.k4, cal.h, b.p, cal.h, b.p)};
        CycleSolution cyc = solve_one_cycle(model);
        StabilityReport rep = stability_report(jacobian(model, cyc.X));
        SweepRecord rec = record_from_report(a3, cal.h, cyc.z0, rep);
        if (cal.f_residual > 1e-3 && rec.error.empty())
            rec.error = "warn: F(z0) misses lambda by " + std::to_string(cal.f_residual) +
                        " relative (inconsistent lambda/T/k request)";
        return rec;
    } catch (const Error& e) {
        return failed_record(a3, e.what());
    }
}

SweepRecord evaluate_slope_point(double f_prime, const PlantParams& plant, const CycleSpec& spec,
                                 double k2_over_k4) {
    Mat3 E = expm_At(plant, spec.T);
    Vec3 J = E.col(0);
    Vec3 D = plant.A() * fixed_point(plant, spec);
    return slope_point(f_prime, k2_over_k4, E, J, D);
}

std::vector<SweepRecord> sweep_a3(const SweepBase& base, const CycleSpec& spec, double a3_lo,
                                  double a3_hi, int n_points) {
    if (n_points < 2 || !(a3_hi > a3_lo))
        throw InvalidParams("sweep_a3 requires an increasing range and at least 2 points");
    std::vector<SweepRecord> records;
    records.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        double a3 = a3_lo + (a3_hi - a3_lo) * i / double(n_points - 1);
        records.push_back(evaluate_a3_point(a3, base, spec));
    }
    return records;
}

std::vector<SweepRecord> sweep_slopes(const PlantParams& plant, const CycleSpec& spec,
                                      double f_lo, double f_hi, double k2_over_k4,
                                      int n_points) {
    if (n_points < 2 || !(f_hi > f_lo))
        throw InvalidParams("sweep_slopes requires an increasing range and at least 2 points");
    if (f_hi > 0.0) throw InvalidParams("F slopes must be non-positive over the range");
    Mat3 E = expm_At(plant, spec.T);
    Vec3 J = E.col(0);
    Vec3 D = plant.A() * fixed_point(plant, spec);
    std::vector<SweepRecord> records;
    records.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        double fp = f_lo + (f_hi - f_lo) * i / double(n_points - 1);
        records.push_back(slope_point(fp, k2_over_k4, E, J, D));
    }
    return records;
}

std::vector<BifurcationPoint> detect_crossings(const std::vector<SweepRecord>& records,
                                               const PointEvaluator& eval) {
    std::vector<BifurcationPoint> points;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        const SweepRecord& a = records[i];
        const SweepRecord& b = records[i + 1];
        if (!usable(a) || !usable(b)) continue;

        double pa = min_real_multiplier(a) + 1.0;
        double pb = min_real_multiplier(b) + 1.0;
        if (sign_change(pa, pb)) {
            auto value = [](const SweepRecord& r) { return min_real_multiplier(r) + 1.0; };
            points.push_back(refine_bracket(a.param, b.param, eval, value, "period_doubling"));
        }

        double ma = max_complex_modulus(a);
        double mb = max_complex_modulus(b);
        if (ma > 0.0 && mb > 0.0 && sign_change(ma - 1.0, mb - 1.0)) {
            auto value = [](const SweepRecord& r) { return max_complex_modulus(r) - 1.0; };
            points.push_back(refine_bracket(a.param, b.param, eval, value, "neimark_sacker"));
        }
    }
    return points;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "param,h,z0,re_rho1,im_rho1,re_rho2,im_rho2,re_rho3,im_rho3,r0,tau,is_schur,error\n";
    char buf[64];
    for (const auto& r : records) {
        double vals[11] = {r.param,
                           r.h,
                           r.z0,
                           r.multipliers[0].real(),
                           r.multipliers[0].imag(),
                           r.multipliers[1].real(),
                           r.multipliers[1].imag(),
                           r.multipliers[2].real(),
                           r.multipliers[2].imag(),
                           r.r0,
                           r.tau};
        for (double v : vals) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf << ',';
        }
        std::string err = r.error;
        for (char& c : err)
            if (c == ',') c = ';';
        os << (r.is_schur ? 1 : 0) << ',' << err << "\n";
    }
}

} // namespace igo
