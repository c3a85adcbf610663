#include "igo/audit.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "igo/cycle.hpp"
#include "igo/design.hpp"
#include "igo/matfun.hpp"
#include "igo/model.hpp"
#include "igo/stability.hpp"

namespace igo {

namespace {

AuditRow row(std::string id, std::string label, double reference, double computed, double tol,
             std::string note = "") {
    double denom = std::max(std::abs(reference), 1e-300);
    double rel = std::abs(computed - reference) / denom;
    return AuditRow{std::move(id), std::move(label), reference, computed,
                    rel,           tol,              rel <= tol, std::move(note)};
}

} // namespace

std::vector<AuditRow> paper_consistency_audit() {
    // The bundled reference example, as published.
    PlantParams plant(0.08, 0.15, 0.12, 2.0, 0.5);
    CycleSpec spec(4.66, 66.75);
    const double ref_z0 = 6.8330;
    const double ref_h = 4.112;
    const Slopes ref_slopes{-0.1143, 2.2852};
    const double k1_pub = 60.0, k2 = 40.0, k3_pub = 3.0, k4 = 2.0, p = 2.0;

    std::vector<AuditRow> rows;

    // Fixed point and output value.
    StateVec X = fixed_point(plant, spec);
    rows.push_back(row("fp_x1", "fixed point x1", 0.0225, X[0], 0.01));
    rows.push_back(row("fp_x2", "fixed point x2", 0.6360, X[1], 0.01));
    rows.push_back(row("fp_x3", "fixed point x3", 6.8330, X[2], 0.01));
    double z0_sum = output_z0(plant, spec);
    rows.push_back(row("z0_sum", "z0 partial-fraction sum", ref_z0, z0_sum, 0.002,
                       "published value rounds the exact sum"));

    // Both published closed forms of x3 against the exact value.
    {
        double T = spec.T;
        double x = -plant.a1 * T, y = -plant.a2 * T, z = -plant.a3 * T;
        double den = -std::expm1(x) * -std::expm1(y) * -std::expm1(z);
        double dd_form = spec.lambda * plant.g1 * plant.g2 * T * T * dd2(mu, x, y, z);
        double expanded = spec.lambda * plant.g1 * plant.g2 * T * T / den *
                          (exp_dd2(x, y, z) + exp_dd2(x + y, x + z, y + z));
        rows.push_back(row("x3_form_dd", "x3 as 2nd divided difference of mu", X[2], dd_form, 1e-12,
                           "internal consistency of the two x3 closed forms"));
        rows.push_back(row("x3_form_expanded", "x3 expanded exponential form", X[2], expanded,
                           1e-12, "both published x3 forms agree with the direct solve"));
    }

    // Jacobian coefficient lines.
    Slopes zero{0.0, 0.0};
    Slopes ef{1.0, 0.0}, ep{0.0, 1.0};
    CharInvariants c0 = invariants_closed_form(plant, spec, zero);
    CharInvariants cf = invariants_closed_form(plant, spec, ef);
    CharInvariants cp = invariants_closed_form(plant, spec, ep);
    rows.push_back(row("tr_const", "trace constant term", 0.0052, c0.tr, 0.02));
    rows.push_back(row("tr_fprime_coeff", "trace F' coefficient", 1.4574, cf.tr - c0.tr, 0.005));
    rows.push_back(row("tr_phiprime_coeff", "trace Phi' coefficient", -0.5020, cp.tr - c0.tr, 0.005));
    rows.push_back(row("det_const", "determinant constant term", 7.1410e-11, c0.det, 0.01));

    // The published determinant/minor-sum slope coefficients cannot be
    // reproduced under any evaluated reading, so those rows compare the
    // closed forms against the assembled-matrix oracle instead and carry the
    // published numbers in the notes.
    {
        Mat3 E = expm_At(plant, spec.T);
        JacobianParts parts = jacobian_parts(plant, spec);
        auto assembled = [&](double fp, double pp) {
            Mat3 Q = E;
            for (std::size_t r = 0; r < 3; ++r)
                Q(r, 2) += fp * parts.J[r] + pp * parts.D[r];
            return Q;
        };
        Mat3 Q0 = assembled(0.0, 0.0), Qf = assembled(1.0, 0.0), Qp = assembled(0.0, 1.0);
        rows.push_back(row("det_phiprime_coeff", "determinant Phi' coefficient",
                           Qp.det() - Q0.det(), cp.det - c0.det, 1e-9,
                           "published -0.172e-14 is orders off; matrix oracle is authoritative"));
        rows.push_back(row("m_fprime_coeff", "minor-sum F' coefficient",
                           Qf.minor_sum() - Q0.minor_sum(), cf.M - c0.M, 1e-9,
                           "published -0.1251e-4 is orders off; matrix oracle is authoritative"));
        rows.push_back(row("m_phiprime_coeff", "minor-sum Phi' coefficient",
                           Qp.minor_sum() - Q0.minor_sum(), cp.M - c0.M, 1e-9,
                           "published 0.1460e-4 is orders off; matrix oracle is authoritative"));
    }
    rows.push_back(row("m_const", "minor-sum constant term", 2.1528e-7, c0.M, 0.01,
                       "published constant equals only the first of three exponential summands"));
    rows.push_back(row("m_const_first_term", "first summand of the minor-sum constant", 2.1528e-7,
                       std::exp(-(plant.a1 + plant.a2) * spec.T), 0.005,
                       "the (a1+a2) term alone reproduces the published constant"));

    // Half-rise points from the slope quadratics, using the published z0.
    HillSolveDiagnostics dphi = solve_hill_phi(ref_z0, k2, p, ref_slopes.phi_prime);
    HillSolveDiagnostics df = solve_hill_f(ref_z0, k4, p, ref_slopes.f_prime);
    rows.push_back(row("h_phi", "Phi half-rise point", ref_h, dphi.h_candidates[0], 0.001));
    rows.push_back(row("h_f", "F half-rise point", ref_h, df.h_candidates[0], 0.002));

    // Published modulation parameters evaluated at the published z0.
    HillParams hill_pub(k1_pub, k2, k3_pub, k4, ref_h, p, ref_h, p);
    rows.push_back(row("slope_phi", "Phi'(z0) at published parameters", ref_slopes.phi_prime,
                       phi_prime(hill_pub, ref_z0), 0.001));
    rows.push_back(row("slope_f", "F'(z0) at published parameters", ref_slopes.f_prime,
                       f_prime(hill_pub, ref_z0), 0.001));
    rows.push_back(row("interp_phi", "Phi(z0) against the requested period", spec.T,
                       phi(hill_pub, ref_z0), 0.001,
                       "published k1 = 60 does not interpolate Phi(z0) = T; calibration gives k1 "
                       "~ 37.4"));
    rows.push_back(row("interp_f", "F(z0) against the requested weight", spec.lambda,
                       f_mod(hill_pub, ref_z0), 0.001,
                       "published k3 = 3 does not interpolate F(z0) = lambda; calibration gives "
                       "k3 ~ 4.13"));

    // The |tr| < 1 shortcut under the published slopes, and under the
    // divide-by-ten reading of the Phi slope.
    CharInvariants cpub = invariants_closed_form(plant, spec, ref_slopes);
    rows.push_back(row("tr_bound", "|trace| < 1 bound at published slopes", 1.0,
                       std::abs(cpub.tr), 0.0,
                       "the published slopes give |tr| ~ 1.31 > 1, violating the stability bound"));
    CharInvariants calt = invariants_closed_form(plant, spec, Slopes{-0.1143, 0.22852});
    rows.push_back(row("tr_bound_alt", "|trace| with Phi' read as 0.22852", 0.276,
                       std::abs(calt.tr), 0.01,
                       "a plausible decimal-shift reading restores the bound"));

    return rows;
}

const std::vector<std::string>& expected_mismatch_ids() {
    static const std::vector<std::string> ids{"interp_phi", "interp_f", "tr_bound", "m_const"};
    return ids;
}

void print_audit_table(std::ostream& os, const std::vector<AuditRow>& rows) {
    os << "reference-example consistency audit\n";
    os << "-----------------------------------\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-10s %-42s ref=%-13.6g got=%-13.6g rel=%-9.2e %s",
                      r.match ? "MATCH" : "MISMATCH", r.label.c_str(), r.reference, r.computed,
                      r.rel_diff, r.id.c_str());
        os << buf << "\n";
        if (!r.note.empty()) os << "           note: " << r.note << "\n";
    }
}

} // namespace igo
