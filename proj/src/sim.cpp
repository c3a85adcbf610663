#include "igo/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "igo/errors.hpp"
#include "igo/matfun.hpp"

namespace igo {

namespace {

ImpulseEvent make_event(const IgoModel& model, int n, double t, const StateVec& x_pre) {
    double z = x_pre[2];
    double lam = f_mod(model.hill, z);
    double T = phi(model.hill, z);
    return ImpulseEvent{n, t, x_pre, x_pre + lam * PlantParams::B(), lam, T};
}

void csv_row(std::ostream& os, const double* vals, int n) {
    char buf[64];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
        os << buf << (i + 1 < n ? "," : "\n");
    }
}

} // namespace

std::vector<ImpulseEvent> simulate_impulses(const IgoModel& model, const StateVec& x0,
                                            int n_steps) {
    if (n_steps < 0) throw InvalidParams("n_steps must be non-negative");
    std::vector<ImpulseEvent> events;
    events.reserve(static_cast<std::size_t>(n_steps));
    StateVec x = x0;
    double t = 0.0;
    for (int n = 0; n < n_steps; ++n) {
        ImpulseEvent ev = make_event(model, n, t, x);
        events.push_back(ev);
        x = expm_At(model.plant, ev.T) * ev.x_post;
        t += ev.T;
    }
    return events;
}

std::vector<TrajectorySample> dense_trajectory(const IgoModel& model, const StateVec& x0,
                                               double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw InvalidParams("dense_trajectory requires dt > 0 and t_end > 0");

    std::vector<TrajectorySample> out;
    StateVec x = x0;
    double t = 0.0;
    while (t < t_end) {
        ImpulseEvent ev = make_event(model, 0, t, x);
        out.push_back({t, ev.x_pre});
        out.push_back({t, ev.x_post});
        double horizon = std::min(ev.T, t_end - t);
        // Samples at exact offsets from the post-jump anchor; no state
        // accumulation inside the interval.
        for (int k = 1; k * dt < horizon; ++k) {
            double s = k * dt;
            out.push_back({t + s, expm_At(model.plant, s) * ev.x_post});
        }
        if (horizon < ev.T) {
            out.push_back({t_end, expm_At(model.plant, horizon) * ev.x_post});
            return out;
        }
        x = expm_At(model.plant, ev.T) * ev.x_post;
        t += ev.T;
    }
    return out;
}

std::vector<std::pair<int, double>> weight_sequence(const std::vector<ImpulseEvent>& events) {
    std::vector<std::pair<int, double>> seq;
    seq.reserve(events.size());
    for (const auto& ev : events) seq.emplace_back(ev.n, ev.lambda);
    return seq;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
    os << "t,x1,x2,x3\n";
    for (const auto& s : samples) {
        double row[4] = {s.t, s.x[0], s.x[1], s.x[2]};
        csv_row(os, row, 4);
    }
}

void write_events_csv(std::ostream& os, const std::vector<ImpulseEvent>& events) {
    os << "n,t_n,lambda_n,T_n,x1_pre,x2_pre,x3_pre\n";
    for (const auto& ev : events) {
        double row[7] = {static_cast<double>(ev.n), ev.t,        ev.lambda, ev.T,
                         ev.x_pre[0],               ev.x_pre[1], ev.x_pre[2]};
        csv_row(os, row, 7);
    }
}

} // namespace igo
