#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "igo/cycle.hpp"
#include "igo/linalg.hpp"
#include "igo/model.hpp"

namespace igo {

/// One feedback firing: pre/post states, weight and the interval to the next
/// firing. t_{n+1} = t_n + T_n exactly.
struct ImpulseEvent {
    int n;
    double t;        ///< firing time t_n
    StateVec x_pre;  ///< x(t_n-)
    StateVec x_post; ///< x(t_n+) = x_pre + lambda_n B
    double lambda;   ///< F(z_n), z_n = x_pre[2]
    double T;        ///< Phi(z_n)
};

struct TrajectorySample {
    double t;
    StateVec x;
};

/// Iterate the impulse-to-impulse map from the pre-jump state x0 at t = 0.
/// All propagation uses the closed-form transition matrix; there is no
/// integration error to accumulate.
std::vector<ImpulseEvent> simulate_impulses(const IgoModel& model, const StateVec& x0,
                                            int n_steps);

/// Continuous trajectory sampled every dt inside each inter-firing interval.
/// Each firing time is emitted twice (both one-sided limits) so the jump in
/// x1 is represented exactly; the output x3 is continuous across firings.
std::vector<TrajectorySample> dense_trajectory(const IgoModel& model, const StateVec& x0,
                                               double t_end, double dt);

/// Projection of an event list to (n, lambda_n).
std::vector<std::pair<int, double>> weight_sequence(const std::vector<ImpulseEvent>& events);

/// CSV writers (17 significant digits, round-trip safe).
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples);
void write_events_csv(std::ostream& os, const std::vector<ImpulseEvent>& events);

} // namespace igo
