#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mna {

struct KalmanParams {
    double sigma_w2 = 0;  // state-noise variance
    double sigma_m2 = 0;  // signal-noise variance
};

struct KalmanState {
    double i_post = 0;  // posterior estimate
    double p_post = 0;  // posterior variance
    double i_pred = 0;  // next-period prediction (= i_post)
    double p_pred = 0;  // next-period prediction variance (= p_post + sigma_w2)
};

// K = p_pred / (p_pred + sigma_m2). Throws on the 0/0 case.
double kalman_gain(double p_pred, double sigma_m2);

KalmanState kalman_step(const KalmanState& state, double signal, const KalmanParams& params);

struct FilterStep {
    double signal = 0;
    double i_pred = 0;
    double p_pred = 0;
    double gain = 0;
    double innovation = 0;  // signal - i_pred
    double delta = 0;       // gain * innovation
    double i_post = 0;
    double p_post = 0;
};

// Sequential filter from (i0, p0). Inside the recursion a fully certain prior
// with a noiseless signal (p_pred = 0, sigma_m2 = 0) takes gain 0: the
// estimate is already exact and the signal carries nothing new.
std::vector<FilterStep> run_filter(const KalmanParams& params, std::span<const double> signals,
                                   double i0, double p0);

struct SteadyState {
    double p_pred = 0;  // positive root of p^2 - sigma_w2*p - sigma_w2*sigma_m2 = 0
    double gain = 0;
};

SteadyState steady_state(const KalmanParams& params);

struct SimulatedPath {
    std::vector<double> true_state;
    std::vector<double> signals;
    std::vector<FilterStep> filtered;
    double i0 = 0;
    double p0 = 0;
};

// Random walk state + noisy signals from a seeded generator, filtered
// alongside. p0 defaults to the steady-state prediction variance (or 1 when
// that is zero, so the first update still weighs the signal).
SimulatedPath simulate_latent(const KalmanParams& params, size_t steps, uint64_t seed,
                              double i0 = 0.0);

}  // namespace mna
