#include "mna/kalman.hpp"

#include <cmath>
#include <stdexcept>

#include "mna/rng.hpp"

namespace mna {

namespace {

void validate(const KalmanParams& p) {
    if (p.sigma_w2 < 0 || p.sigma_m2 < 0)
        throw std::invalid_argument("kalman: noise variances must be non-negative");
    if (!(std::isfinite(p.sigma_w2) && std::isfinite(p.sigma_m2)))
        throw std::invalid_argument("kalman: noise variances must be finite");
}

}  // namespace

double kalman_gain(double p_pred, double sigma_m2) {
    if (p_pred < 0 || sigma_m2 < 0)
        throw std::invalid_argument("kalman_gain: variances must be non-negative");
    if (p_pred == 0 && sigma_m2 == 0)
        throw std::invalid_argument("kalman_gain: 0/0 is undefined");
    return p_pred / (p_pred + sigma_m2);
}

KalmanState kalman_step(const KalmanState& state, double signal, const KalmanParams& params) {
    validate(params);
    double k = state.p_pred == 0 && params.sigma_m2 == 0
                   ? 0.0
                   : kalman_gain(state.p_pred, params.sigma_m2);
    KalmanState next;
    next.i_post = state.i_pred + k * (signal - state.i_pred);
    next.p_post = (1.0 - k) * state.p_pred;
    next.i_pred = next.i_post;
    next.p_pred = next.p_post + params.sigma_w2;
    return next;
}

std::vector<FilterStep> run_filter(const KalmanParams& params, std::span<const double> signals,
                                   double i0, double p0) {
    validate(params);
    if (p0 <= 0) throw std::invalid_argument("run_filter: initial variance p0 must be positive");

    std::vector<FilterStep> out;
    out.reserve(signals.size());
    KalmanState state;
    state.i_pred = i0;
    state.p_pred = p0;
    for (double m : signals) {
        FilterStep step;
        step.signal = m;
        step.i_pred = state.i_pred;
        step.p_pred = state.p_pred;
        step.gain = state.p_pred == 0 && params.sigma_m2 == 0
                        ? 0.0
                        : kalman_gain(state.p_pred, params.sigma_m2);
        step.innovation = m - state.i_pred;
        step.delta = step.gain * step.innovation;
        state = kalman_step(state, m, params);
        step.i_post = state.i_post;
        step.p_post = state.p_post;
        out.push_back(step);
    }
    return out;
}

SteadyState steady_state(const KalmanParams& params) {
    validate(params);
    SteadyState s;
    if (params.sigma_w2 == 0) {
        s.p_pred = 0;
        s.gain = 0;
        return s;
    }
    double w = params.sigma_w2, m = params.sigma_m2;
    s.p_pred = 0.5 * (w + std::sqrt(w * w + 4.0 * w * m));
    s.gain = s.p_pred / (s.p_pred + m);
    return s;
}

SimulatedPath simulate_latent(const KalmanParams& params, size_t steps, uint64_t seed,
                              double i0) {
    validate(params);
    if (steps < 1) throw std::invalid_argument("simulate_latent: need at least 1 step");

    Rng rng(seed);
    SimulatedPath path;
    path.i0 = i0;
    SteadyState ss = steady_state(params);
    path.p0 = ss.p_pred > 0 ? ss.p_pred : 1.0;

    double sw = std::sqrt(params.sigma_w2), sm = std::sqrt(params.sigma_m2);
    path.true_state.resize(steps);
    path.signals.resize(steps);
    double state = i0;
    for (size_t t = 0; t < steps; ++t) {
        state += sw > 0 ? rng.normal(0, sw) : 0.0;
        path.true_state[t] = state;
        path.signals[t] = state + (sm > 0 ? rng.normal(0, sm) : 0.0);
    }
    path.filtered = run_filter(params, path.signals, path.i0, path.p0);
    return path;
}

}  // namespace mna
