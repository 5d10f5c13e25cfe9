#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mna/market_data.hpp"
#include "mna/time.hpp"

namespace mna {

struct MuProcess {
    enum class Kind { constant, uniform, ar1 };
    Kind kind = Kind::uniform;
    double value = 1.0;  // constant
    // uniform default spans the 1.3 breakeven so both response signs occur
    double lo = 0.3, hi = 1.7;
    double mean = 1.0, phi = 0.8, innov_sd = 0.1;  // ar1, |phi| < 1

    static MuProcess constant(double v);
    static MuProcess uniform(double lo, double hi);
    static MuProcess ar1(double mean, double phi, double innov_sd);
    void validate() const;
    std::string describe() const;
};

// Event-level data generating process: R = a1*eps + a2g1*mu*eps + e1,
// d_rate = (gamma0 + gamma1*mu)*eps + e2, eps standard normal.
struct DgpParams {
    double a1 = 0.30;      // percent per unit surprise (cash-flow channel)
    double a2g1 = -0.23;   // percent per unit surprise per unit MU
    double gamma0 = 0.0;   // bps per unit surprise
    double gamma1 = 2.93;  // bps per unit surprise per unit MU
    double noise_sd_return = 0.5;  // percent
    double noise_sd_rate = 4.0;    // bps
    MuProcess mu;
    size_t n_events = 10000;
    uint64_t seed = 1;

    void validate() const;
};

struct PanelEvent {
    double surprise = 0;     // eps, standard normal
    double mu = 0;           // MU_{t-1}
    double stock_return = 0; // percent
    double rate_change = 0;  // bps
};

std::vector<PanelEvent> generate_panel(const DgpParams& params);

struct ParamRecovery {
    std::string name;
    double truth = 0;
    double mean = 0;
    double sd = 0;
    double coverage95 = 0;          // fraction of reps whose 95% CI covers truth
    double frac_insignificant = 0;  // fraction of reps with |t| < 2
};

struct RecoveryResult {
    std::vector<ParamRecovery> params;  // a1, a2g1, gamma0, gamma1
    size_t reps = 0;
};

// Replicated generate-then-fit experiment; replication seeds derive from
// (seed, rep) so serial and parallel runs agree.
RecoveryResult recovery_experiment(const DgpParams& params, size_t reps, int threads = 1);

struct IntradayParams {
    double effect = 0.16;             // percent jump per unit surprise
    double interaction_effect = 0.0;  // percent per unit surprise per unit MU
    MuProcess mu = MuProcess::constant(1.0);
    int jump_minute = 0;              // offset of the jump from t0
    double minute_noise_sd = 0.0;     // percent, per one-minute bar
    double day_noise_sd = 0.0;        // percent, extra close-to-close layer
    double drift_effect = 0.0;        // percent, planted pre-announcement drift
    double drift_noise_sd = 0.0;      // percent
    size_t n_events = 200;
    size_t n_quiet_days = 0;          // trailing announcement-free days
    uint64_t seed = 1;
    int pre_minutes = 10;
    int post_minutes = 20;
    int announce_minute_of_day = 13 * 60 + 30;
    Date start_date = Date(10957);    // 2000-01-03
    std::string symbol = "SYN";
    std::string kind = "SYN";

    void validate() const;
};

struct IntradayEvent {
    int64_t id = 0;
    Minute t0;
    double surprise = 0;
    double mu = 0;
    double jump = 0;  // percent, (effect + interaction_effect*mu) * surprise
};

struct IntradayPanel {
    BarSeries bars;
    std::vector<IntradayEvent> events;
    std::string symbol;
    std::string kind;
};

// One announcement day per event: a lead-in close, minute bars over the
// announcement window, a 4 pm close carried from the window end, and the
// planted drift/day-noise applied overnight. Optional quiet days follow.
IntradayPanel generate_intraday(const IntradayParams& params);

// Per-minute / overnight noise levels hitting target window and daily SDs.
struct IntradayNoise {
    double minute_noise_sd = 0;
    double day_noise_sd = 0;
};
IntradayNoise calibrate_intraday_noise(double window_sd, double daily_sd, int pre_minutes,
                                       int post_minutes);

struct WindowPowerRow {
    std::string window;  // "30min" or "daily"
    double mean_b = 0;
    double mean_t = 0;
    double mean_adj_r2 = 0;
};

// Per-window regression of announcement returns on surprise, averaged over
// replications (Table-5-style comparison).
std::vector<WindowPowerRow> window_power_experiment(const IntradayParams& params, size_t reps,
                                                    int threads = 1);

// Materialize a synthetic panel in the market_data CSV contracts: the MU
// covariate lands one day before each announcement, so the standard lag rule
// recovers it.
struct SynthFiles {
    AnnouncementSet announcements;
    DailySeries daily;
};
SynthFiles panel_to_market_data(const std::vector<PanelEvent>& panel, Date start_date,
                                int announce_minute_of_day, const std::string& kind,
                                const std::string& mu_series);

}  // namespace mna
