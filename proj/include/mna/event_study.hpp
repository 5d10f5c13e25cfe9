#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mna/market_data.hpp"
#include "mna/time.hpp"

namespace mna {

struct WindowSpec {
    int pre_minutes = 10;
    int post_minutes = 20;
    int carry_minutes = 5;  // max stale-quote carry-forward at a boundary
};

struct EventReturn {
    int64_t announcement_id = 0;
    double window_return = 0;  // percent
    double abs_return = 0;
    // Prior 4 pm close to t0-pre; absent when the prior close is not covered.
    std::optional<double> pre_drift;
};

// Simple return in percent over [t0-pre, t0+post]. Boundary price is the last
// trade at or before the boundary, carried forward at most carry_minutes.
// Throws when either boundary price is unavailable.
EventReturn extract_event_return(const SymbolBars& bars, int64_t announcement_id, Minute t0,
                                 const WindowSpec& window = {});

// Absolute window returns at `minute_of_day` on days with no tracked
// announcement of any kind. Days missing a boundary price are skipped;
// an empty result is an error.
std::vector<double> baseline_abs_returns(const SymbolBars& bars, int minute_of_day,
                                         const std::set<Date>& announcement_days,
                                         const WindowSpec& window = {});

struct ScreenRow {
    std::string kind;
    double mean_abs = 0;
    double median_abs = 0;
    double p_t = 1;
    double p_mww = 1;
    bool relevant = false;  // p_t < 0.05
};

ScreenRow relevance_screen(const std::string& kind, std::vector<double> event_abs,
                           std::vector<double> baseline_abs);

struct SummaryStats {
    double min = 0, p1 = 0, p10 = 0, p25 = 0, median = 0, p75 = 0, p90 = 0, p99 = 0, max = 0;
    double mean = 0, sd = 0;
};

// Percentiles by the nearest-rank rule; sd uses the n-1 convention
// (sd is 0 for a single observation).
SummaryStats summarize(const std::vector<double>& values);

struct PathEvent {
    int64_t id = 0;
    Minute t0;
    double surprise = 0;  // normalized
};

struct QuartilePaths {
    std::vector<int> minutes;                   // offsets from t0, -pre..horizon
    std::vector<std::vector<double>> mean_ret;  // [quartile 0..3][minute]
    std::vector<size_t> events_used;            // per quartile
    size_t dropped = 0;                         // events without the reference price
};

// Average cumulative return path per surprise quartile, relative to the price
// one minute before the announcement. Quartile assignment is by surprise rank
// with ties broken by announcement id; bucket sizes differ by at most one,
// remainders going to the lowest quartiles.
QuartilePaths price_path_by_quartile(const SymbolBars& bars, std::vector<PathEvent> events,
                                     int horizon_minutes, int pre_minutes = 10,
                                     int carry_minutes = 5);

}  // namespace mna
