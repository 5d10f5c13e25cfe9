#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mna/time.hpp"

namespace mna {

// Swaption Black vol (percent of rate) rescaled to yield units:
// MU = black_vol * rate_level / 100, in percent.
double implied_mu(double black_vol_pct, double rate_level_pct);

// Rolling sample SD (n-1) of daily yield changes in bps over `window`
// business days, annualized by sqrt(252) and converted to percent. Output is
// aligned so value i corresponds to changes[i+window-1].
std::vector<double> realized_mu(std::span<const double> daily_changes_bps, size_t window = 63);

// MU level at which the risk-free-rate channel exactly offsets the cash-flow
// channel: -b/d. Requires d != 0.
double breakeven_mu(double b, double d);

// Return sensitivity to a 1 bp rate move: d (percent) -> bps, over gamma1.
double estimate_a2(double d_stock, double gamma1_rate);

struct ChannelPoint {
    Date date;
    double cash_flow = 0;  // percent, constant b
    double risk_free = 0;  // percent, d * MU
    double total = 0;      // cash_flow + risk_free
    bool positive = false; // total >= 0
};

struct ChannelSeries {
    std::vector<ChannelPoint> points;
    // Dates where the total crosses zero, linearly interpolated between
    // adjacent observations (fractional days floor to the earlier date).
    std::vector<Date> crossings;
};

// Channel decomposition over an already-lagged MU series.
ChannelSeries channel_series(double b, double d,
                             std::span<const std::pair<Date, double>> mu_series);

}  // namespace mna
