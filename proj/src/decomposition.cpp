#include "mna/decomposition.hpp"

#include <cmath>
#include <stdexcept>

#include "mna/stats.hpp"

namespace mna {

double implied_mu(double black_vol_pct, double rate_level_pct) {
    if (black_vol_pct < 0 || rate_level_pct < 0)
        throw std::invalid_argument("implied_mu: inputs must be non-negative");
    return black_vol_pct * rate_level_pct / 100.0;
}

std::vector<double> realized_mu(std::span<const double> daily_changes_bps, size_t window) {
    if (window < 2) throw std::invalid_argument("realized_mu: window must be >= 2");
    if (daily_changes_bps.size() < window)
        throw std::invalid_argument("realized_mu: need at least " + std::to_string(window) +
                                    " observations, got " +
                                    std::to_string(daily_changes_bps.size()));
    std::vector<double> out;
    out.reserve(daily_changes_bps.size() - window + 1);
    const double annualize = std::sqrt(252.0);
    for (size_t end = window; end <= daily_changes_bps.size(); ++end) {
        std::vector<double> slice(daily_changes_bps.begin() + (end - window),
                                  daily_changes_bps.begin() + end);
        out.push_back(sample_sd(slice) * annualize / 100.0);  // bps -> percent
    }
    return out;
}

double breakeven_mu(double b, double d) {
    if (d == 0) throw std::invalid_argument("breakeven_mu: interaction coefficient d is zero");
    return -b / d;
}

double estimate_a2(double d_stock, double gamma1_rate) {
    if (gamma1_rate == 0)
        throw std::invalid_argument("estimate_a2: rate sensitivity gamma1 is zero");
    return d_stock * 100.0 / gamma1_rate;
}

ChannelSeries channel_series(double b, double d,
                             std::span<const std::pair<Date, double>> mu_series) {
    if (mu_series.empty()) throw std::invalid_argument("channel_series: empty MU series");
    ChannelSeries out;
    out.points.reserve(mu_series.size());
    for (const auto& [date, mu] : mu_series) {
        ChannelPoint p;
        p.date = date;
        p.cash_flow = b;
        p.risk_free = d * mu;
        p.total = p.cash_flow + p.risk_free;
        p.positive = p.total >= 0;
        out.points.push_back(p);
    }
    for (size_t i = 1; i < out.points.size(); ++i) {
        const ChannelPoint& a = out.points[i - 1];
        const ChannelPoint& c = out.points[i];
        if (a.positive == c.positive || a.total == c.total) continue;
        double frac = a.total / (a.total - c.total);  // in [0, 1]
        int32_t span = c.date.days() - a.date.days();
        out.crossings.push_back(a.date + static_cast<int32_t>(std::floor(frac * span)));
    }
    return out;
}

}  // namespace mna
