#include "mna/event_study.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mna/stats.hpp"

namespace mna {

namespace {

constexpr int kPrevCloseMinuteOfDay = 16 * 60;  // 4 pm
constexpr int kPrevCloseLookbackDays = 7;

// Last bar at or before 4 pm of the previous day with data (within a week).
std::optional<double> prior_close(const SymbolBars& bars, Date event_day) {
    Minute cutoff = at_minute_of_day(event_day - 1, kPrevCloseMinuteOfDay);
    auto it = std::upper_bound(bars.times.begin(), bars.times.end(), cutoff);
    if (it == bars.times.begin()) return std::nullopt;
    size_t i = static_cast<size_t>(it - bars.times.begin()) - 1;
    if (bars.times[i].date() < event_day - kPrevCloseLookbackDays) return std::nullopt;
    return bars.prices[i];
}

}  // namespace

EventReturn extract_event_return(const SymbolBars& bars, int64_t announcement_id, Minute t0,
                                 const WindowSpec& window) {
    auto p_start = bars.price_at_or_before(t0 - window.pre_minutes, window.carry_minutes);
    if (!p_start)
        throw std::runtime_error("no price within " + std::to_string(window.carry_minutes) +
                                 " minutes of window start " +
                                 format_timestamp(t0 - window.pre_minutes));
    auto p_end = bars.price_at_or_before(t0 + window.post_minutes, window.carry_minutes);
    if (!p_end)
        throw std::runtime_error("no price within " + std::to_string(window.carry_minutes) +
                                 " minutes of window end " +
                                 format_timestamp(t0 + window.post_minutes));

    EventReturn er;
    er.announcement_id = announcement_id;
    er.window_return = 100.0 * (*p_end - *p_start) / *p_start;
    er.abs_return = std::fabs(er.window_return);
    if (auto pc = prior_close(bars, t0.date()))
        er.pre_drift = 100.0 * (*p_start - *pc) / *pc;
    return er;
}

std::vector<double> baseline_abs_returns(const SymbolBars& bars, int minute_of_day,
                                         const std::set<Date>& announcement_days,
                                         const WindowSpec& window) {
    std::vector<double> out;
    for (Date d : bars.dates()) {
        if (announcement_days.count(d)) continue;
        Minute t0 = at_minute_of_day(d, minute_of_day);
        auto p_start = bars.price_at_or_before(t0 - window.pre_minutes, window.carry_minutes);
        auto p_end = bars.price_at_or_before(t0 + window.post_minutes, window.carry_minutes);
        if (!p_start || !p_end) continue;
        out.push_back(std::fabs(100.0 * (*p_end - *p_start) / *p_start));
    }
    if (out.empty())
        throw std::runtime_error("no usable no-announcement days for the baseline at minute " +
                                 std::to_string(minute_of_day));
    return out;
}

ScreenRow relevance_screen(const std::string& kind, std::vector<double> event_abs,
                           std::vector<double> baseline_abs) {
    if (event_abs.size() < 2 || baseline_abs.size() < 2)
        throw std::invalid_argument("relevance_screen needs >= 2 observations per sample");
    ScreenRow row;
    row.kind = kind;
    row.mean_abs = mean(event_abs);
    row.median_abs = percentile_nearest_rank(event_abs, 0.5);
    WelchResult w = welch_t_test(event_abs, baseline_abs);
    row.p_t = w.p;
    row.p_mww = mann_whitney(event_abs, baseline_abs).p;
    row.relevant = row.p_t < 0.05;
    return row;
}

SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty sample");
    SummaryStats s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.p1 = percentile_nearest_rank(values, 0.01);
    s.p10 = percentile_nearest_rank(values, 0.10);
    s.p25 = percentile_nearest_rank(values, 0.25);
    s.median = percentile_nearest_rank(values, 0.50);
    s.p75 = percentile_nearest_rank(values, 0.75);
    s.p90 = percentile_nearest_rank(values, 0.90);
    s.p99 = percentile_nearest_rank(values, 0.99);
    s.mean = mean(values);
    s.sd = values.size() >= 2 ? sample_sd(values) : 0.0;
    return s;
}

QuartilePaths price_path_by_quartile(const SymbolBars& bars, std::vector<PathEvent> events,
                                     int horizon_minutes, int pre_minutes, int carry_minutes) {
    if (events.size() < 4)
        throw std::invalid_argument("price_path_by_quartile needs at least 4 events");

    std::sort(events.begin(), events.end(), [](const PathEvent& a, const PathEvent& b) {
        return std::tie(a.surprise, a.id) < std::tie(b.surprise, b.id);
    });

    const size_t n = events.size();
    const size_t base = n / 4, rem = n % 4;
    QuartilePaths out;
    for (int m = -pre_minutes; m <= horizon_minutes; ++m) out.minutes.push_back(m);
    out.mean_ret.assign(4, std::vector<double>(out.minutes.size(), 0.0));
    out.events_used.assign(4, 0);

    size_t pos = 0;
    for (size_t q = 0; q < 4; ++q) {
        size_t size_q = base + (q < rem ? 1 : 0);
        for (size_t e = 0; e < size_q; ++e, ++pos) {
            const PathEvent& ev = events[pos];
            auto ref = bars.price_at_or_before(ev.t0 - 1, carry_minutes);
            if (!ref) {
                ++out.dropped;
                continue;
            }
            ++out.events_used[q];
            double last_ret = 0.0;  // gaps beyond the carry keep the prior level
            for (size_t mi = 0; mi < out.minutes.size(); ++mi) {
                auto p = bars.price_at_or_before(ev.t0 + out.minutes[mi], carry_minutes);
                if (p) last_ret = 100.0 * (*p - *ref) / *ref;
                out.mean_ret[q][mi] += last_ret;
            }
        }
        if (out.events_used[q] > 0)
            for (double& v : out.mean_ret[q]) v /= static_cast<double>(out.events_used[q]);
    }
    return out;
}

}  // namespace mna
