#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mna/time.hpp"

namespace mna {

// One macroeconomic release. `sign` (+1/-1) orients the raw surprise so that
// positive always means higher growth (e.g. -1 for unemployment-style series).
struct Announcement {
    int64_t id = 0;
    std::string kind;
    Minute timestamp;
    double actual = 0;
    double survey_median = 0;
    int sign = 1;

    double raw_surprise() const { return sign * (actual - survey_median); }
};

struct Surprise {
    int64_t announcement_id = 0;
    double raw = 0;
    double normalized = 0;
};

enum class NormalizationMode { full_sample, expanding, rolling };

// Announcements sorted by (kind, timestamp); ids unique; timestamps strictly
// increasing within each kind.
class AnnouncementSet {
public:
    explicit AnnouncementSet(std::vector<Announcement> rows);

    const std::vector<Announcement>& rows() const { return rows_; }
    size_t size() const { return rows_.size(); }
    const Announcement& by_id(int64_t id) const;
    std::vector<std::string> kinds() const;
    // Indices into rows() for one kind, in timestamp order.
    const std::vector<size_t>& indices_of(const std::string& kind) const;
    // Every date on which any tracked announcement occurs.
    std::set<Date> announcement_dates() const;

private:
    std::vector<Announcement> rows_;
    std::map<int64_t, size_t> by_id_;
    std::map<std::string, std::vector<size_t>> by_kind_;
};

// Normalized surprises aligned to set.rows() order. Full-sample mode divides
// by the per-kind sample SD (n-1) so each kind's normalized SD is exactly 1;
// expanding uses observations up to and including the current one (the first
// observation borrows the SD of the first two); rolling uses the trailing
// `window` observations (earlier ones borrow the first full window).
std::vector<Surprise> compute_surprises(const AnnouncementSet& set, NormalizationMode mode,
                                        size_t window = 0);

// Bars for one instrument, strictly ordered by time, parallel arrays.
struct SymbolBars {
    std::vector<Minute> times;
    std::vector<double> prices;

    // Last price at or before `at`, carried forward at most `max_carry_minutes`.
    std::optional<double> price_at_or_before(Minute at, int max_carry_minutes) const;
    std::set<Date> dates() const;
};

struct BarSeries {
    std::map<std::string, SymbolBars> by_symbol;

    const SymbolBars& symbol(const std::string& name) const;
    size_t total_bars() const;
};

// Daily covariates keyed by series name: yields (yield_1y..yield_30y),
// MU proxies (MU_implied_2y/5y/10y, MU_realized_2y), CFNAI, MEU, USREC, FFR,
// per-ticker caps (cap_<TICKER>) and monthly factor returns (MKT, SMB, ...).
class DailySeries {
public:
    // Throws on duplicate (series, date); `context` prefixes the error.
    void insert(const std::string& series, Date date, double value, const std::string& context);

    bool has_series(const std::string& series) const;
    std::vector<std::string> series_names() const;
    const std::map<Date, double>& observations(const std::string& series) const;
    std::optional<double> value_on(const std::string& series, Date d) const;
    // Most recent value strictly before `d` (the covariate lag rule).
    std::optional<double> last_before(const std::string& series, Date d) const;

private:
    std::map<std::string, std::map<Date, double>> data_;
};

// CSV loaders. Contracts: header row mandatory, RFC-4180, ISO-8601 timestamps.
// announcements.csv: id,kind,timestamp,actual,survey_median[,sign]
// bars.csv:          timestamp,symbol,price
// daily.csv:         date,series,value
AnnouncementSet load_announcements(const std::string& path);
BarSeries load_bars(const std::string& path);
DailySeries load_daily(const std::string& path);

using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_announcements(const std::string& path, const AnnouncementSet& set,
                         const Metadata& metadata = {});
void write_bars(const std::string& path, const BarSeries& bars, const Metadata& metadata = {});
void write_daily(const std::string& path, const DailySeries& daily,
                 const Metadata& metadata = {});

}  // namespace mna
