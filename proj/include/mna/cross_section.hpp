#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mna/event_study.hpp"
#include "mna/market_data.hpp"

namespace mna {

// One pooled announcement event of the sorted kind.
struct CsEvent {
    int64_t announcement_id = 0;
    Date date;
    double surprise = 0;       // normalized
    double market_return = 0;  // percent, event window
};

// Per-ticker event-window returns aligned to the events vector.
using EventReturnPanel = std::map<std::string, std::vector<std::optional<double>>>;

struct BetaRow {
    double beta_mna = 0;
    double beta_mkt = 0;
    size_t n_events = 0;
};

// (formation month serial, ticker) -> betas; absent when the trailing window
// holds fewer than min_events or the fit is degenerate.
struct BetaPanel {
    std::map<int, std::map<std::string, BetaRow>> by_month;
};

// Rolling R = alpha + beta_mna*Surprise + beta_mkt*R_mkt per stock-month over
// events within the trailing `window_months` calendar months.
BetaPanel estimate_event_betas(const std::vector<CsEvent>& events,
                               const EventReturnPanel& stock_returns,
                               const std::vector<int>& formation_months, int window_months = 48,
                               size_t min_events = 24);

// Quintile 1 (lowest beta) .. 5 (highest). Rank order with ties broken by
// ticker ascending; sizes differ by at most one, remainders going to the
// lowest-numbered quintiles.
std::map<std::string, int> form_quintiles(const std::map<std::string, double>& betas);

struct PortfolioCell {
    std::optional<double> ew;  // percent; absent when no member has a return
    std::optional<double> vw;  // absent when no member has return and cap
    size_t count = 0;          // members with a next-month return
};

struct PortfolioPanel {
    // formation month -> cells for quintiles 1..5 (index q-1)
    std::map<int, std::array<PortfolioCell, 5>> cells;
    struct LsRow {
        std::optional<double> ew, vw;
    };
    std::map<int, LsRow> long_short;  // Q5 - Q1
};

using MonthlyValues = std::map<std::pair<int, std::string>, double>;  // (month, ticker)

// Next-month portfolio returns per quintile; value weights use caps observed
// at the formation month end, stocks without a return are dropped with a
// count decrement.
PortfolioPanel portfolio_returns(const std::map<int, std::map<std::string, int>>& assignments,
                                 const MonthlyValues& monthly_returns,
                                 const MonthlyValues& caps);

struct AlphaRow {
    std::string model;
    double alpha = 0;
    double t = 0;
};

// Time-series alphas of the long-short series: mean plus CAPM, FF3, Carhart,
// FF5 and FF5+UMD+STR intercepts. Throws when a needed factor is missing for
// a month in the series.
std::vector<AlphaRow> alpha_table(const std::map<int, double>& ls_returns,
                                  const std::map<std::string, std::map<int, double>>& factors);

// Event-window return of each quintile portfolio at each event, using the
// assignment from the most recent formation month before the event's month.
std::array<std::vector<std::optional<double>>, 5> quintile_event_returns(
    const std::vector<CsEvent>& events, const EventReturnPanel& stock_returns,
    const std::map<int, std::map<std::string, int>>& assignments, const MonthlyValues& caps,
    bool value_weighted);

struct PrePostRow {
    int quintile = 0;
    double pre_beta = 0;   // mean pre-ranking beta of members over formation months
    double post_beta = 0;  // full-sample portfolio beta
    size_t n_events = 0;
};

std::vector<PrePostRow> post_ranking_betas(
    const std::vector<CsEvent>& events,
    const std::array<std::vector<std::optional<double>>, 5>& portfolio_event_returns,
    const BetaPanel& panel, const std::map<int, std::map<std::string, int>>& assignments);

struct DriftRow {
    std::string kind;
    size_t n = 0;
    double mean_annc = 0;
    std::optional<double> t_annc;  // absent when the sample is degenerate
    double mean_drift = 0;
    std::optional<double> t_drift;
    std::optional<double> corr;  // absent when either series is constant
};

// Table-15-style announcement premium and pre-announcement drift for one kind;
// events lacking the prior close are skipped.
DriftRow announcement_drift(const std::string& kind, const SymbolBars& bars,
                            std::span<const Minute> event_times, std::span<const int64_t> ids,
                            const WindowSpec& window = {});

}  // namespace mna
