#include "mna/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mna/ols.hpp"
#include "mna/stats.hpp"

namespace mna {

BetaPanel estimate_event_betas(const std::vector<CsEvent>& events,
                               const EventReturnPanel& stock_returns,
                               const std::vector<int>& formation_months, int window_months,
                               size_t min_events) {
    if (window_months < 1) throw std::invalid_argument("window_months must be >= 1");
    if (min_events < 3) throw std::invalid_argument("min_events must be >= 3 (3 parameters)");
    for (const auto& [ticker, rets] : stock_returns)
        if (rets.size() != events.size())
            throw std::invalid_argument("event returns for '" + ticker +
                                        "' not aligned to the event list");

    BetaPanel panel;
    for (int m : formation_months) {
        auto& month_out = panel.by_month[m];
        for (const auto& [ticker, rets] : stock_returns) {
            std::vector<double> y, eps, mkt;
            for (size_t i = 0; i < events.size(); ++i) {
                int em = month_index(events[i].date);
                if (em < m - window_months + 1 || em > m || !rets[i]) continue;
                y.push_back(*rets[i]);
                eps.push_back(events[i].surprise);
                mkt.push_back(events[i].market_return);
            }
            if (y.size() < min_events) continue;
            Matrix x(y.size(), 3);
            for (size_t i = 0; i < y.size(); ++i) {
                x(i, 0) = 1.0;
                x(i, 1) = eps[i];
                x(i, 2) = mkt[i];
            }
            try {
                RegressionResult fit = fit_ols(x, y, {"const", "Surprise", "Market"});
                month_out[ticker] = BetaRow{fit.coef[1], fit.coef[2], y.size()};
            } catch (const std::invalid_argument&) {
                // degenerate window for this stock: beta stays missing
            }
        }
    }
    return panel;
}

std::map<std::string, int> form_quintiles(const std::map<std::string, double>& betas) {
    if (betas.size() < 5)
        throw std::invalid_argument("form_quintiles needs at least 5 stocks with betas, got " +
                                    std::to_string(betas.size()));
    std::vector<std::pair<std::string, double>> ranked(betas.begin(), betas.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return std::tie(a.second, a.first) < std::tie(b.second, b.first);
    });
    const size_t n = ranked.size(), base = n / 5, rem = n % 5;
    std::map<std::string, int> out;
    size_t pos = 0;
    for (int q = 1; q <= 5; ++q) {
        size_t size_q = base + (static_cast<size_t>(q) <= rem ? 1 : 0);
        for (size_t i = 0; i < size_q; ++i, ++pos) out[ranked[pos].first] = q;
    }
    return out;
}

PortfolioPanel portfolio_returns(const std::map<int, std::map<std::string, int>>& assignments,
                                 const MonthlyValues& monthly_returns,
                                 const MonthlyValues& caps) {
    PortfolioPanel panel;
    for (const auto& [month, members] : assignments) {
        auto& cells = panel.cells[month];
        for (int q = 1; q <= 5; ++q) {
            double ew_sum = 0, vw_sum = 0, cap_sum = 0;
            size_t n_ret = 0, n_vw = 0;
            for (const auto& [ticker, quintile] : members) {
                if (quintile != q) continue;
                auto rit = monthly_returns.find({month + 1, ticker});
                if (rit == monthly_returns.end()) continue;  // dropped, count decrement
                ew_sum += rit->second;
                ++n_ret;
                auto cit = caps.find({month, ticker});
                if (cit != caps.end() && cit->second > 0) {
                    vw_sum += cit->second * rit->second;
                    cap_sum += cit->second;
                    ++n_vw;
                }
            }
            PortfolioCell& cell = cells[q - 1];
            cell.count = n_ret;
            if (n_ret > 0) cell.ew = ew_sum / static_cast<double>(n_ret);
            if (n_vw > 0 && cap_sum > 0) cell.vw = vw_sum / cap_sum;
        }
        PortfolioPanel::LsRow ls;
        if (cells[4].ew && cells[0].ew) ls.ew = *cells[4].ew - *cells[0].ew;
        if (cells[4].vw && cells[0].vw) ls.vw = *cells[4].vw - *cells[0].vw;
        panel.long_short[month] = ls;
    }
    return panel;
}

namespace {

double mean_t_stat(std::span<const double> x) {
    double m = mean(x);
    double sd = sample_sd(x);
    if (sd == 0) throw std::invalid_argument("degenerate series: zero variance");
    return m / (sd / std::sqrt(static_cast<double>(x.size())));
}

}  // namespace

std::vector<AlphaRow> alpha_table(const std::map<int, double>& ls_returns,
                                  const std::map<std::string, std::map<int, double>>& factors) {
    if (ls_returns.size() < 10)
        throw std::invalid_argument("alpha_table: need at least 10 monthly observations");

    static const std::vector<std::pair<std::string, std::vector<std::string>>> kModels = {
        {"Ret", {}},
        {"CAPM", {"MKT"}},
        {"FF3", {"MKT", "SMB", "HML"}},
        {"Carhart", {"MKT", "SMB", "HML", "UMD"}},
        {"FF5", {"MKT", "SMB", "HML", "RMW", "CMA"}},
        {"FF5+UMD+STR", {"MKT", "SMB", "HML", "RMW", "CMA", "UMD", "STR"}},
    };

    std::vector<int> months;
    std::vector<double> y;
    for (const auto& [m, r] : ls_returns) {
        months.push_back(m);
        y.push_back(r);
    }

    std::vector<AlphaRow> out;
    for (const auto& [model, names] : kModels) {
        if (names.empty()) {
            out.push_back({model, mean(y), mean_t_stat(y)});
            continue;
        }
        Matrix x(y.size(), names.size() + 1);
        for (size_t i = 0; i < y.size(); ++i) {
            x(i, 0) = 1.0;
            for (size_t j = 0; j < names.size(); ++j) {
                auto fit = factors.find(names[j]);
                if (fit == factors.end())
                    throw std::runtime_error("missing factor series '" + names[j] + "'");
                auto vit = fit->second.find(months[i]);
                if (vit == fit->second.end())
                    throw std::runtime_error("factor '" + names[j] + "' missing month " +
                                             format_month(months[i]));
                x(i, j + 1) = vit->second;
            }
        }
        std::vector<std::string> terms{"const"};
        terms.insert(terms.end(), names.begin(), names.end());
        RegressionResult fit = fit_ols(x, y, std::move(terms));
        out.push_back({model, fit.coef[0], fit.tstat[0]});
    }
    return out;
}

std::array<std::vector<std::optional<double>>, 5> quintile_event_returns(
    const std::vector<CsEvent>& events, const EventReturnPanel& stock_returns,
    const std::map<int, std::map<std::string, int>>& assignments, const MonthlyValues& caps,
    bool value_weighted) {
    std::array<std::vector<std::optional<double>>, 5> out;
    for (auto& v : out) v.assign(events.size(), std::nullopt);

    for (size_t i = 0; i < events.size(); ++i) {
        // Holdings during the event's month come from the previous formation.
        int wanted = month_index(events[i].date) - 1;
        auto ait = assignments.upper_bound(wanted);
        if (ait == assignments.begin()) continue;
        --ait;
        const auto& members = ait->second;
        double sum[5] = {0, 0, 0, 0, 0}, wsum[5] = {0, 0, 0, 0, 0};
        for (const auto& [ticker, q] : members) {
            auto rit = stock_returns.find(ticker);
            if (rit == stock_returns.end() || !rit->second[i]) continue;
            double w = 1.0;
            if (value_weighted) {
                auto cit = caps.find({ait->first, ticker});
                if (cit == caps.end() || cit->second <= 0) continue;
                w = cit->second;
            }
            sum[q - 1] += w * *rit->second[i];
            wsum[q - 1] += w;
        }
        for (int q = 0; q < 5; ++q)
            if (wsum[q] > 0) out[q][i] = sum[q] / wsum[q];
    }
    return out;
}

std::vector<PrePostRow> post_ranking_betas(
    const std::vector<CsEvent>& events,
    const std::array<std::vector<std::optional<double>>, 5>& portfolio_event_returns,
    const BetaPanel& panel, const std::map<int, std::map<std::string, int>>& assignments) {
    std::vector<PrePostRow> out;
    for (int q = 1; q <= 5; ++q) {
        PrePostRow row;
        row.quintile = q;

        // mean pre-ranking beta of quintile members across formation months
        double pre_sum = 0;
        size_t pre_n = 0;
        for (const auto& [month, members] : assignments) {
            auto pit = panel.by_month.find(month);
            if (pit == panel.by_month.end()) continue;
            for (const auto& [ticker, quintile] : members) {
                if (quintile != q) continue;
                auto bit = pit->second.find(ticker);
                if (bit == pit->second.end()) continue;
                pre_sum += bit->second.beta_mna;
                ++pre_n;
            }
        }
        if (pre_n > 0) row.pre_beta = pre_sum / static_cast<double>(pre_n);

        std::vector<double> y, eps, mkt;
        const auto& rets = portfolio_event_returns[q - 1];
        for (size_t i = 0; i < events.size(); ++i) {
            if (!rets[i]) continue;
            y.push_back(*rets[i]);
            eps.push_back(events[i].surprise);
            mkt.push_back(events[i].market_return);
        }
        row.n_events = y.size();
        if (y.size() >= 4) {
            Matrix x(y.size(), 3);
            for (size_t i = 0; i < y.size(); ++i) {
                x(i, 0) = 1.0;
                x(i, 1) = eps[i];
                x(i, 2) = mkt[i];
            }
            RegressionResult fit = fit_ols(x, y, {"const", "Surprise", "Market"});
            row.post_beta = fit.coef[1];
        }
        out.push_back(row);
    }
    return out;
}

DriftRow announcement_drift(const std::string& kind, const SymbolBars& bars,
                            std::span<const Minute> event_times, std::span<const int64_t> ids,
                            const WindowSpec& window) {
    if (event_times.size() != ids.size())
        throw std::invalid_argument("announcement_drift: times and ids not aligned");
    std::vector<double> annc, drift;
    for (size_t i = 0; i < event_times.size(); ++i) {
        EventReturn er;
        try {
            er = extract_event_return(bars, ids[i], event_times[i], window);
        } catch (const std::runtime_error&) {
            continue;  // window not covered
        }
        if (!er.pre_drift) continue;
        annc.push_back(er.window_return);
        drift.push_back(*er.pre_drift);
    }
    if (annc.size() < 2)
        throw std::runtime_error("announcement_drift: fewer than 2 usable events for kind '" +
                                 kind + "'");
    DriftRow row;
    row.kind = kind;
    row.n = annc.size();
    row.mean_annc = mean(annc);
    row.mean_drift = mean(drift);
    if (sample_sd(annc) > 0) row.t_annc = mean_t_stat(annc);
    if (sample_sd(drift) > 0) row.t_drift = mean_t_stat(drift);
    if (sample_sd(annc) > 0 && sample_sd(drift) > 0) row.corr = pearson_corr(annc, drift);
    return row;
}

}  // namespace mna
