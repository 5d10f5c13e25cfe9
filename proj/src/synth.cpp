#include "mna/synth.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "mna/ols.hpp"
#include "mna/rng.hpp"

namespace mna {

MuProcess MuProcess::constant(double v) {
    MuProcess p;
    p.kind = Kind::constant;
    p.value = v;
    return p;
}

MuProcess MuProcess::uniform(double lo, double hi) {
    MuProcess p;
    p.kind = Kind::uniform;
    p.lo = lo;
    p.hi = hi;
    return p;
}

MuProcess MuProcess::ar1(double mean, double phi, double innov_sd) {
    MuProcess p;
    p.kind = Kind::ar1;
    p.mean = mean;
    p.phi = phi;
    p.innov_sd = innov_sd;
    return p;
}

void MuProcess::validate() const {
    if (kind == Kind::uniform && !(lo <= hi))
        throw std::invalid_argument("MU process: uniform bounds out of order");
    if (kind == Kind::ar1 && !(std::fabs(phi) < 1))
        throw std::invalid_argument("MU process: AR1 needs |phi| < 1");
    if (kind == Kind::ar1 && innov_sd < 0)
        throw std::invalid_argument("MU process: AR1 innovation sd must be >= 0");
}

std::string MuProcess::describe() const {
    char buf[96];
    switch (kind) {
        case Kind::constant:
            std::snprintf(buf, sizeof(buf), "constant(%g)", value);
            break;
        case Kind::uniform:
            std::snprintf(buf, sizeof(buf), "uniform(%g,%g)", lo, hi);
            break;
        case Kind::ar1:
            std::snprintf(buf, sizeof(buf), "ar1(mean=%g,phi=%g,innov_sd=%g)", mean, phi,
                          innov_sd);
            break;
    }
    return buf;
}

void DgpParams::validate() const {
    if (noise_sd_return < 0 || noise_sd_rate < 0)
        throw std::invalid_argument("DGP noise SDs must be >= 0");
    if (n_events < 1) throw std::invalid_argument("DGP needs at least 1 event");
    mu.validate();
}

namespace {

class MuSampler {
public:
    MuSampler(const MuProcess& p, Rng& rng) : p_(p), rng_(rng) {
        if (p.kind == MuProcess::Kind::ar1) {
            // stationary start
            double sd0 = p.innov_sd / std::sqrt(1.0 - p.phi * p.phi);
            state_ = p.mean + (sd0 > 0 ? rng.normal(0, sd0) : 0.0);
        }
    }

    double next() {
        switch (p_.kind) {
            case MuProcess::Kind::constant:
                return p_.value;
            case MuProcess::Kind::uniform:
                return p_.lo + (p_.hi - p_.lo) * rng_.uniform();
            case MuProcess::Kind::ar1: {
                double current = state_;
                state_ = p_.mean + p_.phi * (state_ - p_.mean) +
                         (p_.innov_sd > 0 ? rng_.normal(0, p_.innov_sd) : 0.0);
                return current;
            }
        }
        throw std::logic_error("unknown MU process");
    }

private:
    MuProcess p_;
    Rng& rng_;
    double state_ = 0;
};

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    size_t workers = std::min<size_t>(static_cast<size_t>(threads), n);
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<PanelEvent> generate_panel(const DgpParams& params) {
    params.validate();
    Rng rng(params.seed);
    MuSampler mu(params.mu, rng);
    std::vector<PanelEvent> out(params.n_events);
    for (PanelEvent& ev : out) {
        ev.surprise = rng.normal();
        ev.mu = mu.next();
        double e1 = params.noise_sd_return > 0 ? rng.normal(0, params.noise_sd_return) : 0.0;
        double e2 = params.noise_sd_rate > 0 ? rng.normal(0, params.noise_sd_rate) : 0.0;
        ev.stock_return = params.a1 * ev.surprise + params.a2g1 * ev.mu * ev.surprise + e1;
        ev.rate_change = (params.gamma0 + params.gamma1 * ev.mu) * ev.surprise + e2;
    }
    return out;
}

RecoveryResult recovery_experiment(const DgpParams& params, size_t reps, int threads) {
    params.validate();
    if (reps < 1) throw std::invalid_argument("recovery_experiment: reps must be >= 1");

    struct RepEstimates {
        double est[4], se[4];
    };
    std::vector<RepEstimates> results(reps);

    parallel_for(reps, threads, [&](size_t rep) {
        DgpParams p = params;
        p.seed = Rng::derive_seed(params.seed, rep);
        std::vector<PanelEvent> panel = generate_panel(p);

        std::vector<EventRow> stock_rows(panel.size()), rate_rows(panel.size());
        for (size_t i = 0; i < panel.size(); ++i) {
            stock_rows[i] = {static_cast<int64_t>(i), panel[i].stock_return, panel[i].surprise,
                             panel[i].mu, std::nullopt, std::nullopt};
            rate_rows[i] = {static_cast<int64_t>(i), panel[i].rate_change, panel[i].surprise,
                            panel[i].mu, std::nullopt, std::nullopt};
        }
        DesignSpec stock_spec{{Term::surprise, Term::mu, Term::surprise_x_mu}};
        DesignSpec rate_spec{{Term::surprise, Term::surprise_x_mu}};
        RegressionResult stock = interaction_regression(stock_spec, stock_rows).result;
        RegressionResult rate = interaction_regression(rate_spec, rate_rows).result;

        RepEstimates& r = results[rep];
        r.est[0] = stock.coef_of("Surprise");
        r.se[0] = stock.se_of("Surprise");
        r.est[1] = stock.coef_of("Surprise*MU");
        r.se[1] = stock.se_of("Surprise*MU");
        r.est[2] = rate.coef_of("Surprise");
        r.se[2] = rate.se_of("Surprise");
        r.est[3] = rate.coef_of("Surprise*MU");
        r.se[3] = rate.se_of("Surprise*MU");
    });

    const char* names[4] = {"a1", "a2g1", "gamma0", "gamma1"};
    const double truths[4] = {params.a1, params.a2g1, params.gamma0, params.gamma1};
    RecoveryResult out;
    out.reps = reps;
    for (int j = 0; j < 4; ++j) {
        ParamRecovery pr;
        pr.name = names[j];
        pr.truth = truths[j];
        double s = 0, ss = 0, cov = 0, insig = 0;
        for (const RepEstimates& r : results) {
            s += r.est[j];
            if (std::fabs(r.est[j] - truths[j]) <= 1.96 * r.se[j]) cov += 1;
            if (r.se[j] > 0 && std::fabs(r.est[j] / r.se[j]) < 2.0) insig += 1;
        }
        pr.mean = s / static_cast<double>(reps);
        for (const RepEstimates& r : results) ss += (r.est[j] - pr.mean) * (r.est[j] - pr.mean);
        pr.sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
        pr.coverage95 = cov / static_cast<double>(reps);
        pr.frac_insignificant = insig / static_cast<double>(reps);
        out.params.push_back(pr);
    }
    return out;
}

void IntradayParams::validate() const {
    if (minute_noise_sd < 0 || day_noise_sd < 0 || drift_noise_sd < 0)
        throw std::invalid_argument("intraday noise SDs must be >= 0");
    if (n_events < 1) throw std::invalid_argument("intraday generator needs at least 1 event");
    if (pre_minutes < 1 || post_minutes < 1)
        throw std::invalid_argument("intraday window must be non-degenerate");
    if (jump_minute < -pre_minutes || jump_minute > post_minutes)
        throw std::invalid_argument("jump minute lies outside the generated window");
    mu.validate();
}

IntradayPanel generate_intraday(const IntradayParams& params) {
    params.validate();
    Rng rng(params.seed);
    MuSampler mu_sampler(params.mu, rng);

    IntradayPanel panel;
    panel.symbol = params.symbol;
    panel.kind = params.kind;
    SymbolBars& bars = panel.bars.by_symbol[params.symbol];

    const int close_mod = 16 * 60;
    auto push_bar = [&](Minute t, double price) {
        bars.times.push_back(t);
        bars.prices.push_back(price);
    };

    // Lead-in close the day before the first event anchors drift and daily
    // returns for event 0.
    double prev_close = 100.0;
    push_bar(at_minute_of_day(params.start_date - 1, close_mod), prev_close);

    size_t total_days = params.n_events + params.n_quiet_days;
    for (size_t day = 0; day < total_days; ++day) {
        Date d = params.start_date + static_cast<int32_t>(day);
        Minute t0 = at_minute_of_day(d, params.announce_minute_of_day);
        bool is_event = day < params.n_events;

        double eps = 0, mu = 0, jump = 0;
        if (is_event) {
            eps = rng.normal();
            mu = mu_sampler.next();
            jump = (params.effect + params.interaction_effect * mu) * eps;
            panel.events.push_back(
                {static_cast<int64_t>(day + 1), t0, eps, mu, jump});
        }

        double overnight = params.drift_effect +
                           (params.drift_noise_sd > 0 ? rng.normal(0, params.drift_noise_sd) : 0) +
                           (params.day_noise_sd > 0 ? rng.normal(0, params.day_noise_sd) : 0);
        double level = prev_close * (1.0 + overnight / 100.0);

        double cum = 0;  // percent, relative to the window-start level
        for (int m = -params.pre_minutes; m <= params.post_minutes; ++m) {
            if (m > -params.pre_minutes && params.minute_noise_sd > 0)
                cum += rng.normal(0, params.minute_noise_sd);
            double jumped = is_event && m >= params.jump_minute ? jump : 0.0;
            push_bar(t0 + m, level * (1.0 + (cum + jumped) / 100.0));
        }
        double close = level * (1.0 + (cum + (is_event ? jump : 0.0)) / 100.0);
        push_bar(at_minute_of_day(d, close_mod), close);
        prev_close = close;
    }
    return panel;
}

IntradayNoise calibrate_intraday_noise(double window_sd, double daily_sd, int pre_minutes,
                                       int post_minutes) {
    if (window_sd < 0 || daily_sd < 0) throw std::invalid_argument("noise targets must be >= 0");
    IntradayNoise n;
    int window_minutes = pre_minutes + post_minutes;
    n.minute_noise_sd = window_sd / std::sqrt(static_cast<double>(window_minutes));
    double excess = daily_sd * daily_sd - window_sd * window_sd;
    if (excess < 0)
        throw std::invalid_argument("daily SD target below the intraday window SD");
    n.day_noise_sd = std::sqrt(excess);
    return n;
}

std::vector<WindowPowerRow> window_power_experiment(const IntradayParams& params, size_t reps,
                                                    int threads) {
    params.validate();
    if (reps < 1) throw std::invalid_argument("window_power_experiment: reps must be >= 1");

    struct RepRow {
        double b[2], t[2], r2[2];
    };
    std::vector<RepRow> rows(reps);

    parallel_for(reps, threads, [&](size_t rep) {
        IntradayParams p = params;
        p.seed = Rng::derive_seed(params.seed, rep);
        IntradayPanel panel = generate_intraday(p);
        const SymbolBars& bars = panel.bars.symbol(p.symbol);

        std::vector<double> eps, win_ret, day_ret;
        const int close_mod = 16 * 60;
        for (const IntradayEvent& ev : panel.events) {
            eps.push_back(ev.surprise);
            double ps = *bars.price_at_or_before(ev.t0 - p.pre_minutes, 5);
            double pe = *bars.price_at_or_before(ev.t0 + p.post_minutes, 5);
            win_ret.push_back(100.0 * (pe - ps) / ps);
            double c1 = *bars.price_at_or_before(at_minute_of_day(ev.t0.date(), close_mod), 5);
            double c0 =
                *bars.price_at_or_before(at_minute_of_day(ev.t0.date() - 1, close_mod), 5);
            day_ret.push_back(100.0 * (c1 - c0) / c0);
        }
        RegressionResult win = response_regression(eps, win_ret);
        RegressionResult day = response_regression(eps, day_ret);
        rows[rep] = {{win.coef_of("Surprise"), day.coef_of("Surprise")},
                     {win.t_of("Surprise"), day.t_of("Surprise")},
                     {win.adj_r2, day.adj_r2}};
    });

    std::vector<WindowPowerRow> out(2);
    out[0].window = "30min";
    out[1].window = "daily";
    for (int w = 0; w < 2; ++w) {
        for (const RepRow& r : rows) {
            out[w].mean_b += r.b[w];
            out[w].mean_t += r.t[w];
            out[w].mean_adj_r2 += r.r2[w];
        }
        out[w].mean_b /= static_cast<double>(reps);
        out[w].mean_t /= static_cast<double>(reps);
        out[w].mean_adj_r2 /= static_cast<double>(reps);
    }
    return out;
}

SynthFiles panel_to_market_data(const std::vector<PanelEvent>& panel, Date start_date,
                                int announce_minute_of_day, const std::string& kind,
                                const std::string& mu_series) {
    std::vector<Announcement> anns;
    DailySeries daily;
    anns.reserve(panel.size());
    for (size_t i = 0; i < panel.size(); ++i) {
        Date d = start_date + static_cast<int32_t>(i);
        Announcement a;
        a.id = static_cast<int64_t>(i + 1);
        a.kind = kind;
        a.timestamp = at_minute_of_day(d, announce_minute_of_day);
        a.actual = panel[i].surprise;
        a.survey_median = 0.0;
        anns.push_back(a);
        daily.insert(mu_series, d - 1, panel[i].mu, "synthetic panel");
    }
    return SynthFiles{AnnouncementSet(std::move(anns)), std::move(daily)};
}

}  // namespace mna
