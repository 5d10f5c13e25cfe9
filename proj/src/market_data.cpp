#include "mna/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mna/csv.hpp"
#include "mna/stats.hpp"

namespace mna {

AnnouncementSet::AnnouncementSet(std::vector<Announcement> rows) : rows_(std::move(rows)) {
    std::stable_sort(rows_.begin(), rows_.end(), [](const Announcement& a, const Announcement& b) {
        return std::tie(a.kind, a.timestamp) < std::tie(b.kind, b.timestamp);
    });
    for (size_t i = 0; i < rows_.size(); ++i) {
        const Announcement& a = rows_[i];
        if (!by_id_.emplace(a.id, i).second)
            throw std::runtime_error("duplicate announcement id " + std::to_string(a.id));
        if (!std::isfinite(a.actual) || !std::isfinite(a.survey_median))
            throw std::runtime_error("non-finite value in announcement id " + std::to_string(a.id));
        if (a.sign != 1 && a.sign != -1)
            throw std::runtime_error("announcement id " + std::to_string(a.id) +
                                     ": sign must be +1 or -1");
        auto& idx = by_kind_[a.kind];
        if (!idx.empty() && rows_[idx.back()].timestamp >= a.timestamp)
            throw std::runtime_error("announcements of kind '" + a.kind +
                                     "' have non-increasing timestamps (id " +
                                     std::to_string(a.id) + ")");
        idx.push_back(i);
    }
}

const Announcement& AnnouncementSet::by_id(int64_t id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw std::runtime_error("unknown announcement id " + std::to_string(id));
    return rows_[it->second];
}

std::vector<std::string> AnnouncementSet::kinds() const {
    std::vector<std::string> out;
    out.reserve(by_kind_.size());
    for (const auto& [k, _] : by_kind_) out.push_back(k);
    return out;
}

const std::vector<size_t>& AnnouncementSet::indices_of(const std::string& kind) const {
    auto it = by_kind_.find(kind);
    if (it == by_kind_.end()) throw std::runtime_error("unknown announcement kind '" + kind + "'");
    return it->second;
}

std::set<Date> AnnouncementSet::announcement_dates() const {
    std::set<Date> out;
    for (const auto& a : rows_) out.insert(a.timestamp.date());
    return out;
}

namespace {

double sd_of_range(const std::vector<double>& raw, size_t begin, size_t end,
                   const std::string& kind) {
    std::vector<double> slice(raw.begin() + begin, raw.begin() + end);
    double sd = sample_sd(slice);
    if (sd == 0)
        throw std::runtime_error("zero surprise standard deviation for kind '" + kind +
                                 "'; cannot normalize");
    return sd;
}

}  // namespace

std::vector<Surprise> compute_surprises(const AnnouncementSet& set, NormalizationMode mode,
                                        size_t window) {
    if (mode == NormalizationMode::rolling && window < 2)
        throw std::invalid_argument("rolling normalization needs window >= 2");

    std::vector<Surprise> out(set.size());
    for (const std::string& kind : set.kinds()) {
        const auto& idx = set.indices_of(kind);
        if (idx.size() < 2)
            throw std::runtime_error("kind '" + kind +
                                     "' has fewer than 2 observations; cannot normalize");
        if (mode == NormalizationMode::rolling && idx.size() < window)
            throw std::runtime_error("kind '" + kind + "' has " + std::to_string(idx.size()) +
                                     " observations, fewer than rolling window " +
                                     std::to_string(window));
        std::vector<double> raw(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) raw[i] = set.rows()[idx[i]].raw_surprise();

        for (size_t i = 0; i < idx.size(); ++i) {
            double sd;
            switch (mode) {
                case NormalizationMode::full_sample:
                    sd = sd_of_range(raw, 0, raw.size(), kind);
                    break;
                case NormalizationMode::expanding:
                    sd = sd_of_range(raw, 0, std::max<size_t>(i + 1, 2), kind);
                    break;
                case NormalizationMode::rolling:
                    sd = i + 1 >= window ? sd_of_range(raw, i + 1 - window, i + 1, kind)
                                         : sd_of_range(raw, 0, window, kind);
                    break;
                default:
                    throw std::logic_error("unknown normalization mode");
            }
            const Announcement& a = set.rows()[idx[i]];
            out[idx[i]] = Surprise{a.id, raw[i], raw[i] / sd};
        }
    }
    return out;
}

std::optional<double> SymbolBars::price_at_or_before(Minute at, int max_carry_minutes) const {
    auto it = std::upper_bound(times.begin(), times.end(), at);
    if (it == times.begin()) return std::nullopt;
    size_t i = static_cast<size_t>(it - times.begin()) - 1;
    if (at - times[i] > max_carry_minutes) return std::nullopt;
    return prices[i];
}

std::set<Date> SymbolBars::dates() const {
    std::set<Date> out;
    for (Minute t : times) out.insert(t.date());
    return out;
}

const SymbolBars& BarSeries::symbol(const std::string& name) const {
    auto it = by_symbol.find(name);
    if (it == by_symbol.end()) throw std::runtime_error("no bars for symbol '" + name + "'");
    return it->second;
}

size_t BarSeries::total_bars() const {
    size_t n = 0;
    for (const auto& [_, s] : by_symbol) n += s.times.size();
    return n;
}

void DailySeries::insert(const std::string& series, Date date, double value,
                         const std::string& context) {
    if (!std::isfinite(value))
        throw std::runtime_error(context + ": non-finite value for series '" + series + "'");
    if (series == "USREC" && value != 0.0 && value != 1.0)
        throw std::runtime_error(context + ": USREC must be 0 or 1");
    if (!data_[series].emplace(date, value).second)
        throw std::runtime_error(context + ": duplicate observation for (" + series + ", " +
                                 format_date(date) + ")");
}

bool DailySeries::has_series(const std::string& series) const { return data_.count(series) > 0; }

std::vector<std::string> DailySeries::series_names() const {
    std::vector<std::string> out;
    out.reserve(data_.size());
    for (const auto& [k, _] : data_) out.push_back(k);
    return out;
}

const std::map<Date, double>& DailySeries::observations(const std::string& series) const {
    auto it = data_.find(series);
    if (it == data_.end()) throw std::runtime_error("unknown daily series '" + series + "'");
    return it->second;
}

std::optional<double> DailySeries::value_on(const std::string& series, Date d) const {
    auto it = data_.find(series);
    if (it == data_.end()) return std::nullopt;
    auto jt = it->second.find(d);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::optional<double> DailySeries::last_before(const std::string& series, Date d) const {
    auto it = data_.find(series);
    if (it == data_.end()) return std::nullopt;
    auto jt = it->second.lower_bound(d);
    if (jt == it->second.begin()) return std::nullopt;
    --jt;
    return jt->second;
}

namespace {

// Wraps row-level parse errors with the file:line location.
template <typename F>
auto at_row(const CsvTable& t, size_t row, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[row]) + ": " +
                                 e.what());
    }
}

}  // namespace

AnnouncementSet load_announcements(const std::string& path) {
    CsvTable t = read_csv(path);
    size_t c_id = t.col("id"), c_kind = t.col("kind"), c_ts = t.col("timestamp");
    size_t c_actual = t.col("actual"), c_median = t.col("survey_median");
    bool has_sign = t.has_col("sign");
    size_t c_sign = has_sign ? t.col("sign") : 0;

    std::vector<Announcement> rows;
    rows.reserve(t.rows.size());
    for (size_t r = 0; r < t.rows.size(); ++r) {
        Announcement a;
        a.id = parse_field_int(t, r, c_id);
        a.kind = t.rows[r][c_kind];
        if (a.kind.empty())
            throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[r]) +
                                     ": empty kind");
        a.timestamp = at_row(t, r, [&] { return parse_timestamp(t.rows[r][c_ts]); });
        a.actual = parse_field_double(t, r, c_actual);
        a.survey_median = parse_field_double(t, r, c_median);
        a.sign = has_sign ? static_cast<int>(parse_field_int(t, r, c_sign)) : 1;
        rows.push_back(std::move(a));
    }
    try {
        return AnnouncementSet(std::move(rows));
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

BarSeries load_bars(const std::string& path) {
    CsvTable t = read_csv(path);
    size_t c_ts = t.col("timestamp"), c_sym = t.col("symbol"), c_price = t.col("price");

    // (symbol, time) -> price; exact duplicates collapse, conflicts are errors.
    std::map<std::pair<std::string, Minute>, double> seen;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        Minute ts = at_row(t, r, [&] { return parse_timestamp(t.rows[r][c_ts]); });
        const std::string& sym = t.rows[r][c_sym];
        if (sym.empty())
            throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[r]) +
                                     ": empty symbol");
        double price = parse_field_double(t, r, c_price);
        if (price <= 0)
            throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[r]) +
                                     ": price must be positive, got " + t.rows[r][c_price]);
        auto [it, inserted] = seen.emplace(std::make_pair(sym, ts), price);
        if (!inserted && it->second != price)
            throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[r]) +
                                     ": conflicting duplicate bar for (" + sym + ", " +
                                     format_timestamp(ts) + ")");
    }

    BarSeries series;
    for (const auto& [key, price] : seen) {
        SymbolBars& sb = series.by_symbol[key.first];
        sb.times.push_back(key.second);
        sb.prices.push_back(price);
    }
    return series;
}

DailySeries load_daily(const std::string& path) {
    CsvTable t = read_csv(path);
    size_t c_date = t.col("date"), c_series = t.col("series"), c_value = t.col("value");

    DailySeries out;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        Date d = at_row(t, r, [&] { return parse_date(t.rows[r][c_date]); });
        const std::string& series = t.rows[r][c_series];
        if (series.empty())
            throw std::runtime_error(t.path + ":" + std::to_string(t.line_numbers[r]) +
                                     ": empty series name");
        double v = parse_field_double(t, r, c_value);
        out.insert(series, d, v, t.path + ":" + std::to_string(t.line_numbers[r]));
    }
    return out;
}

void write_announcements(const std::string& path, const AnnouncementSet& set,
                         const Metadata& metadata) {
    CsvWriter w(path, {"id", "kind", "timestamp", "actual", "survey_median", "sign"}, metadata);
    for (const auto& a : set.rows())
        w.row({std::to_string(a.id), a.kind, format_timestamp(a.timestamp),
               format_double(a.actual), format_double(a.survey_median), std::to_string(a.sign)});
    w.close();
}

void write_bars(const std::string& path, const BarSeries& bars, const Metadata& metadata) {
    CsvWriter w(path, {"timestamp", "symbol", "price"}, metadata);
    for (const auto& [sym, sb] : bars.by_symbol)
        for (size_t i = 0; i < sb.times.size(); ++i)
            w.row({format_timestamp(sb.times[i]), sym, format_double(sb.prices[i])});
    w.close();
}

void write_daily(const std::string& path, const DailySeries& daily, const Metadata& metadata) {
    CsvWriter w(path, {"date", "series", "value"}, metadata);
    for (const std::string& name : daily.series_names())
        for (const auto& [d, v] : daily.observations(name))
            w.row({format_date(d), name, format_double(v)});
    w.close();
}

}  // namespace mna
