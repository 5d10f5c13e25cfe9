#pragma once

#include <cstdint>
#include <compare>
#include <string>

namespace mna {

// Calendar date, stored as days since 1970-01-01 (UTC, proleptic Gregorian).
class Date {
public:
    Date() = default;
    explicit constexpr Date(int32_t days) : days_(days) {}

    constexpr int32_t days() const { return days_; }
    auto operator<=>(const Date&) const = default;

    Date operator+(int32_t d) const { return Date(days_ + d); }
    Date operator-(int32_t d) const { return Date(days_ - d); }

private:
    int32_t days_ = 0;
};

// UTC instant at minute precision, stored as minutes since the epoch.
class Minute {
public:
    Minute() = default;
    explicit constexpr Minute(int64_t minutes) : minutes_(minutes) {}

    constexpr int64_t count() const { return minutes_; }
    auto operator<=>(const Minute&) const = default;

    Minute operator+(int64_t m) const { return Minute(minutes_ + m); }
    Minute operator-(int64_t m) const { return Minute(minutes_ - m); }
    int64_t operator-(Minute other) const { return minutes_ - other.minutes_; }

    Date date() const {
        int64_t d = minutes_ >= 0 ? minutes_ / 1440 : (minutes_ - 1439) / 1440;
        return Date(static_cast<int32_t>(d));
    }
    // Minutes past midnight UTC, in [0, 1440).
    int minute_of_day() const {
        int64_t m = minutes_ % 1440;
        return static_cast<int>(m < 0 ? m + 1440 : m);
    }

private:
    int64_t minutes_ = 0;
};

Date make_date(int year, int month, int day);
void civil_from_date(Date d, int& year, int& month, int& day);
Minute at_minute_of_day(Date d, int minute_of_day);

// Month serial number (year*12 + month-1); used for rolling formation windows.
int month_index(Date d);
Date month_end(int month_idx);
std::string format_month(int month_idx);  // "YYYY-MM"
int parse_month(const std::string& s);

// "YYYY-MM-DD"; throws std::invalid_argument on malformed input.
Date parse_date(const std::string& s);
std::string format_date(Date d);

// "YYYY-MM-DDTHH:MM:00Z"; seconds must be zero (minute-precision contract).
Minute parse_timestamp(const std::string& s);
std::string format_timestamp(Minute m);

}  // namespace mna
