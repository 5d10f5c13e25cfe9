#include "mna/time.hpp"

#include <charconv>
#include <stdexcept>

namespace mna {

namespace {

// Howard Hinnant's civil-days algorithms (public domain).
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t yr = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

int days_in_month(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : lengths[m - 1];
}

int parse_int(const std::string& s, size_t pos, size_t len, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
    if (ec != std::errc() || ptr != s.data() + pos + len)
        throw std::invalid_argument(std::string("invalid ") + what + " in '" + s + "'");
    return value;
}

}  // namespace

Date make_date(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month))
        throw std::invalid_argument("invalid calendar date");
    return Date(static_cast<int32_t>(days_from_civil(year, month, day)));
}

void civil_from_date(Date d, int& year, int& month, int& day) {
    civil_from_days(d.days(), year, month, day);
}

Minute at_minute_of_day(Date d, int minute_of_day) {
    return Minute(static_cast<int64_t>(d.days()) * 1440 + minute_of_day);
}

int month_index(Date d) {
    int y, m, dd;
    civil_from_date(d, y, m, dd);
    return y * 12 + (m - 1);
}

Date month_end(int month_idx) {
    int y = month_idx / 12, m = month_idx % 12 + 1;
    if (month_idx < 0 && month_idx % 12 != 0) { y = (month_idx - 11) / 12; m = month_idx - y * 12 + 1; }
    return make_date(y, m, days_in_month(y, m));
}

std::string format_month(int month_idx) {
    int y = month_idx / 12, m = month_idx % 12 + 1;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", y, m);
    return buf;
}

int parse_month(const std::string& s) {
    if (s.size() != 7 || s[4] != '-')
        throw std::invalid_argument("invalid month '" + s + "', expected YYYY-MM");
    int y = parse_int(s, 0, 4, "year");
    int m = parse_int(s, 5, 2, "month");
    if (m < 1 || m > 12) throw std::invalid_argument("invalid month '" + s + "'");
    return y * 12 + (m - 1);
}

Date parse_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-')
        throw std::invalid_argument("invalid date '" + s + "', expected YYYY-MM-DD");
    int y = parse_int(s, 0, 4, "year");
    int m = parse_int(s, 5, 2, "month");
    int d = parse_int(s, 8, 2, "day");
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m))
        throw std::invalid_argument("invalid date '" + s + "'");
    return make_date(y, m, d);
}

std::string format_date(Date d) {
    int y, m, dd;
    civil_from_date(d, y, m, dd);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, dd);
    return buf;
}

Minute parse_timestamp(const std::string& s) {
    // YYYY-MM-DDTHH:MM:SSZ, 20 chars
    if (s.size() != 20 || s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z')
        throw std::invalid_argument("invalid timestamp '" + s + "', expected YYYY-MM-DDTHH:MM:00Z");
    Date d = parse_date(s.substr(0, 10));
    int hh = parse_int(s, 11, 2, "hour");
    int mm = parse_int(s, 14, 2, "minute");
    int ss = parse_int(s, 17, 2, "second");
    if (hh > 23 || mm > 59) throw std::invalid_argument("invalid time of day in '" + s + "'");
    if (ss != 0) throw std::invalid_argument("timestamp '" + s + "' has sub-minute precision");
    return at_minute_of_day(d, hh * 60 + mm);
}

std::string format_timestamp(Minute m) {
    std::string date = format_date(m.date());
    int mod = m.minute_of_day();
    char buf[16];
    std::snprintf(buf, sizeof(buf), "T%02d:%02d:00Z", mod / 60, mod % 60);
    return date + buf;
}

}  // namespace mna
