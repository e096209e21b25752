#include "demandkit/timestamp.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace demandkit {

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);                      // [0, 399]
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;           // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                     // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, int& month, int& day) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);                   // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;     // [0, 399]
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                   // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                                        // [0, 11]
    day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    year = static_cast<int>(y + (month <= 2));
}

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

Timestamp Timestamp::civil(int year, int month, int day, int hour, int minute) {
    if (month < 1 || month > 12) throw std::invalid_argument("month out of range");
    if (day < 1 || day > days_in_month(year, month)) throw std::invalid_argument("day out of range");
    if (hour < 0 || hour > 23) throw std::invalid_argument("hour out of range");
    if (minute < 0 || minute > 59) throw std::invalid_argument("minute out of range");
    return from_minutes(days_from_civil(year, month, day) * 1440 + hour * 60 + minute);
}

Timestamp Timestamp::from_minutes(std::int64_t minutes_since_epoch) {
    Timestamp t;
    t.minutes_ = minutes_since_epoch;
    return t;
}

namespace {

int parse_int(std::string_view text, std::size_t pos, std::size_t len, const char* what) {
    int value = 0;
    if (pos + len > text.size()) throw std::runtime_error(std::string("malformed timestamp: missing ") + what);
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    if (ec != std::errc{} || ptr != first + len)
        throw std::runtime_error(std::string("malformed timestamp: bad ") + what);
    return value;
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
    // "YYYY-MM-DD" = 10 chars, "YYYY-MM-DDTHH:MM" = 16 chars.
    if (text.size() != 10 && text.size() != 16)
        throw std::runtime_error("malformed timestamp: expected YYYY-MM-DD[THH:MM], got \"" + std::string(text) + "\"");
    if (text[4] != '-' || text[7] != '-')
        throw std::runtime_error("malformed timestamp: \"" + std::string(text) + "\"");
    const int year = parse_int(text, 0, 4, "year");
    const int month = parse_int(text, 5, 2, "month");
    const int day = parse_int(text, 8, 2, "day");
    int hour = 0, minute = 0;
    if (text.size() == 16) {
        if (text[10] != 'T' || text[13] != ':')
            throw std::runtime_error("malformed timestamp: \"" + std::string(text) + "\"");
        hour = parse_int(text, 11, 2, "hour");
        minute = parse_int(text, 14, 2, "minute");
    }
    try {
        return civil(year, month, day, hour, minute);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("malformed timestamp \"" + std::string(text) + "\": " + e.what());
    }
}

std::int64_t Timestamp::minutes_of_day() const {
    std::int64_t m = minutes_ % 1440;
    if (m < 0) m += 1440;
    return m;
}

int Timestamp::year() const {
    int y, m, d;
    civil_from_days((minutes_ - minutes_of_day()) / 1440, y, m, d);
    return y;
}

int Timestamp::month() const {
    int y, m, d;
    civil_from_days((minutes_ - minutes_of_day()) / 1440, y, m, d);
    return m;
}

int Timestamp::day() const {
    int y, m, d;
    civil_from_days((minutes_ - minutes_of_day()) / 1440, y, m, d);
    return d;
}

int Timestamp::hour() const { return static_cast<int>(minutes_of_day() / 60); }
int Timestamp::minute() const { return static_cast<int>(minutes_of_day() % 60); }

int Timestamp::weekday_monday0() const {
    // 1970-01-01 was a Thursday.
    std::int64_t days = (minutes_ - minutes_of_day()) / 1440;
    std::int64_t wd = (days + 3) % 7;
    if (wd < 0) wd += 7;
    return static_cast<int>(wd);
}

Timestamp Timestamp::date() const { return from_minutes(minutes_ - minutes_of_day()); }

std::string Timestamp::to_string() const {
    int y, mo, d;
    civil_from_days((minutes_ - minutes_of_day()) / 1440, y, mo, d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d", y, mo, d, hour(), minute());
    return buf;
}

std::string Timestamp::date_string() const {
    int y, mo, d;
    civil_from_days((minutes_ - minutes_of_day()) / 1440, y, mo, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, mo, d);
    return buf;
}

}  // namespace demandkit
