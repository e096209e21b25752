#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace demandkit {

// Days between 1970-01-01 and the given civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);

// Inverse of days_from_civil.
void civil_from_days(std::int64_t days, int& year, int& month, int& day);

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// Minute-precision civil timestamp. Plant data is local civil time: no
/// timezone or DST handling anywhere.
class Timestamp {
public:
    Timestamp() = default;

    static Timestamp civil(int year, int month, int day, int hour = 0, int minute = 0);
    static Timestamp from_minutes(std::int64_t minutes_since_epoch);

    // Accepts "YYYY-MM-DDTHH:MM" or the date-only form "YYYY-MM-DD".
    static Timestamp parse(std::string_view text);

    std::int64_t minutes_since_epoch() const { return minutes_; }

    int year() const;
    int month() const;   // 1-12
    int day() const;     // 1-31
    int hour() const;    // 0-23
    int minute() const;  // 0-59

    int weekday_monday0() const;  // Monday = 0 ... Sunday = 6
    Timestamp date() const;       // midnight of the same day
    bool is_midnight() const { return minutes_of_day() == 0; }

    std::string to_string() const;    // "YYYY-MM-DDTHH:MM"
    std::string date_string() const;  // "YYYY-MM-DD"

    Timestamp plus_minutes(std::int64_t m) const { return from_minutes(minutes_ + m); }
    Timestamp plus_days(std::int64_t d) const { return from_minutes(minutes_ + d * 1440); }

    friend std::int64_t operator-(Timestamp a, Timestamp b) { return a.minutes_ - b.minutes_; }
    friend bool operator==(Timestamp, Timestamp) = default;
    friend auto operator<=>(Timestamp, Timestamp) = default;

private:
    std::int64_t minutes_of_day() const;

    std::int64_t minutes_ = 0;  // minutes since 1970-01-01T00:00
};

}  // namespace demandkit
