#pragma once

#include <cstddef>
#include <vector>

#include "demandkit/timestamp.hpp"

namespace demandkit {

/// Calendar inputs for one sample: month 0-11, week-of-month 0-4,
/// day-of-week 0-6 (Monday = 0), hour 0-23, quarter-of-hour 0-3.
struct CalendarFeatures {
    int month;
    int week_of_month;
    int day_of_week;
    int hour;
    int quarter;

    friend bool operator==(const CalendarFeatures&, const CalendarFeatures&) = default;
};

CalendarFeatures encode_calendar(Timestamp t);

/// Uniformly sampled active-power readings (kW). Sample i is at
/// start + i * cadence_minutes; cadence is 5 or 15 minutes and all
/// values are finite and non-negative.
class LoadSeries {
public:
    LoadSeries(Timestamp start, int cadence_minutes, std::vector<double> values);

    Timestamp start() const { return start_; }
    int cadence_minutes() const { return cadence_; }
    const std::vector<double>& values() const { return values_; }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

    Timestamp timestamp_at(std::size_t i) const {
        return start_.plus_minutes(static_cast<std::int64_t>(i) * cadence_);
    }
    /// One past the last sample: start + size * cadence.
    Timestamp end() const { return timestamp_at(values_.size()); }

private:
    Timestamp start_;
    int cadence_ = 15;
    std::vector<double> values_;
};

/// Energy under the demand curve: sum of value * (cadence / 60) in kWh.
double energy_kwh(const LoadSeries& s);

/// Billing maximum demand. 15-min series: largest sample. 5-min series:
/// largest mean over the 15-minute windows starting at every sample.
double max_demand(const LoadSeries& s);

/// 5-min series to 15-min cadence by averaging blocks of three.
LoadSeries resample_15min(const LoadSeries& s);

/// Daily production rates (TM/h) for the three product lines, one entry
/// per day from start_date. All three sequences have equal length.
class ProductionSeries {
public:
    ProductionSeries(Timestamp start_date, std::vector<double> anodes,
                     std::vector<double> acid, std::vector<double> oxygen);

    Timestamp start_date() const { return start_; }
    std::size_t days() const { return anodes_.size(); }

    const std::vector<double>& anodes() const { return anodes_; }
    const std::vector<double>& acid() const { return acid_; }
    const std::vector<double>& oxygen() const { return oxygen_; }

    bool covers(Timestamp t) const;
    /// Index of the day containing t; throws if t is outside the span.
    std::size_t day_index(Timestamp t) const;

private:
    Timestamp start_;  // midnight
    std::vector<double> anodes_, acid_, oxygen_;
};

}  // namespace demandkit
