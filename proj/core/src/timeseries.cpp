#include "demandkit/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace demandkit {

CalendarFeatures encode_calendar(Timestamp t) {
    CalendarFeatures f;
    f.month = t.month() - 1;
    f.week_of_month = (t.day() - 1) / 7;
    f.day_of_week = t.weekday_monday0();
    f.hour = t.hour();
    f.quarter = t.minute() / 15;
    return f;
}

namespace {

void check_values(const std::vector<double>& values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0)
            throw std::invalid_argument(std::string(what) + ": negative or non-finite value at index " +
                                        std::to_string(i));
    }
}

}  // namespace

LoadSeries::LoadSeries(Timestamp start, int cadence_minutes, std::vector<double> values)
    : start_(start), cadence_(cadence_minutes), values_(std::move(values)) {
    if (cadence_ != 5 && cadence_ != 15)
        throw std::invalid_argument("cadence must be 5 or 15 minutes");
    check_values(values_, "load series");
}

double energy_kwh(const LoadSeries& s) {
    if (s.empty()) throw std::invalid_argument("empty series");
    double sum = 0.0;
    for (double v : s.values()) sum += v;
    return sum * (s.cadence_minutes() / 60.0);
}

double max_demand(const LoadSeries& s) {
    if (s.empty()) throw std::invalid_argument("empty series");
    const auto& v = s.values();
    if (s.cadence_minutes() == 15) {
        return *std::max_element(v.begin(), v.end());
    }
    // 5-min readings: 15-minute window of three samples, sliding by one.
    if (v.size() < 3) throw std::invalid_argument("window underflow");
    double best = 0.0;
    for (std::size_t i = 0; i + 3 <= v.size(); ++i) {
        const double mean = (v[i] + v[i + 1] + v[i + 2]) / 3.0;
        best = std::max(best, mean);
    }
    return best;
}

LoadSeries resample_15min(const LoadSeries& s) {
    if (s.cadence_minutes() != 5)
        throw std::invalid_argument("resample_15min expects a 5-minute series");
    if (s.size() % 3 != 0)
        throw std::invalid_argument("resample_15min: length not divisible by 3");
    std::vector<double> out;
    out.reserve(s.size() / 3);
    const auto& v = s.values();
    for (std::size_t i = 0; i < v.size(); i += 3)
        out.push_back((v[i] + v[i + 1] + v[i + 2]) / 3.0);
    return LoadSeries(s.start(), 15, std::move(out));
}

ProductionSeries::ProductionSeries(Timestamp start_date, std::vector<double> anodes,
                                   std::vector<double> acid, std::vector<double> oxygen)
    : start_(start_date), anodes_(std::move(anodes)), acid_(std::move(acid)), oxygen_(std::move(oxygen)) {
    if (!start_.is_midnight())
        throw std::invalid_argument("production start_date must be a calendar date (midnight)");
    if (anodes_.size() != acid_.size() || acid_.size() != oxygen_.size())
        throw std::invalid_argument("production sequences must have equal length");
    check_values(anodes_, "anodes production");
    check_values(acid_, "acid production");
    check_values(oxygen_, "oxygen production");
}

bool ProductionSeries::covers(Timestamp t) const {
    const std::int64_t day = (t.date() - start_) / 1440;
    return day >= 0 && day < static_cast<std::int64_t>(days());
}

std::size_t ProductionSeries::day_index(Timestamp t) const {
    if (!covers(t))
        throw std::invalid_argument("production does not cover " + t.date_string());
    return static_cast<std::size_t>((t.date() - start_) / 1440);
}

}  // namespace demandkit
