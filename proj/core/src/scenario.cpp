#include "demandkit/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "demandkit/csv.hpp"

namespace demandkit {

MeasureSavings measure_savings(const Measure& m, const TariffSchedule& tariff) {
    if (!(tariff.demand_rate_usd_per_kw > 0.0) || !(tariff.energy_rate_usd_per_kwh > 0.0))
        throw std::invalid_argument("tariff rates must be positive");
    MeasureSavings s;
    const double effective = m.demand_reduction_kw > 0.0 ? m.demand_reduction_kw : 0.0;
    s.demand_usd = effective * tariff.demand_rate_usd_per_kw;
    s.energy_usd = m.monthly_energy_reduction_kwh * tariff.energy_rate_usd_per_kwh;
    s.total_usd = s.demand_usd + s.energy_usd;
    return s;
}

ScenarioReport scenario_report(const std::vector<Measure>& measures, const TariffSchedule& tariff) {
    if (measures.empty()) throw std::invalid_argument("scenario needs at least one measure");
    ScenarioReport report;
    report.total_demand_kw = 0.0;
    report.total_energy_kwh = 0.0;
    report.total_demand_usd = 0.0;
    report.total_energy_usd = 0.0;
    report.total_usd = 0.0;
    for (const auto& m : measures) {
        if (m.name.empty()) throw std::invalid_argument("measure name must be non-empty");
        ScenarioRow row;
        row.measure = m;
        row.effective_demand_kw = m.demand_reduction_kw > 0.0 ? m.demand_reduction_kw : 0.0;
        row.savings = measure_savings(m, tariff);
        report.total_demand_kw += row.effective_demand_kw;
        report.total_energy_kwh += m.monthly_energy_reduction_kwh;
        report.total_demand_usd += row.savings.demand_usd;
        report.total_energy_usd += row.savings.energy_usd;
        report.total_usd += row.savings.total_usd;
        report.rows.push_back(std::move(row));
    }
    return report;
}

double furnace_stoppage_savings(double factor, double stoppage_hours,
                                double energy_rate_usd_per_kwh, double demand_kw) {
    if (factor < 0.0 || stoppage_hours < 0.0 || energy_rate_usd_per_kwh < 0.0 || demand_kw < 0.0)
        throw std::invalid_argument("furnace savings inputs must be non-negative");
    return factor * stoppage_hours * energy_rate_usd_per_kwh * demand_kw;
}

AppliedMeasure apply_measure(const LoadSeries& baseline, const Measure& m) {
    if (baseline.empty()) throw std::invalid_argument("empty series");
    std::vector<double> reduced;
    reduced.reserve(baseline.size());
    for (double v : baseline.values()) {
        const double r = v - m.demand_reduction_kw;
        reduced.push_back(r > 0.0 ? r : 0.0);
    }
    LoadSeries series(baseline.start(), baseline.cadence_minutes(), std::move(reduced));
    const double implied = energy_kwh(baseline) - energy_kwh(series);
    return AppliedMeasure{std::move(series), implied, m.monthly_energy_reduction_kwh};
}

std::vector<Measure> load_measures_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    int line_no = 1;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "name,plant,demand_kw,energy_kwh")
        throw std::runtime_error(path.string() + " (line 1): expected header \"name,plant,demand_kw,energy_kwh\"");

    auto parse_signed = [&](std::string_view field) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
            throw std::runtime_error(path.string() + " (line " + std::to_string(line_no) +
                                     "): parse error: \"" + std::string(field) + "\"");
        return v;
    };

    std::vector<Measure> measures;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        // name and plant must not contain commas; the two numbers follow.
        std::vector<std::string> fields;
        std::size_t pos = 0;
        for (int k = 0; k < 3; ++k) {
            auto comma = line.find(',', pos);
            if (comma == std::string::npos)
                throw std::runtime_error(path.string() + " (line " + std::to_string(line_no) +
                                         "): expected 4 fields");
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        fields.push_back(line.substr(pos));
        if (fields[0].empty())
            throw std::runtime_error(path.string() + " (line " + std::to_string(line_no) +
                                     "): measure name must be non-empty");
        measures.push_back(Measure{fields[0], fields[1], parse_signed(fields[2]), parse_signed(fields[3])});
    }
    if (measures.empty()) throw std::runtime_error(path.string() + ": no data rows");
    return measures;
}

namespace {

std::string demand_cell(double kw) {
    // The savings table parenthesizes demand figures that do not count
    // toward the billed-demand reduction.
    if (kw > 0.0) return format_double(kw);
    return "(" + format_double(std::abs(kw)) + "*)";
}

}  // namespace

long long rendered_total_usd(const ScenarioReport& report) {
    long long demand_total = 0;
    long long energy_total = 0;
    for (const auto& row : report.rows) {
        demand_total += round_usd(row.savings.demand_usd);
        energy_total += round_usd(row.savings.energy_usd);
    }
    return demand_total + energy_total;
}

std::string render_scenario_text(const ScenarioReport& report) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-50s %-10s %12s %14s %12s %12s %12s\n", "measure", "plant",
                  "demand_kw", "energy_kwh", "demand_usd", "energy_usd", "total_usd");
    out += buf;
    long long demand_total = 0;
    long long energy_total = 0;
    for (const auto& row : report.rows) {
        const long long d = round_usd(row.savings.demand_usd);
        const long long e = round_usd(row.savings.energy_usd);
        demand_total += d;
        energy_total += e;
        std::snprintf(buf, sizeof buf, "%-50s %-10s %12s %14s %12lld %12lld %12lld\n",
                      row.measure.name.c_str(), row.measure.plant.c_str(),
                      demand_cell(row.measure.demand_reduction_kw).c_str(),
                      format_double(row.measure.monthly_energy_reduction_kwh).c_str(), d, e,
                      round_usd(row.savings.total_usd));
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "%-50s %-10s %12s %14s %12lld %12lld %12lld\n", "TOTAL", "",
                  format_double(report.total_demand_kw).c_str(),
                  format_double(report.total_energy_kwh).c_str(), demand_total, energy_total,
                  demand_total + energy_total);
    out += buf;
    return out;
}

std::string render_scenario_csv(const ScenarioReport& report) {
    std::string out = "name,plant,demand_kw,energy_kwh,demand_saving_usd,energy_saving_usd,total_usd\n";
    long long demand_total = 0;
    long long energy_total = 0;
    for (const auto& row : report.rows) {
        const long long d = round_usd(row.savings.demand_usd);
        const long long e = round_usd(row.savings.energy_usd);
        demand_total += d;
        energy_total += e;
        out += row.measure.name + ',' + row.measure.plant + ',' +
               format_double(row.measure.demand_reduction_kw) + ',' +
               format_double(row.measure.monthly_energy_reduction_kwh) + ',' + std::to_string(d) +
               ',' + std::to_string(e) + ',' + std::to_string(round_usd(row.savings.total_usd)) + '\n';
    }
    out += "TOTAL,," + format_double(report.total_demand_kw) + ',' +
           format_double(report.total_energy_kwh) + ',' + std::to_string(demand_total) + ',' +
           std::to_string(energy_total) + ',' + std::to_string(demand_total + energy_total) + '\n';
    return out;
}

}  // namespace demandkit
