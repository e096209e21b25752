#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "demandkit/tariff.hpp"
#include "demandkit/timeseries.hpp"

namespace demandkit {

/// One proposed savings measure: an average demand reduction and a monthly
/// energy reduction. Negative values are permitted (a measure that is a
/// pure energy saving may carry a parenthesized, non-billable demand
/// figure) and are flagged in reports.
struct Measure {
    std::string name;
    std::string plant;
    double demand_reduction_kw;
    double monthly_energy_reduction_kwh;
};

struct MeasureSavings {
    double demand_usd;
    double energy_usd;
    double total_usd;
};

struct ScenarioRow {
    Measure measure;
    /// Demand reduction that actually counts: max(0, demand_reduction_kw).
    double effective_demand_kw;
    MeasureSavings savings;
};

/// Full-precision savings table; rounding happens only in the renderers.
struct ScenarioReport {
    std::vector<ScenarioRow> rows;
    double total_demand_kw;      // sum of effective demand reductions
    double total_energy_kwh;
    double total_demand_usd;
    double total_energy_usd;
    double total_usd;
};

/// Demand saving = max(0, kW) * demand rate; energy saving = kWh * energy
/// rate. Non-positive demand reductions contribute nothing to the demand
/// column.
MeasureSavings measure_savings(const Measure& m, const TariffSchedule& tariff);

ScenarioReport scenario_report(const std::vector<Measure>& measures, const TariffSchedule& tariff);

/// Savings from avoided furnace stoppages: the plain product
/// factor * stoppage_hours * energy_rate * demand_kw.
double furnace_stoppage_savings(double factor, double stoppage_hours,
                                double energy_rate_usd_per_kwh, double demand_kw);

struct AppliedMeasure {
    LoadSeries series;
    /// Energy actually removed: energy(baseline) - energy(result).
    double implied_energy_reduction_kwh;
    /// The measure's own monthly kWh figure.
    double declared_energy_reduction_kwh;

    double discrepancy_kwh() const {
        return implied_energy_reduction_kwh - declared_energy_reduction_kwh;
    }
};

/// Subtracts the measure's demand reduction uniformly (clamped at zero)
/// and reports the implied vs declared energy reduction; a mismatch is
/// informational, not an error.
AppliedMeasure apply_measure(const LoadSeries& baseline, const Measure& m);

/// `name,plant,demand_kw,energy_kwh` rows; demand_kw may be negative.
std::vector<Measure> load_measures_csv(const std::filesystem::path& path);

std::string render_scenario_text(const ScenarioReport& report);
std::string render_scenario_csv(const ScenarioReport& report);

/// The rendered grand total (rounded demand column total plus rounded
/// energy column total), i.e. the bottom-right cell of the text table.
long long rendered_total_usd(const ScenarioReport& report);

}  // namespace demandkit
