#pragma once

#include <optional>
#include <string>

#include "demandkit/timeseries.hpp"

namespace demandkit {

/// How the billed demand quantity is derived from the metered maximum.
/// MaxDemand bills the period maximum as-is; ContractedFloor bills at
/// least the contracted kW.
enum class BillablePolicy { MaxDemand, ContractedFloor };

struct TariffSchedule {
    double demand_rate_usd_per_kw;    // $/kW-month
    double energy_rate_usd_per_kwh;   // $/kWh
    BillablePolicy policy = BillablePolicy::MaxDemand;
    double contracted_floor_kw = 0.0;
};

struct PowerFactorInputs {
    double active_kw;
    double apparent_kva;
};

struct Bill {
    double billable_demand_kw;
    double demand_charge_usd;
    double energy_kwh;
    double energy_charge_usd;
    std::optional<double> power_factor;  // reported, never charged
    double total_usd;
};

/// Active over apparent power, dimensionless in [0, 1].
double power_factor(double active_kw, double apparent_kva);

Bill compute_bill(const LoadSeries& s, const TariffSchedule& tariff,
                  std::optional<PowerFactorInputs> pf = std::nullopt);

/// Round half-up to whole dollars; charges are kept in full precision and
/// rounded only here, at presentation.
long long round_usd(double usd);

std::string render_bill_text(const Bill& bill);
std::string render_bill_csv(const Bill& bill);

}  // namespace demandkit
