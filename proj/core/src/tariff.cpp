#include "demandkit/tariff.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "demandkit/csv.hpp"

namespace demandkit {

double power_factor(double active_kw, double apparent_kva) {
    if (!(apparent_kva > 0.0)) throw std::invalid_argument("apparent power must be positive");
    if (active_kw < 0.0) throw std::invalid_argument("active power must be non-negative");
    if (active_kw > apparent_kva)
        throw std::invalid_argument("active power exceeds apparent power");
    return active_kw / apparent_kva;
}

Bill compute_bill(const LoadSeries& s, const TariffSchedule& tariff, std::optional<PowerFactorInputs> pf) {
    if (!(tariff.demand_rate_usd_per_kw > 0.0) || !(tariff.energy_rate_usd_per_kwh > 0.0))
        throw std::invalid_argument("tariff rates must be positive");

    Bill bill;
    double billable = max_demand(s);
    if (tariff.policy == BillablePolicy::ContractedFloor)
        billable = std::max(billable, tariff.contracted_floor_kw);
    bill.billable_demand_kw = billable;
    bill.demand_charge_usd = billable * tariff.demand_rate_usd_per_kw;
    bill.energy_kwh = energy_kwh(s);
    bill.energy_charge_usd = bill.energy_kwh * tariff.energy_rate_usd_per_kwh;
    bill.power_factor = pf ? std::optional<double>(power_factor(pf->active_kw, pf->apparent_kva))
                           : std::nullopt;
    bill.total_usd = bill.demand_charge_usd + bill.energy_charge_usd;
    return bill;
}

long long round_usd(double usd) {
    return static_cast<long long>(std::floor(usd + 0.5));
}

std::string render_bill_text(const Bill& bill) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf, "billable demand : %12.1f kW\n", bill.billable_demand_kw);
    out += buf;
    std::snprintf(buf, sizeof buf, "demand charge   : %12lld USD\n", round_usd(bill.demand_charge_usd));
    out += buf;
    std::snprintf(buf, sizeof buf, "energy          : %12.1f kWh\n", bill.energy_kwh);
    out += buf;
    std::snprintf(buf, sizeof buf, "energy charge   : %12lld USD\n", round_usd(bill.energy_charge_usd));
    out += buf;
    if (bill.power_factor) {
        std::snprintf(buf, sizeof buf, "power factor    : %12.3f\n", *bill.power_factor);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "total           : %12lld USD\n", round_usd(bill.total_usd));
    out += buf;
    return out;
}

std::string render_bill_csv(const Bill& bill) {
    std::string out = "billable_demand_kw,demand_charge_usd,energy_kwh,energy_charge_usd,power_factor,total_usd\n";
    out += format_double(bill.billable_demand_kw);
    out += ',' + std::to_string(round_usd(bill.demand_charge_usd));
    out += ',' + format_double(bill.energy_kwh);
    out += ',' + std::to_string(round_usd(bill.energy_charge_usd));
    out += ',';
    if (bill.power_factor) out += format_double(*bill.power_factor);
    out += ',' + std::to_string(round_usd(bill.total_usd));
    out += '\n';
    return out;
}

}  // namespace demandkit
