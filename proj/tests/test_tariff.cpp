#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <vector>

#include "demandkit/tariff.hpp"

using namespace demandkit;

namespace {

const TariffSchedule kPublishedRates{7.5985, 0.074};

LoadSeries constant_series(double kw, std::size_t samples, int cadence = 15) {
    return LoadSeries(Timestamp::civil(2007, 10, 1), cadence,
                      std::vector<double>(samples, kw));
}

}  // namespace

TEST_CASE("dollar rounding is half-up at the boundary") {
    CHECK(round_usd(0.0) == 0);
    CHECK(round_usd(0.5) == 1);
    CHECK(round_usd(1.4999) == 1);
    CHECK(round_usd(1.5) == 2);
    CHECK(round_usd(2841.839) == 2842);
    CHECK(round_usd(843.4335) == 843);
    CHECK(round_usd(323460.5465) == 323461);
    CHECK(round_usd(97345.0) == 97345);
    CHECK(round_usd(-0.5) == 0);
    CHECK(round_usd(-0.51) == -1);
    CHECK(round_usd(-1.5) == -1);  // floor(x + 0.5), not away-from-zero
}

TEST_CASE("power factor is active over apparent") {
    CHECK(power_factor(3.0, 5.0) == 0.6);
    CHECK(power_factor(0.0, 100.0) == 0.0);
    CHECK(power_factor(42.0, 42.0) == 1.0);
    CHECK_THROWS_WITH_AS(power_factor(1.0, 0.0), "apparent power must be positive",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(power_factor(-1.0, 5.0), "active power must be non-negative",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(power_factor(6.0, 5.0), "active power exceeds apparent power",
                         std::invalid_argument);
}

TEST_CASE("a flat day bills by hand arithmetic") {
    const LoadSeries day = constant_series(1000.0, 96);
    const Bill bill = compute_bill(day, kPublishedRates);
    CHECK(bill.billable_demand_kw == 1000.0);
    CHECK(bill.energy_kwh == doctest::Approx(24000.0).epsilon(1e-12));
    CHECK(bill.demand_charge_usd == doctest::Approx(7598.5).epsilon(1e-12));
    CHECK(bill.energy_charge_usd == doctest::Approx(1776.0).epsilon(1e-12));
    CHECK(bill.total_usd == doctest::Approx(9374.5).epsilon(1e-12));
    CHECK(!bill.power_factor.has_value());
    CHECK(round_usd(bill.total_usd) == 9375);
}

TEST_CASE("demand charge at the metered monthly peak") {
    // 42,569 kW at the published rate: charge carries full precision and is
    // rounded only at the rendering edge.
    std::vector<double> values(2976, 30000.0);
    values[1000] = 42569.0;
    const LoadSeries month(Timestamp::civil(2007, 10, 1), 15, values);
    const Bill bill = compute_bill(month, kPublishedRates);
    CHECK(bill.billable_demand_kw == 42569.0);
    CHECK(bill.demand_charge_usd == doctest::Approx(323460.5465).epsilon(1e-12));
    CHECK(round_usd(bill.demand_charge_usd) == 323461);
}

TEST_CASE("contracted floor lifts the billable demand but never lowers it") {
    TariffSchedule floored = kPublishedRates;
    floored.policy = BillablePolicy::ContractedFloor;
    floored.contracted_floor_kw = 2000.0;

    const LoadSeries low = constant_series(1500.0, 96);
    const Bill lifted = compute_bill(low, floored);
    CHECK(lifted.billable_demand_kw == 2000.0);
    CHECK(lifted.demand_charge_usd == doctest::Approx(2000.0 * 7.5985));

    const LoadSeries high = constant_series(2500.0, 96);
    CHECK(compute_bill(high, floored).billable_demand_kw == 2500.0);

    // The default policy ignores the floor entirely.
    TariffSchedule plain = kPublishedRates;
    plain.contracted_floor_kw = 90000.0;
    CHECK(compute_bill(low, plain).billable_demand_kw == 1500.0);
}

TEST_CASE("power factor is reported but never billed") {
    const LoadSeries day = constant_series(1200.0, 96);
    const Bill without = compute_bill(day, kPublishedRates);
    const Bill with = compute_bill(day, kPublishedRates, PowerFactorInputs{1200.0, 1500.0});
    CHECK(with.power_factor.has_value());
    CHECK(*with.power_factor == 0.8);
    CHECK(with.total_usd == without.total_usd);
    CHECK(with.demand_charge_usd == without.demand_charge_usd);
    CHECK(with.energy_charge_usd == without.energy_charge_usd);
}

TEST_CASE("bills are monotone in the load") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> base(0.0, 50000.0);
    std::uniform_real_distribution<double> bump(0.0, 5000.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int cadence = trial % 2 == 0 ? 15 : 5;
        std::vector<double> a(48), b(48);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = base(rng);
            b[i] = a[i] + bump(rng);
        }
        const Bill lo = compute_bill(LoadSeries(Timestamp::civil(2007, 10, 1), cadence, a),
                                     kPublishedRates);
        const Bill hi = compute_bill(LoadSeries(Timestamp::civil(2007, 10, 1), cadence, b),
                                     kPublishedRates);
        CHECK(hi.billable_demand_kw >= lo.billable_demand_kw);
        CHECK(hi.energy_kwh >= lo.energy_kwh);
        CHECK(hi.total_usd >= lo.total_usd);
    }
}

TEST_CASE("five-minute metering never bills below its fifteen-minute resample") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> val(1000.0, 40000.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> fine(288);
        for (auto& v : fine) v = val(rng);
        const LoadSeries five(Timestamp::civil(2007, 10, 1), 5, fine);
        const LoadSeries fifteen = resample_15min(five);

        const Bill bf = compute_bill(five, kPublishedRates);
        const Bill bq = compute_bill(fifteen, kPublishedRates);
        CHECK(bf.energy_kwh == doctest::Approx(bq.energy_kwh).epsilon(1e-9));
        CHECK(bf.billable_demand_kw >= bq.billable_demand_kw - 1e-9);
        CHECK(bf.total_usd >= bq.total_usd - 1e-6);
    }
}

TEST_CASE("block-constant loads bill identically at both cadences") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> val(1000.0, 40000.0);
    std::vector<double> fine(288);
    for (std::size_t block = 0; block < 96; ++block) {
        const double v = val(rng);
        fine[3 * block] = fine[3 * block + 1] = fine[3 * block + 2] = v;
    }
    const LoadSeries five(Timestamp::civil(2007, 10, 1), 5, fine);
    const Bill bf = compute_bill(five, kPublishedRates);
    const Bill bq = compute_bill(resample_15min(five), kPublishedRates);
    CHECK(bf.billable_demand_kw == doctest::Approx(bq.billable_demand_kw).epsilon(1e-12));
    CHECK(bf.total_usd == doctest::Approx(bq.total_usd).epsilon(1e-12));
}

TEST_CASE("tariff rates must be positive") {
    const LoadSeries day = constant_series(1000.0, 96);
    CHECK_THROWS_WITH_AS(compute_bill(day, TariffSchedule{0.0, 0.074}),
                         "tariff rates must be positive", std::invalid_argument);
    CHECK_THROWS_WITH_AS(compute_bill(day, TariffSchedule{7.5985, -1.0}),
                         "tariff rates must be positive", std::invalid_argument);
}

TEST_CASE("bill renderers expose every line item") {
    const LoadSeries day = constant_series(1000.0, 96);
    const Bill bill = compute_bill(day, kPublishedRates, PowerFactorInputs{900.0, 1000.0});

    const std::string text = render_bill_text(bill);
    CHECK(text.find("billable demand") != std::string::npos);
    CHECK(text.find("1000.0 kW") != std::string::npos);
    CHECK(text.find("7599 USD") != std::string::npos);   // 7598.5 rounds half-up
    CHECK(text.find("24000.0 kWh") != std::string::npos);
    CHECK(text.find("1776 USD") != std::string::npos);
    CHECK(text.find("0.900") != std::string::npos);
    CHECK(text.find("9375 USD") != std::string::npos);

    const std::string csv = render_bill_csv(bill);
    std::stringstream ss(csv);
    std::string header, row;
    REQUIRE(std::getline(ss, header));
    CHECK(header ==
          "billable_demand_kw,demand_charge_usd,energy_kwh,energy_charge_usd,power_factor,"
          "total_usd");
    REQUIRE(std::getline(ss, row));
    CHECK(row == "1000,7599,24000,1776,0.9,9375");

    // Without power-factor inputs the column stays empty.
    const std::string bare = render_bill_csv(compute_bill(day, kPublishedRates));
    CHECK(bare.find(",1776,,9375") != std::string::npos);
}
