#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "demandkit/csv.hpp"
#include "demandkit/forecaster.hpp"
#include "demandkit/scenario.hpp"
#include "demandkit/synth.hpp"
#include "demandkit/tariff.hpp"
#include "demandkit/timeseries.hpp"
#include "sim_spec.hpp"

namespace {

using namespace demandkit;

/// 5-minute inputs are accepted anywhere a 15-minute series is needed.
LoadSeries load_15min(const std::filesystem::path& path) {
    LoadSeries s = load_csv(path);
    return s.cadence_minutes() == 5 ? resample_15min(s) : s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct SynthArgs {
    std::uint64_t seed = 42;
    int days = 30;
    std::string start = "2007-09-01";
    double base_kw = 30000.0;
    double noise_kw = 60.0;
    std::string out = ".";
};

int run_synth(const SynthArgs& args) {
    SynthConfig config;
    config.start = Timestamp::parse(args.start);
    config.days = args.days;
    config.seed = args.seed;
    config.base_kw = args.base_kw;
    config.noise_kw = args.noise_kw;
    const SynthData data = generate(config);

    std::filesystem::create_directories(args.out);
    const auto demand_path = std::filesystem::path(args.out) / "demand.csv";
    const auto production_path = std::filesystem::path(args.out) / "production.csv";
    save_csv(data.demand, demand_path);
    save_production_csv(data.production, production_path);
    std::cout << "wrote " << demand_path.string() << " (" << data.demand.size() << " rows) and "
              << production_path.string() << " (" << data.production.days() << " days)\n";
    return 0;
}

struct TrainArgs {
    std::string demand;
    std::string production;
    std::string out = "model.json";
    std::string curve;
    NarxConfig config;
};

int run_train(const TrainArgs& args) {
    const LoadSeries demand = load_15min(args.demand);
    const ProductionSeries production = load_production_csv(args.production);

    NarxConfig config = args.config;
    // Scale so the observed range maps comfortably inside [0, 1], leaving
    // headroom for a forecast month that runs above the training month.
    double max_kw = 0.0;
    for (double v : demand.values()) max_kw = std::max(max_kw, v);
    config.demand_scale = max_kw > 0.0 ? 1.25 * max_kw : 1.0;
    const std::vector<double>* channels[3] = {&production.anodes(), &production.acid(),
                                              &production.oxygen()};
    for (int i = 0; i < 3; ++i) {
        double peak = 0.0;
        for (double v : *channels[i]) peak = std::max(peak, v);
        config.production_scale[i] = peak > 0.0 ? 1.2 * peak : 1.0;
    }

    NarxNetwork net(config);
    const std::vector<double> curve = net.train(demand, production);
    save_model(net, args.out);

    if (!args.curve.empty()) {
        std::string text = "epoch,mse\n";
        for (std::size_t i = 0; i < curve.size(); ++i)
            text += std::to_string(i) + ',' + format_double(curve[i]) + '\n';
        write_text(args.curve, text);
    }

    std::cout << "trained on " << demand.size() - static_cast<std::size_t>(config.input_lags)
              << " samples for " << config.epochs << " epochs\n"
              << "mse " << format_double(curve.front()) << " -> " << format_double(curve.back())
              << " (scaled units)\n"
              << "model written to " << args.out << '\n';
    return 0;
}

struct PredictArgs {
    std::string model;
    std::string prior;
    std::string plan;
    std::string out = "forecast.csv";
    int days = 0;  // 0 = the whole plan
};

int run_predict(const PredictArgs& args) {
    const NarxNetwork net = load_model(args.model);
    const LoadSeries prior = load_15min(args.prior);
    ProductionSeries plan = load_production_csv(args.plan);
    if (args.days > 0) {
        const auto days = static_cast<std::size_t>(args.days);
        if (days > plan.days())
            throw std::invalid_argument("plan covers only " + std::to_string(plan.days()) +
                                        " days, cannot predict " + std::to_string(args.days));
        auto take = [days](const std::vector<double>& v) {
            return std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(days));
        };
        plan = ProductionSeries(plan.start_date(), take(plan.anodes()), take(plan.acid()),
                                take(plan.oxygen()));
    }
    const LoadSeries forecast = net.predict_month(prior, plan);
    save_csv(forecast, args.out);
    std::cout << "wrote " << args.out << " (" << forecast.size()
              << " rows at 15-minute cadence)\n";
    return 0;
}

struct ValidateArgs {
    std::string forecast;
    std::string actual;
    std::string out;
};

int run_validate(const ValidateArgs& args) {
    const LoadSeries predicted = load_csv(args.forecast);
    const LoadSeries real = load_csv(args.actual);
    const ValidationReport r = validate(predicted, real);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "samples:              %zu\n"
                  "erms:                 %.4f %%\n",
                  predicted.size(), r.erms_pct);
    std::cout << buf;
    std::cout << "energy predicted:     " << format_double(r.energy_predicted_kwh) << " kWh\n"
              << "energy real:          " << format_double(r.energy_real_kwh) << " kWh\n";
    std::snprintf(buf, sizeof buf, "energy error:         %.2f %%\n", r.energy_error_pct);
    std::cout << buf;
    std::cout << "max demand predicted: " << format_double(r.demand_predicted_kw) << " kW\n"
              << "max demand real:      " << format_double(r.demand_real_kw) << " kW\n";
    std::snprintf(buf, sizeof buf, "demand error:         %.2f %%\n", r.demand_error_pct);
    std::cout << buf;

    if (!args.out.empty()) {
        std::string text =
            "erms_pct,energy_predicted_kwh,energy_real_kwh,energy_error_pct,"
            "demand_predicted_kw,demand_real_kw,demand_error_pct\n";
        text += format_double(r.erms_pct) + ',' + format_double(r.energy_predicted_kwh) + ',' +
                format_double(r.energy_real_kwh) + ',' + format_double(r.energy_error_pct) + ',' +
                format_double(r.demand_predicted_kw) + ',' + format_double(r.demand_real_kw) +
                ',' + format_double(r.demand_error_pct) + '\n';
        write_text(args.out, text);
    }
    return 0;
}

struct BillArgs {
    std::string demand;
    double demand_rate = 7.5985;
    double energy_rate = 0.074;
    double contracted_floor = 0.0;
    bool has_floor = false;
    double apparent_kva = 0.0;
    bool has_apparent = false;
    double active_kw = 0.0;
    bool has_active = false;
    std::string out;
};

int run_bill(const BillArgs& args) {
    const LoadSeries series = load_csv(args.demand);
    TariffSchedule tariff;
    tariff.demand_rate_usd_per_kw = args.demand_rate;
    tariff.energy_rate_usd_per_kwh = args.energy_rate;
    if (args.has_floor) {
        tariff.policy = BillablePolicy::ContractedFloor;
        tariff.contracted_floor_kw = args.contracted_floor;
    }
    std::optional<PowerFactorInputs> pf;
    if (args.has_apparent)
        pf = PowerFactorInputs{args.has_active ? args.active_kw : max_demand(series),
                               args.apparent_kva};
    const Bill bill = compute_bill(series, tariff, pf);
    std::cout << render_bill_text(bill);
    if (!args.out.empty()) write_text(args.out, render_bill_csv(bill));
    return 0;
}

struct ScenarioArgs {
    std::string measures;
    double demand_rate = 7.5985;
    double energy_rate = 0.074;
    std::string out;
};

int run_scenario(const ScenarioArgs& args) {
    const std::vector<Measure> measures = load_measures_csv(args.measures);
    TariffSchedule tariff;
    tariff.demand_rate_usd_per_kw = args.demand_rate;
    tariff.energy_rate_usd_per_kwh = args.energy_rate;
    const ScenarioReport report = scenario_report(measures, tariff);
    std::cout << render_scenario_text(report);
    if (!args.out.empty()) write_text(args.out, render_scenario_csv(report));
    return 0;
}

struct SimulateArgs {
    std::string spec;
    std::string out = "sim.csv";
    double dt = 0.0;
    bool has_dt = false;
    double t_end = 0.0;
    bool has_t_end = false;
};

int run_simulate(const SimulateArgs& args) {
    cli::SimSpec spec = cli::parse_sim_spec(args.spec);
    if (args.has_dt) spec.dt = args.dt;
    if (args.has_t_end) spec.t_end = args.t_end;
    const SimulationResult result = simulate(spec.model, spec.input, spec.t_end, spec.dt);
    save_simulation_csv(result, args.out);
    std::cout << "simulated " << result.steps() << " points to t = "
              << format_double(result.times.back()) << " s (dt = " << format_double(spec.dt)
              << "), wrote " << args.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"demand forecasting, plant simulation, and tariff analysis toolkit"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic demand/production dataset");
    synth->add_option("--seed", synth_args.seed, "Noise seed")->capture_default_str();
    synth->add_option("--days", synth_args.days, "Days to generate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--start", synth_args.start, "First day (YYYY-MM-DD)")
        ->capture_default_str();
    synth->add_option("--base-kw", synth_args.base_kw, "Base load in kW")->capture_default_str();
    synth->add_option("--noise-kw", synth_args.noise_kw, "Noise amplitude in kW")
        ->capture_default_str();
    synth->add_option("--out", synth_args.out, "Output directory")->capture_default_str();

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Train the demand forecaster on one month");
    train->add_option("--demand", train_args.demand, "Demand CSV (timestamp,kw)")
        ->required()
        ->check(CLI::ExistingFile);
    train->add_option("--production", train_args.production, "Production CSV")
        ->required()
        ->check(CLI::ExistingFile);
    train->add_option("--out", train_args.out, "Model output path")->capture_default_str();
    train->add_option("--curve", train_args.curve, "Optional epoch,mse CSV of the training run");
    train->add_option("--epochs", train_args.config.epochs, "Training epochs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--hidden", train_args.config.hidden, "Hidden layer sizes")
        ->delimiter(',')
        ->capture_default_str();
    train->add_option("--lags", train_args.config.input_lags, "Demand lags fed to the network")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--learning-rate", train_args.config.learning_rate, "Gradient step size")
        ->capture_default_str();
    train->add_option("--momentum", train_args.config.momentum, "Momentum coefficient")
        ->capture_default_str();
    train->add_option("--seed", train_args.config.seed, "Weight initialization seed")
        ->capture_default_str();

    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Closed-loop forecast over a production plan");
    predict->add_option("--model", predict_args.model, "Model file from train")
        ->required()
        ->check(CLI::ExistingFile);
    predict->add_option("--prior", predict_args.prior, "Demand CSV ending where the plan starts")
        ->required()
        ->check(CLI::ExistingFile);
    predict->add_option("--plan", predict_args.plan, "Production plan CSV")
        ->required()
        ->check(CLI::ExistingFile);
    predict->add_option("--out", predict_args.out, "Forecast CSV path")->capture_default_str();
    predict->add_option("--days", predict_args.days, "Forecast only the first N days of the plan")
        ->check(CLI::PositiveNumber);

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Compare a forecast against measurements");
    validate->add_option("--forecast", validate_args.forecast, "Forecast CSV")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--actual", validate_args.actual, "Measured CSV")
        ->required()
        ->check(CLI::ExistingFile);
    validate->add_option("--out", validate_args.out, "Optional CSV report path");

    BillArgs bill_args;
    auto* bill = app.add_subcommand("bill", "Monthly bill for a demand series");
    bill->add_option("--demand", bill_args.demand, "Demand CSV")
        ->required()
        ->check(CLI::ExistingFile);
    bill->add_option("--demand-rate", bill_args.demand_rate, "USD per kW-month")
        ->capture_default_str();
    bill->add_option("--energy-rate", bill_args.energy_rate, "USD per kWh")
        ->capture_default_str();
    auto* floor_opt = bill->add_option("--contracted-floor", bill_args.contracted_floor,
                                       "Bill at least this many kW");
    auto* apparent_opt = bill->add_option("--apparent-kva", bill_args.apparent_kva,
                                          "Apparent power for the power-factor line");
    auto* active_opt = bill->add_option(
        "--active-kw", bill_args.active_kw,
        "Active power for the power-factor line (default: the series maximum demand)");
    bill->add_option("--out", bill_args.out, "Optional CSV bill path");

    ScenarioArgs scenario_args;
    auto* scenario = app.add_subcommand("scenario", "Savings report for a list of measures");
    scenario->add_option("--measures", scenario_args.measures,
                         "Measures CSV (name,plant,demand_kw,energy_kwh)")
        ->required()
        ->check(CLI::ExistingFile);
    scenario->add_option("--demand-rate", scenario_args.demand_rate, "USD per kW-month")
        ->capture_default_str();
    scenario->add_option("--energy-rate", scenario_args.energy_rate, "USD per kWh")
        ->capture_default_str();
    scenario->add_option("--out", scenario_args.out, "Optional CSV report path");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Integrate a plant model spec file");
    simulate->add_option("--spec", simulate_args.spec, "Model spec file")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--out", simulate_args.out, "Trajectory CSV path")
        ->capture_default_str();
    auto* dt_opt = simulate->add_option("--dt", simulate_args.dt, "Override the spec's step size");
    auto* t_end_opt =
        simulate->add_option("--t-end", simulate_args.t_end, "Override the spec's end time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    bill_args.has_floor = floor_opt->count() > 0;
    bill_args.has_apparent = apparent_opt->count() > 0;
    bill_args.has_active = active_opt->count() > 0;
    simulate_args.has_dt = dt_opt->count() > 0;
    simulate_args.has_t_end = t_end_opt->count() > 0;

    try {
        if (app.got_subcommand(synth)) return run_synth(synth_args);
        if (app.got_subcommand(train)) return run_train(train_args);
        if (app.got_subcommand(predict)) return run_predict(predict_args);
        if (app.got_subcommand(validate)) return run_validate(validate_args);
        if (app.got_subcommand(bill)) return run_bill(bill_args);
        if (app.got_subcommand(scenario)) return run_scenario(scenario_args);
        if (app.got_subcommand(simulate)) return run_simulate(simulate_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "demandkit: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "demandkit: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "demandkit: internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
