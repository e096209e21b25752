#include <benchmark/benchmark.h>

#include <numbers>

#include "demandkit/forecaster.hpp"
#include "demandkit/simulator.hpp"
#include "demandkit/synth.hpp"
#include "demandkit/tariff.hpp"
#include "demandkit/timeseries.hpp"

namespace {

using namespace demandkit;

const SynthData& month() {
    static const SynthData data = generate(SynthConfig{});
    return data;
}

NarxConfig scaled_config() {
    NarxConfig config;
    config.demand_scale = 1.25 * max_demand(month().demand);
    return config;
}

void forward_pass(benchmark::State& state) {
    const NarxConfig config = scaled_config();
    const NarxNetwork net(config);
    const TrainingSet set = make_training_set(config, month().demand, month().production);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.forward(set.inputs[i]));
        i = (i + 1) % set.inputs.size();
    }
}
BENCHMARK(forward_pass);

void full_batch_gradients(benchmark::State& state) {
    const NarxConfig config = scaled_config();
    NarxNetwork net(config);
    const TrainingSet set = make_training_set(config, month().demand, month().production);
    std::vector<Layer> grads;
    for (auto _ : state)
        benchmark::DoNotOptimize(net.mse_and_gradients(set.inputs, set.targets_kw, &grads));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * set.inputs.size()));
}
BENCHMARK(full_batch_gradients);

void month_ahead_forecast(benchmark::State& state) {
    const NarxConfig config = scaled_config();
    const NarxNetwork net(config);
    SynthConfig next;
    next.start = Timestamp::civil(2007, 10, 1);
    next.days = 31;
    const SynthData plan = generate(next);
    for (auto _ : state)
        benchmark::DoNotOptimize(net.predict_month(month().demand, plan.production));
}
BENCHMARK(month_ahead_forecast);

void rlc_integration(benchmark::State& state) {
    const StateSpaceModel model = rlc_model(0.5, 1.0, 1.0);
    const InputSignal step = InputSignal::constant(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate(model, step, 2.0 * std::numbers::pi, 1e-3));
}
BENCHMARK(rlc_integration);

void monthly_bill(benchmark::State& state) {
    const TariffSchedule rates{7.5985, 0.074};
    for (auto _ : state) benchmark::DoNotOptimize(compute_bill(month().demand, rates));
}
BENCHMARK(monthly_bill);

void max_demand_five_minute(benchmark::State& state) {
    // A month of 5-minute metering: the sliding-window path.
    std::vector<double> values(30 * 288);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = 30000.0 + static_cast<double>(i % 288);
    const LoadSeries series(Timestamp::civil(2007, 9, 1), 5, values);
    for (auto _ : state) benchmark::DoNotOptimize(max_demand(series));
}
BENCHMARK(max_demand_five_minute);

}  // namespace

BENCHMARK_MAIN();
