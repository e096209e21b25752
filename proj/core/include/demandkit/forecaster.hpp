#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "demandkit/timeseries.hpp"

namespace demandkit {

/// One network input: calendar slots, the day's production rates, and the
/// most recent demand samples, each scaled into [0, 1]. demand_lags[0] is
/// the sample immediately before the prediction instant.
struct FeatureVector {
    std::array<double, 5> calendar;    // month, week, day-of-week, hour, quarter
    std::array<double, 3> production;  // anodes, acid, oxygen
    std::vector<double> demand_lags;

    /// Concatenation in declaration order; size is 8 + demand_lags.size().
    Eigen::VectorXd to_vector() const;
};

struct NarxConfig {
    int input_lags = 4;              // demand samples fed back into the input
    std::vector<int> hidden = {16};  // tanh units per hidden layer
    double learning_rate = 0.01;
    double momentum = 0.9;
    int epochs = 500;
    std::uint64_t seed = 42;
    double demand_scale = 50000.0;  // kW mapped to 1.0 on the input/output
    std::array<double, 3> production_scale = {1.0, 1.0, 1.0};  // TM/h mapped to 1.0
};

struct Layer {
    Eigen::MatrixXd weights;  // rows = units, cols = inputs
    Eigen::VectorXd bias;
};

/// Teacher-forced samples: inputs[i] uses measured demand for its lags and
/// targets_kw[i] is the measured demand one step ahead.
struct TrainingSet {
    std::vector<FeatureVector> inputs;
    std::vector<double> targets_kw;
};

/// Features for predicting demand at instant t given the lagged demand
/// values (kW, most recent first) and the production plan covering t.
FeatureVector build_features(const NarxConfig& config, Timestamp t,
                             const std::vector<double>& lags_kw,
                             const ProductionSeries& production);

/// Every one-step-ahead sample the series supports: one per index from
/// input_lags to the end. The production series must cover the whole span.
TrainingSet make_training_set(const NarxConfig& config, const LoadSeries& demand,
                              const ProductionSeries& production);

/// Feed-forward network with tanh hidden layers and a linear scalar output,
/// trained one-step-ahead on measured lags and run closed-loop (its own
/// outputs fed back) to forecast a full month.
class NarxNetwork {
public:
    explicit NarxNetwork(NarxConfig config);

    const NarxConfig& config() const { return config_; }
    const std::vector<Layer>& layers() const { return layers_; }
    /// Mutable access for tests that nudge individual weights.
    std::vector<Layer>& mutable_layers() { return layers_; }

    /// Network output in scaled units for one input.
    double forward(const FeatureVector& f) const;
    /// Network output in kW, clamped at zero.
    double predict_kw(const FeatureVector& f) const;

    /// Mean squared error (scaled units) over the batch; when grads is
    /// non-null it receives dMSE/dW and dMSE/db per layer.
    double mse_and_gradients(const std::vector<FeatureVector>& inputs,
                             const std::vector<double>& targets_kw,
                             std::vector<Layer>* grads) const;

    /// Full-batch gradient descent with momentum on the one-step-ahead MSE.
    /// Returns epochs + 1 values: the error before each update and, last,
    /// the error of the final weights.
    std::vector<double> train(const LoadSeries& demand, const ProductionSeries& production);

    /// Closed-loop forecast at 15-minute cadence for the whole span of
    /// `plan`. `prior` must be a 15-minute series ending exactly where the
    /// plan starts and long enough to fill the lag window.
    LoadSeries predict_month(const LoadSeries& prior, const ProductionSeries& plan) const;

private:
    NarxConfig config_;
    std::vector<Layer> layers_;
};

/// Relative-error figure of merit, in percent:
/// sum(((predicted_i - real_i) / real_i)^2) / N * 100. Note: no square root.
double erms_pct(const std::vector<double>& predicted, const std::vector<double>& real);

/// Forecast-vs-measurement comparison. The percent errors use the
/// prediction as the reference: (predicted - real) / predicted * 100.
struct ValidationReport {
    double erms_pct;
    double energy_predicted_kwh;
    double energy_real_kwh;
    double energy_error_pct;
    double demand_predicted_kw;
    double demand_real_kw;
    double demand_error_pct;
};

ValidationReport validate(const LoadSeries& predicted, const LoadSeries& real);

/// JSON round-trip of the configuration and weights; doubles survive
/// bit-exactly.
void save_model(const NarxNetwork& net, const std::filesystem::path& path);
NarxNetwork load_model(const std::filesystem::path& path);

}  // namespace demandkit
