#include "demandkit/forecaster.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace demandkit {

namespace {

double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

/// Uniform in [0, 1) from the generator's top 53 bits. Identical on every
/// platform, unlike std::uniform_real_distribution.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Eigen::VectorXd FeatureVector::to_vector() const {
    Eigen::VectorXd x(8 + static_cast<Eigen::Index>(demand_lags.size()));
    Eigen::Index k = 0;
    for (double v : calendar) x[k++] = v;
    for (double v : production) x[k++] = v;
    for (double v : demand_lags) x[k++] = v;
    return x;
}

FeatureVector build_features(const NarxConfig& config, Timestamp t,
                             const std::vector<double>& lags_kw,
                             const ProductionSeries& production) {
    if (static_cast<int>(lags_kw.size()) != config.input_lags)
        throw std::invalid_argument("expected " + std::to_string(config.input_lags) +
                                    " demand lags, got " + std::to_string(lags_kw.size()));
    const CalendarFeatures cal = encode_calendar(t);
    FeatureVector f;
    f.calendar = {clamp01(cal.month / 11.0), clamp01(cal.week_of_month / 4.0),
                  clamp01(cal.day_of_week / 6.0), clamp01(cal.hour / 23.0),
                  clamp01(cal.quarter / 3.0)};
    const std::size_t day = production.day_index(t);
    const double rates[3] = {production.anodes()[day], production.acid()[day],
                             production.oxygen()[day]};
    for (int i = 0; i < 3; ++i) f.production[i] = clamp01(rates[i] / config.production_scale[i]);
    f.demand_lags.reserve(lags_kw.size());
    for (double v : lags_kw) f.demand_lags.push_back(clamp01(v / config.demand_scale));
    return f;
}

TrainingSet make_training_set(const NarxConfig& config, const LoadSeries& demand,
                              const ProductionSeries& production) {
    if (demand.cadence_minutes() != 15)
        throw std::invalid_argument("training series must have 15-minute cadence");
    const std::size_t lags = static_cast<std::size_t>(config.input_lags);
    if (demand.size() <= lags)
        throw std::invalid_argument("training series must be longer than the lag window (" +
                                    std::to_string(config.input_lags) + " samples)");
    TrainingSet set;
    set.inputs.reserve(demand.size() - lags);
    set.targets_kw.reserve(demand.size() - lags);
    std::vector<double> lag_values(lags);
    for (std::size_t i = lags; i < demand.size(); ++i) {
        for (std::size_t j = 0; j < lags; ++j) lag_values[j] = demand[i - 1 - j];
        set.inputs.push_back(build_features(config, demand.timestamp_at(i), lag_values, production));
        set.targets_kw.push_back(demand[i]);
    }
    return set;
}

NarxNetwork::NarxNetwork(NarxConfig config) : config_(std::move(config)) {
    if (config_.input_lags < 1) throw std::invalid_argument("input_lags must be at least 1");
    if (config_.hidden.empty()) throw std::invalid_argument("at least one hidden layer required");
    for (int units : config_.hidden)
        if (units < 1) throw std::invalid_argument("hidden layer sizes must be positive");
    if (!(config_.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (config_.momentum < 0.0 || config_.momentum >= 1.0)
        throw std::invalid_argument("momentum must be in [0, 1)");
    if (config_.epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (!(config_.demand_scale > 0.0)) throw std::invalid_argument("demand_scale must be positive");
    for (double s : config_.production_scale)
        if (!(s > 0.0)) throw std::invalid_argument("production_scale entries must be positive");

    std::vector<int> sizes;
    sizes.push_back(8 + config_.input_lags);
    for (int units : config_.hidden) sizes.push_back(units);
    sizes.push_back(1);

    std::mt19937_64 rng(config_.seed);
    layers_.reserve(sizes.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        Layer layer;
        layer.weights.resize(sizes[l + 1], sizes[l]);
        const double bound = 0.5 / std::sqrt(static_cast<double>(sizes[l]));
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
            for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
                layer.weights(r, c) = (2.0 * next_uniform(rng) - 1.0) * bound;
        layer.bias = Eigen::VectorXd::Zero(sizes[l + 1]);
        layers_.push_back(std::move(layer));
    }
}

double NarxNetwork::forward(const FeatureVector& f) const {
    Eigen::VectorXd a = f.to_vector();
    if (a.size() != layers_.front().weights.cols())
        throw std::invalid_argument("feature vector size does not match the network input");
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l)
        a = (layers_[l].weights * a + layers_[l].bias).array().tanh();
    return (layers_.back().weights * a + layers_.back().bias)[0];
}

double NarxNetwork::predict_kw(const FeatureVector& f) const {
    const double kw = forward(f) * config_.demand_scale;
    return kw > 0.0 ? kw : 0.0;
}

double NarxNetwork::mse_and_gradients(const std::vector<FeatureVector>& inputs,
                                      const std::vector<double>& targets_kw,
                                      std::vector<Layer>* grads) const {
    if (inputs.empty()) throw std::invalid_argument("empty training batch");
    if (inputs.size() != targets_kw.size())
        throw std::invalid_argument("inputs and targets differ in length");
    if (grads) {
        grads->resize(layers_.size());
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            (*grads)[l].weights = Eigen::MatrixXd::Zero(layers_[l].weights.rows(),
                                                        layers_[l].weights.cols());
            (*grads)[l].bias = Eigen::VectorXd::Zero(layers_[l].bias.size());
        }
    }

    const std::size_t depth = layers_.size();
    std::vector<Eigen::VectorXd> act(depth + 1);  // act[0] = input, act[depth] = output
    std::vector<Eigen::VectorXd> delta(depth);
    const double n = static_cast<double>(inputs.size());
    double sum_sq = 0.0;

    // Samples are accumulated one at a time in index order so the result
    // does not depend on any batching or reduction strategy.
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        act[0] = inputs[i].to_vector();
        if (act[0].size() != layers_.front().weights.cols())
            throw std::invalid_argument("feature vector size does not match the network input");
        for (std::size_t l = 0; l + 1 < depth; ++l)
            act[l + 1] = (layers_[l].weights * act[l] + layers_[l].bias).array().tanh();
        act[depth] = layers_[depth - 1].weights * act[depth - 1] + layers_[depth - 1].bias;

        const double err = act[depth][0] - targets_kw[i] / config_.demand_scale;
        sum_sq += err * err;
        if (!grads) continue;

        delta[depth - 1] = Eigen::VectorXd::Constant(1, 2.0 * err / n);
        for (std::size_t l = depth - 1; l-- > 0;) {
            const Eigen::VectorXd back = layers_[l + 1].weights.transpose() * delta[l + 1];
            delta[l] = back.array() * (1.0 - act[l + 1].array().square());
        }
        for (std::size_t l = 0; l < depth; ++l) {
            (*grads)[l].weights.noalias() += delta[l] * act[l].transpose();
            (*grads)[l].bias += delta[l];
        }
    }
    return sum_sq / n;
}

std::vector<double> NarxNetwork::train(const LoadSeries& demand,
                                       const ProductionSeries& production) {
    const TrainingSet set = make_training_set(config_, demand, production);

    std::vector<Layer> velocity(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        velocity[l].weights = Eigen::MatrixXd::Zero(layers_[l].weights.rows(),
                                                    layers_[l].weights.cols());
        velocity[l].bias = Eigen::VectorXd::Zero(layers_[l].bias.size());
    }

    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(config_.epochs) + 1);
    std::vector<Layer> grads;
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
        const double mse = mse_and_gradients(set.inputs, set.targets_kw, &grads);
        if (!std::isfinite(mse))
            throw std::runtime_error("divergence at epoch " + std::to_string(epoch));
        curve.push_back(mse);
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            velocity[l].weights = config_.momentum * velocity[l].weights -
                                  config_.learning_rate * grads[l].weights;
            velocity[l].bias = config_.momentum * velocity[l].bias -
                               config_.learning_rate * grads[l].bias;
            layers_[l].weights += velocity[l].weights;
            layers_[l].bias += velocity[l].bias;
        }
    }
    const double final_mse = mse_and_gradients(set.inputs, set.targets_kw, nullptr);
    if (!std::isfinite(final_mse))
        throw std::runtime_error("divergence at epoch " + std::to_string(config_.epochs));
    curve.push_back(final_mse);
    return curve;
}

LoadSeries NarxNetwork::predict_month(const LoadSeries& prior,
                                      const ProductionSeries& plan) const {
    if (prior.cadence_minutes() != 15)
        throw std::invalid_argument("prior series must have 15-minute cadence");
    const std::size_t lags = static_cast<std::size_t>(config_.input_lags);
    if (prior.size() < lags)
        throw std::invalid_argument("prior series shorter than the lag window (" +
                                    std::to_string(config_.input_lags) + " samples)");
    if (prior.end() != plan.start_date())
        throw std::invalid_argument("prior series must end exactly where the plan starts (" +
                                    plan.start_date().to_string() + ")");

    std::vector<double> lag_values(lags);
    for (std::size_t j = 0; j < lags; ++j) lag_values[j] = prior[prior.size() - 1 - j];

    const std::size_t n = plan.days() * 96;
    std::vector<double> values;
    values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Timestamp t = plan.start_date().plus_minutes(static_cast<std::int64_t>(k) * 15);
        const double kw = predict_kw(build_features(config_, t, lag_values, plan));
        values.push_back(kw);
        for (std::size_t j = lags; j-- > 1;) lag_values[j] = lag_values[j - 1];
        lag_values[0] = kw;  // closed loop: the forecast becomes the next lag
    }
    return LoadSeries(plan.start_date(), 15, std::move(values));
}

double erms_pct(const std::vector<double>& predicted, const std::vector<double>& real) {
    if (predicted.size() != real.size())
        throw std::invalid_argument("length mismatch: " + std::to_string(predicted.size()) +
                                    " predicted vs " + std::to_string(real.size()) + " real");
    if (predicted.empty()) throw std::invalid_argument("empty series");
    double acc = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (real[i] == 0.0)
            throw std::runtime_error("zero denominator at index " + std::to_string(i));
        const double rel = (predicted[i] - real[i]) / real[i];
        acc += rel * rel;
    }
    return acc / static_cast<double>(predicted.size()) * 100.0;
}

ValidationReport validate(const LoadSeries& predicted, const LoadSeries& real) {
    if (predicted.cadence_minutes() != real.cadence_minutes())
        throw std::invalid_argument("cadence mismatch between predicted and real series");
    if (predicted.start() != real.start())
        throw std::invalid_argument("predicted and real series do not start together");
    if (predicted.size() != real.size())
        throw std::invalid_argument("length mismatch: " + std::to_string(predicted.size()) +
                                    " predicted vs " + std::to_string(real.size()) + " real");

    ValidationReport r;
    r.erms_pct = erms_pct(predicted.values(), real.values());
    r.energy_predicted_kwh = energy_kwh(predicted);
    r.energy_real_kwh = energy_kwh(real);
    r.demand_predicted_kw = max_demand(predicted);
    r.demand_real_kw = max_demand(real);
    if (r.energy_predicted_kwh == 0.0 || r.demand_predicted_kw == 0.0)
        throw std::runtime_error("zero predicted total: percent error undefined");
    r.energy_error_pct = (r.energy_predicted_kwh - r.energy_real_kwh) / r.energy_predicted_kwh * 100.0;
    r.demand_error_pct = (r.demand_predicted_kw - r.demand_real_kw) / r.demand_predicted_kw * 100.0;
    return r;
}

void save_model(const NarxNetwork& net, const std::filesystem::path& path) {
    const NarxConfig& c = net.config();
    nlohmann::json j;
    j["config"] = {{"input_lags", c.input_lags},
                   {"hidden", c.hidden},
                   {"learning_rate", c.learning_rate},
                   {"momentum", c.momentum},
                   {"epochs", c.epochs},
                   {"seed", c.seed},
                   {"demand_scale", c.demand_scale},
                   {"production_scale", c.production_scale}};
    nlohmann::json layers = nlohmann::json::array();
    for (const Layer& layer : net.layers()) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index col = 0; col < layer.weights.cols(); ++col)
                row.push_back(layer.weights(r, col));
            rows.push_back(std::move(row));
        }
        nlohmann::json bias = nlohmann::json::array();
        for (Eigen::Index r = 0; r < layer.bias.size(); ++r) bias.push_back(layer.bias[r]);
        layers.push_back({{"weights", std::move(rows)}, {"bias", std::move(bias)}});
    }
    j["layers"] = std::move(layers);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

NarxNetwork load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    try {
        const nlohmann::json& jc = j.at("config");
        NarxConfig c;
        c.input_lags = jc.at("input_lags").get<int>();
        c.hidden = jc.at("hidden").get<std::vector<int>>();
        c.learning_rate = jc.at("learning_rate").get<double>();
        c.momentum = jc.at("momentum").get<double>();
        c.epochs = jc.at("epochs").get<int>();
        c.seed = jc.at("seed").get<std::uint64_t>();
        c.demand_scale = jc.at("demand_scale").get<double>();
        c.production_scale = jc.at("production_scale").get<std::array<double, 3>>();

        NarxNetwork net(c);
        const nlohmann::json& jl = j.at("layers");
        if (jl.size() != net.layers().size())
            throw std::runtime_error("layer count does not match the configuration");
        for (std::size_t l = 0; l < net.layers().size(); ++l) {
            Layer& layer = net.mutable_layers()[l];
            const auto rows = jl[l].at("weights").get<std::vector<std::vector<double>>>();
            const auto bias = jl[l].at("bias").get<std::vector<double>>();
            if (rows.size() != static_cast<std::size_t>(layer.weights.rows()) ||
                bias.size() != static_cast<std::size_t>(layer.bias.size()))
                throw std::runtime_error("layer shape does not match the configuration");
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].size() != static_cast<std::size_t>(layer.weights.cols()))
                    throw std::runtime_error("layer shape does not match the configuration");
                for (std::size_t col = 0; col < rows[r].size(); ++col)
                    layer.weights(static_cast<Eigen::Index>(r),
                                   static_cast<Eigen::Index>(col)) = rows[r][col];
            }
            for (std::size_t r = 0; r < bias.size(); ++r)
                layer.bias[static_cast<Eigen::Index>(r)] = bias[r];
        }
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

}  // namespace demandkit
