#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "demandkit/forecaster.hpp"

using namespace demandkit;

namespace {

// Brute-force evaluation of the percent figure of merit, written separately
// from the library: mean over i of ((p_i - r_i) / r_i)^2, times 100.
double erms_oracle(const std::vector<double>& p, const std::vector<double>& r) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double rel = (p[i] - r[i]) / r[i];
        total += rel * rel;
    }
    return total / static_cast<double>(p.size()) * 100.0;
}

NarxConfig small_config() {
    NarxConfig c;
    c.input_lags = 2;
    c.hidden = {2};
    c.demand_scale = 1.0;  // pass targets already scaled
    c.seed = 123;
    return c;
}

void zero_weights(NarxNetwork& net) {
    for (Layer& layer : net.mutable_layers()) {
        layer.weights.setZero();
        layer.bias.setZero();
    }
}

ProductionSeries constant_production(Timestamp start, std::size_t days, double anodes = 35.0,
                                     double acid = 110.0, double oxygen = 50.0) {
    return ProductionSeries(start, std::vector<double>(days, anodes),
                            std::vector<double>(days, acid), std::vector<double>(days, oxygen));
}

FeatureVector random_features(std::mt19937_64& rng, int lags) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    FeatureVector f;
    for (auto& v : f.calendar) v = unit(rng);
    for (auto& v : f.production) v = unit(rng);
    f.demand_lags.resize(static_cast<std::size_t>(lags));
    for (auto& v : f.demand_lags) v = unit(rng);
    return f;
}

}  // namespace

TEST_CASE("erms matches hand evaluations") {
    CHECK(erms_pct({100.0, 200.0}, {100.0, 200.0}) == 0.0);
    CHECK(erms_pct({110.0, 190.0}, {100.0, 200.0}) == doctest::Approx(0.625).epsilon(1e-12));

    // A uniform 1% relative error scores (0.01)^2 * 100 = 0.01.
    std::vector<double> r(50), p(50);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = 1000.0 + static_cast<double>(i);
        p[i] = 1.01 * r[i];
    }
    CHECK(erms_pct(p, r) == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("erms equals the brute-force oracle on random pairs") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> val(1.0, 60000.0);
    std::uniform_int_distribution<int> len(1, 300);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> p(static_cast<std::size_t>(len(rng))), r(p.size());
        for (auto& x : p) x = val(rng);
        for (auto& x : r) x = val(rng);
        const double oracle = erms_oracle(p, r);
        CHECK(erms_pct(p, r) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("erms rejects degenerate inputs") {
    CHECK_THROWS_WITH_AS(erms_pct({1.0}, {1.0, 2.0}), doctest::Contains("length mismatch"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(erms_pct({}, {}), "empty series", std::invalid_argument);
    CHECK_THROWS_WITH_AS(erms_pct({1.0, 2.0, 3.0}, {1.0, 0.0, 3.0}),
                         "zero denominator at index 1", std::runtime_error);
}

TEST_CASE("feature encoding hits the documented corners") {
    NarxConfig config = small_config();
    config.demand_scale = 40000.0;
    config.production_scale = {50.0, 150.0, 80.0};

    // 2007-01-01T00:00 was a Monday: every calendar slot at its minimum.
    const auto p_jan = constant_production(Timestamp::civil(2007, 1, 1), 1);
    const FeatureVector lo =
        build_features(config, Timestamp::civil(2007, 1, 1), {10000.0, 20000.0}, p_jan);
    for (double v : lo.calendar) CHECK(v == 0.0);
    CHECK(lo.demand_lags[0] == doctest::Approx(0.25));
    CHECK(lo.demand_lags[1] == doctest::Approx(0.5));

    // 2007-12-30 (a Sunday, day 30, 23:45): every calendar slot at 1.
    const auto p_dec = constant_production(Timestamp::civil(2007, 12, 30), 1);
    const FeatureVector hi =
        build_features(config, Timestamp::civil(2007, 12, 30, 23, 45), {0.0, 0.0}, p_dec);
    for (double v : hi.calendar) CHECK(v == 1.0);

    // Zero production day maps to a zero production block.
    const auto p_zero = ProductionSeries(Timestamp::civil(2007, 1, 1), {0.0}, {0.0}, {0.0});
    const FeatureVector z =
        build_features(config, Timestamp::civil(2007, 1, 1, 8, 0), {1.0, 1.0}, p_zero);
    for (double v : z.production) CHECK(v == 0.0);

    // Lags beyond the scale clamp to 1; the production block scales per channel.
    const FeatureVector c =
        build_features(config, Timestamp::civil(2007, 1, 1, 8, 0), {90000.0, 40000.0}, p_jan);
    CHECK(c.demand_lags[0] == 1.0);
    CHECK(c.demand_lags[1] == 1.0);
    CHECK(c.production[0] == doctest::Approx(35.0 / 50.0));
    CHECK(c.production[1] == doctest::Approx(110.0 / 150.0));
    CHECK(c.production[2] == doctest::Approx(50.0 / 80.0));

    CHECK_THROWS_WITH_AS(
        build_features(config, Timestamp::civil(2007, 1, 1), {1.0, 2.0, 3.0}, p_jan),
        doctest::Contains("demand lags"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        build_features(config, Timestamp::civil(2007, 1, 2), {1.0, 2.0}, p_jan),
        "production does not cover 2007-01-02", std::invalid_argument);
}

TEST_CASE("production values hold constant across a day's quarter-hours") {
    NarxConfig config = small_config();
    config.production_scale = {50.0, 150.0, 80.0};
    const auto plan = ProductionSeries(Timestamp::civil(2007, 10, 1), {30.0, 40.0},
                                       {100.0, 120.0}, {45.0, 55.0});
    const FeatureVector morning =
        build_features(config, Timestamp::civil(2007, 10, 1, 0, 15), {1.0, 1.0}, plan);
    const FeatureVector night =
        build_features(config, Timestamp::civil(2007, 10, 1, 23, 45), {1.0, 1.0}, plan);
    CHECK(morning.production == night.production);
    const FeatureVector next_day =
        build_features(config, Timestamp::civil(2007, 10, 2, 0, 0), {1.0, 1.0}, plan);
    CHECK(next_day.production != morning.production);
}

TEST_CASE("feature vector concatenates in declaration order") {
    FeatureVector f;
    f.calendar = {0.1, 0.2, 0.3, 0.4, 0.5};
    f.production = {0.6, 0.7, 0.8};
    f.demand_lags = {0.9, 1.0};
    const Eigen::VectorXd x = f.to_vector();
    REQUIRE(x.size() == 10);
    CHECK(x[0] == 0.1);
    CHECK(x[4] == 0.5);
    CHECK(x[5] == 0.6);
    CHECK(x[7] == 0.8);
    CHECK(x[8] == 0.9);
    CHECK(x[9] == 1.0);
}

TEST_CASE("network construction validates its configuration") {
    auto bad = [](auto mutate) {
        NarxConfig c = small_config();
        mutate(c);
        CHECK_THROWS_AS(NarxNetwork{c}, std::invalid_argument);
    };
    bad([](NarxConfig& c) { c.input_lags = 0; });
    bad([](NarxConfig& c) { c.hidden = {}; });
    bad([](NarxConfig& c) { c.hidden = {0}; });
    bad([](NarxConfig& c) { c.learning_rate = 0.0; });
    bad([](NarxConfig& c) { c.momentum = 1.0; });
    bad([](NarxConfig& c) { c.momentum = -0.1; });
    bad([](NarxConfig& c) { c.epochs = 0; });
    bad([](NarxConfig& c) { c.demand_scale = 0.0; });
    bad([](NarxConfig& c) { c.production_scale = {1.0, 0.0, 1.0}; });
}

TEST_CASE("weight initialization is seeded and bounded") {
    NarxConfig config = small_config();
    config.hidden = {16};
    const NarxNetwork a(config), b(config);
    config.seed = 124;
    const NarxNetwork c(config);

    REQUIRE(a.layers().size() == 2);
    CHECK(a.layers()[0].weights == b.layers()[0].weights);
    CHECK(a.layers()[1].weights == b.layers()[1].weights);
    CHECK(a.layers()[0].weights != c.layers()[0].weights);

    const double bound0 = 0.5 / std::sqrt(10.0);  // fan-in 8 + 2 lags
    CHECK(a.layers()[0].weights.cwiseAbs().maxCoeff() <= bound0);
    CHECK(a.layers()[0].bias.cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.layers()[1].bias.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forward pass follows tanh-then-linear structure") {
    NarxConfig config = small_config();
    NarxNetwork net(config);
    zero_weights(net);

    std::mt19937_64 rng(43);
    const FeatureVector f = random_features(rng, 2);
    CHECK(net.forward(f) == 0.0);

    net.mutable_layers().back().bias[0] = 0.7;
    CHECK(net.forward(f) == 0.7);

    // One hidden weight on a known input: out = w_out * tanh(w_in * x).
    net.mutable_layers()[0].weights(0, 0) = 0.5;
    net.mutable_layers()[1].weights(0, 0) = 2.0;
    const double expected = 2.0 * std::tanh(0.5 * f.calendar[0]) + 0.7;
    CHECK(net.forward(f) == doctest::Approx(expected).epsilon(1e-15));

    FeatureVector wrong = f;
    wrong.demand_lags.push_back(0.5);
    CHECK_THROWS_AS(net.forward(wrong), std::invalid_argument);
}

TEST_CASE("forward output is bounded by the output layer's mass") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        NarxConfig config = small_config();
        config.hidden = {8};
        config.seed = rng();
        const NarxNetwork net(config);
        const Layer& out = net.layers().back();
        const double bound = out.weights.cwiseAbs().sum() + std::abs(out.bias[0]);
        const FeatureVector f = random_features(rng, config.input_lags);
        CHECK(std::abs(net.forward(f)) <= bound + 1e-12);
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    std::mt19937_64 rng(53);
    NarxConfig config = small_config();
    config.hidden = {2};
    config.seed = 777;
    NarxNetwork net(config);

    std::vector<FeatureVector> inputs;
    std::vector<double> targets;
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        inputs.push_back(random_features(rng, config.input_lags));
        targets.push_back(t(rng));
    }

    std::vector<Layer> grads;
    net.mse_and_gradients(inputs, targets, &grads);

    const double h = 1e-5;
    std::uniform_int_distribution<std::size_t> pick_layer(0, net.layers().size() - 1);
    for (int probe = 0; probe < 100; ++probe) {
        const std::size_t l = pick_layer(rng);
        const auto rows = static_cast<std::size_t>(net.layers()[l].weights.rows());
        const auto cols = static_cast<std::size_t>(net.layers()[l].weights.cols());
        // Column index == cols means "probe the bias for this row".
        const std::size_t r = std::uniform_int_distribution<std::size_t>(0, rows - 1)(rng);
        const std::size_t c = std::uniform_int_distribution<std::size_t>(0, cols)(rng);

        auto nudge = [&](double delta) {
            NarxNetwork copy = net;
            if (c == cols)
                copy.mutable_layers()[l].bias[static_cast<Eigen::Index>(r)] += delta;
            else
                copy.mutable_layers()[l].weights(static_cast<Eigen::Index>(r),
                                                 static_cast<Eigen::Index>(c)) += delta;
            return copy.mse_and_gradients(inputs, targets, nullptr);
        };
        const double numeric = (nudge(h) - nudge(-h)) / (2.0 * h);
        const double analytic =
            c == cols ? grads[l].bias[static_cast<Eigen::Index>(r)]
                      : grads[l].weights(static_cast<Eigen::Index>(r),
                                         static_cast<Eigen::Index>(c));
        const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        CHECK(std::abs(analytic - numeric) / denom <= 1e-4);
    }
}

TEST_CASE("training learns a constant series to near-zero error") {
    const Timestamp start = Timestamp::civil(2007, 10, 1);
    const LoadSeries demand(start, 15, std::vector<double>(3 * 96, 20000.0));
    const auto production = constant_production(start, 3);

    NarxConfig config;
    config.demand_scale = 25000.0;
    config.learning_rate = 0.05;  // a flat target tolerates aggressive steps
    config.seed = 42;
    NarxNetwork net(config);
    const std::vector<double> curve = net.train(demand, production);

    REQUIRE(curve.size() == static_cast<std::size_t>(config.epochs) + 1);
    CHECK(curve.back() < 1e-6);

    // Epoch 0 is the untrained network's error, checked independently.
    NarxNetwork untrained(config);
    const TrainingSet set = make_training_set(config, demand, production);
    CHECK(curve.front() == untrained.mse_and_gradients(set.inputs, set.targets_kw, nullptr));
}

TEST_CASE("training curve is monotone-ish and bit-reproducible") {
    const Timestamp start = Timestamp::civil(2007, 10, 1);
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> val(15000.0, 25000.0);
    std::vector<double> values(2 * 96);
    for (auto& v : values) v = val(rng);
    const LoadSeries demand(start, 15, values);
    const auto production = constant_production(start, 2);

    NarxConfig config;
    config.hidden = {4};
    config.epochs = 50;
    config.demand_scale = 30000.0;

    NarxNetwork a(config), b(config);
    const auto curve_a = a.train(demand, production);
    const auto curve_b = b.train(demand, production);
    CHECK(curve_a == curve_b);  // element-wise bit equality
    for (std::size_t l = 0; l < a.layers().size(); ++l) {
        CHECK(a.layers()[l].weights == b.layers()[l].weights);
        CHECK(a.layers()[l].bias == b.layers()[l].bias);
    }
    CHECK(curve_a.back() < curve_a.front());

    config.seed = 43;
    NarxNetwork c(config);
    CHECK(c.train(demand, production) != curve_a);
}

TEST_CASE("training recovers data generated by a network of the same shape") {
    NarxConfig config;
    config.hidden = {4};
    config.demand_scale = 40000.0;
    config.seed = 99;
    NarxNetwork teacher(config);
    teacher.mutable_layers().back().bias[0] = 0.7;  // keep outputs positive

    const Timestamp start = Timestamp::civil(2007, 10, 1);
    const auto plan = constant_production(start, 7);
    const LoadSeries prior(start.plus_days(-1), 15, std::vector<double>(96, 28000.0));
    const LoadSeries demand = teacher.predict_month(prior, plan);

    config.seed = 100;  // student starts elsewhere
    NarxNetwork student(config);
    const auto curve = student.train(demand, plan);
    CHECK(curve.front() / curve.back() >= 100.0);
}

TEST_CASE("training input contract") {
    const Timestamp start = Timestamp::civil(2007, 10, 1);
    const auto production = constant_production(start, 1);
    NarxConfig config = small_config();
    config.demand_scale = 1000.0;
    NarxNetwork net(config);

    const LoadSeries five_min(start, 5, std::vector<double>(96, 100.0));
    CHECK_THROWS_WITH_AS(net.train(five_min, production), doctest::Contains("15-minute"),
                         std::invalid_argument);

    const LoadSeries too_short(start, 15, {100.0, 100.0});
    CHECK_THROWS_WITH_AS(net.train(too_short, production), doctest::Contains("lag window"),
                         std::invalid_argument);
}

TEST_CASE("diverging training reports the epoch") {
    const Timestamp start = Timestamp::civil(2007, 10, 1);
    std::vector<double> values(96, 20000.0);
    values[40] = 60000.0;
    const LoadSeries demand(start, 15, values);
    const auto production = constant_production(start, 1);

    NarxConfig config;
    config.hidden = {4};
    config.learning_rate = 1e6;  // guaranteed blow-up
    config.epochs = 50;
    config.demand_scale = 1000.0;
    NarxNetwork net(config);
    CHECK_THROWS_WITH_AS(net.train(demand, production), doctest::Contains("divergence at epoch"),
                         std::runtime_error);
}

TEST_CASE("closed-loop prediction spans the plan") {
    NarxConfig config;
    config.hidden = {2};
    config.demand_scale = 40000.0;
    NarxNetwork net(config);
    zero_weights(net);
    net.mutable_layers().back().bias[0] = 0.5;

    const Timestamp oct = Timestamp::civil(2007, 10, 1);
    const LoadSeries prior(Timestamp::civil(2007, 9, 30), 15,
                           std::vector<double>(96, 30000.0));

    const LoadSeries month31 = net.predict_month(prior, constant_production(oct, 31));
    CHECK(month31.size() == 2976);
    CHECK(month31.start() == oct);
    for (double v : month31.values()) CHECK(v == 20000.0);  // constant net output

    const LoadSeries month30 = net.predict_month(prior, constant_production(oct, 30));
    CHECK(month30.size() == 2880);
}

TEST_CASE("closed-loop prediction validates its seed series") {
    NarxConfig config = small_config();
    config.demand_scale = 1000.0;
    NarxNetwork net(config);
    const Timestamp oct = Timestamp::civil(2007, 10, 1);
    const auto plan = constant_production(oct, 1);

    const LoadSeries five(Timestamp::civil(2007, 9, 30), 5, std::vector<double>(288, 100.0));
    CHECK_THROWS_WITH_AS(net.predict_month(five, plan), doctest::Contains("15-minute"),
                         std::invalid_argument);

    const LoadSeries short_prior(oct.plus_minutes(-15), 15, {100.0});
    CHECK_THROWS_WITH_AS(net.predict_month(short_prior, plan), doctest::Contains("lag window"),
                         std::invalid_argument);

    const LoadSeries misaligned(Timestamp::civil(2007, 9, 30), 15,
                                std::vector<double>(95, 100.0));
    CHECK_THROWS_WITH_AS(net.predict_month(misaligned, plan),
                         doctest::Contains("where the plan starts"), std::invalid_argument);
}

TEST_CASE("closed-loop outputs are non-negative for arbitrary networks") {
    std::mt19937_64 rng(61);
    const Timestamp oct = Timestamp::civil(2007, 10, 1);
    const auto plan = constant_production(oct, 2);
    for (int trial = 0; trial < 20; ++trial) {
        NarxConfig config;
        config.hidden = {3};
        config.seed = rng();
        config.demand_scale = 40000.0;
        NarxNetwork net(config);
        // Exaggerate the output layer so raw outputs swing negative.
        net.mutable_layers().back().weights *= 50.0;
        net.mutable_layers().back().bias[0] = -0.2;
        const LoadSeries out =
            net.predict_month(LoadSeries(oct.plus_days(-1), 15,
                                         std::vector<double>(96, 30000.0)),
                              plan);
        for (double v : out.values()) CHECK(v >= 0.0);
    }
}

TEST_CASE("validation reproduces the reference aggregate arithmetic") {
    // Series engineered to the published monthly aggregates: energies of
    // 29,239,640 vs 28,336,177 kWh and maxima of 42,089 vs 42,569 kW.
    const Timestamp oct = Timestamp::civil(2007, 10, 1);
    auto engineered = [&](double energy_kwh_total, double max_kw) {
        const std::size_t n = 2976;
        const double rest = (4.0 * energy_kwh_total - max_kw) / static_cast<double>(n - 1);
        std::vector<double> v(n, rest);
        v[n / 2] = max_kw;
        return LoadSeries(oct, 15, v);
    };
    const LoadSeries predicted = engineered(29239640.0, 42089.0);
    const LoadSeries real = engineered(28336177.0, 42569.0);

    const ValidationReport r = validate(predicted, real);
    CHECK(r.energy_predicted_kwh == doctest::Approx(29239640.0).epsilon(1e-9));
    CHECK(r.energy_real_kwh == doctest::Approx(28336177.0).epsilon(1e-9));
    CHECK(r.demand_predicted_kw == 42089.0);
    CHECK(r.demand_real_kw == 42569.0);
    CHECK(r.energy_error_pct == doctest::Approx(3.09).epsilon(0.002));
    CHECK(r.demand_error_pct == doctest::Approx(-1.14).epsilon(0.005));
    CHECK(r.erms_pct > 0.0);
}

TEST_CASE("validation of identical series is all zeros") {
    const LoadSeries s(Timestamp::civil(2007, 10, 1), 15, {100.0, 200.0, 300.0});
    const ValidationReport r = validate(s, s);
    CHECK(r.erms_pct == 0.0);
    CHECK(r.energy_error_pct == 0.0);
    CHECK(r.demand_error_pct == 0.0);
}

TEST_CASE("validation percent errors use the prediction as reference") {
    const Timestamp oct = Timestamp::civil(2007, 10, 1);
    const LoadSeries real(oct, 15, {100.0, 100.0});
    const LoadSeries doubled(oct, 15, {200.0, 200.0});
    // Doubling the prediction halves the reference: +50% against itself.
    CHECK(validate(doubled, real).energy_error_pct == doctest::Approx(50.0));

    const LoadSeries other(oct, 15, {100.0, 100.0, 100.0});
    CHECK_THROWS_WITH_AS(validate(real, other), doctest::Contains("length mismatch"),
                         std::invalid_argument);
    const LoadSeries five(oct, 5, {100.0, 100.0});
    CHECK_THROWS_WITH_AS(validate(five, real), doctest::Contains("cadence"),
                         std::invalid_argument);
}

TEST_CASE("model files round-trip bit-exactly") {
    NarxConfig config;
    config.input_lags = 3;
    config.hidden = {5, 3};
    config.demand_scale = 41234.56789;
    config.production_scale = {51.3, 141.7, 77.7};
    config.seed = 2024;
    NarxNetwork net(config);
    net.mutable_layers()[0].weights(0, 0) = 0.12345678901234567;

    const auto dir = std::filesystem::temp_directory_path() / "demandkit_model_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "model.json";
    save_model(net, path);
    const NarxNetwork loaded = load_model(path);

    CHECK(loaded.config().input_lags == 3);
    CHECK(loaded.config().hidden == std::vector<int>{5, 3});
    CHECK(loaded.config().demand_scale == config.demand_scale);
    CHECK(loaded.config().production_scale == config.production_scale);
    REQUIRE(loaded.layers().size() == net.layers().size());
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        CHECK(loaded.layers()[l].weights == net.layers()[l].weights);
        CHECK(loaded.layers()[l].bias == net.layers()[l].bias);
    }

    std::mt19937_64 rng(67);
    const FeatureVector f = random_features(rng, 3);
    CHECK(loaded.forward(f) == net.forward(f));

    CHECK_THROWS_AS(load_model(dir / "nope.json"), std::runtime_error);
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK_THROWS_AS(load_model(dir / "bad.json"), std::runtime_error);

    // A weight grid inconsistent with the declared shape is rejected.
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    const auto pos = text.find("\"input_lags\": 3");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 15, "\"input_lags\": 4");
    std::ofstream(dir / "mismatch.json") << text;
    CHECK_THROWS_WITH_AS(load_model(dir / "mismatch.json"), doctest::Contains("shape"),
                         std::runtime_error);
}

TEST_CASE("training set aligns lags most-recent-first") {
    const Timestamp start = Timestamp::civil(2007, 10, 1);
    const LoadSeries demand(start, 15, {10.0, 20.0, 30.0, 40.0, 50.0, 60.0});
    const auto production = constant_production(start, 1);
    NarxConfig config = small_config();
    config.demand_scale = 100.0;

    const TrainingSet set = make_training_set(config, demand, production);
    REQUIRE(set.inputs.size() == 4);
    CHECK(set.targets_kw == std::vector<double>{30.0, 40.0, 50.0, 60.0});
    // For the first sample (target 30 at index 2): lag0 = 20, lag1 = 10.
    CHECK(set.inputs[0].demand_lags[0] == doctest::Approx(0.2));
    CHECK(set.inputs[0].demand_lags[1] == doctest::Approx(0.1));
    // Matches build_features at the same instant.
    const FeatureVector expected =
        build_features(config, demand.timestamp_at(2), {20.0, 10.0}, production);
    CHECK(set.inputs[0].to_vector() == expected.to_vector());
}
