#include "demandkit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace demandkit {

void StateSpaceModel::validate() const {
    const auto n = A.rows();
    if (n == 0 || A.cols() != n) throw std::invalid_argument("A must be square and non-empty");
    if (B.rows() != n) throw std::invalid_argument("B row count must match state dimension");
    if (C.cols() != n) throw std::invalid_argument("C column count must match state dimension");
    if (D.rows() != C.rows() || D.cols() != B.cols())
        throw std::invalid_argument("D must be outputs x inputs");
    if (x0.size() != n) throw std::invalid_argument("x0 size must match state dimension");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite() || !x0.allFinite())
        throw std::invalid_argument("model entries must be finite");
}

InputSignal::InputSignal(Mode mode, std::vector<std::pair<double, Eigen::VectorXd>> breakpoints)
    : mode_(mode), points_(std::move(breakpoints)) {
    if (points_.empty()) throw std::invalid_argument("input signal needs at least one breakpoint");
    dims_ = static_cast<int>(points_.front().second.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].second.size() != dims_)
            throw std::invalid_argument("input breakpoints must share one dimension");
        if (i > 0 && points_[i].first <= points_[i - 1].first)
            throw std::invalid_argument("input breakpoint times must be strictly increasing");
    }
}

InputSignal InputSignal::constant(Eigen::VectorXd value) {
    return InputSignal(Mode::Hold, {{0.0, std::move(value)}});
}

InputSignal InputSignal::constant(double value) {
    Eigen::VectorXd v(1);
    v << value;
    return constant(std::move(v));
}

InputSignal InputSignal::zero(int dims) {
    return constant(Eigen::VectorXd::Zero(dims));
}

Eigen::VectorXd InputSignal::value(double t) const {
    if (t <= points_.front().first) return points_.front().second;
    if (t >= points_.back().first) return points_.back().second;
    // Last breakpoint at or before t.
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& next = *it;
    const auto& prev = *(it - 1);
    if (mode_ == Mode::Hold) return prev.second;
    const double w = (t - prev.first) / (next.first - prev.first);
    return (1.0 - w) * prev.second + w * next.second;
}

namespace {

using Deriv = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;
using Output = std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>;

SimulationResult run_rk4(const Eigen::VectorXd& x0, const Deriv& f, const Output& out,
                         double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (t_end < dt) throw std::invalid_argument("t_end must be at least dt");

    const auto steps = static_cast<std::size_t>(std::floor(t_end / dt));
    SimulationResult result;
    result.times.reserve(steps + 1);
    result.states.reserve(steps + 1);
    result.outputs.reserve(steps + 1);

    Eigen::VectorXd x = x0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        if (!x.allFinite())
            throw std::runtime_error("state diverged (NaN/Inf) at t = " + std::to_string(t) + " s");
        result.times.push_back(t);
        result.states.push_back(x);
        result.outputs.push_back(out(x, t));
        if (i == steps) break;

        const Eigen::VectorXd k1 = f(x, t);
        const Eigen::VectorXd k2 = f(x + (dt / 2.0) * k1, t + dt / 2.0);
        const Eigen::VectorXd k3 = f(x + (dt / 2.0) * k2, t + dt / 2.0);
        const Eigen::VectorXd k4 = f(x + dt * k3, t + dt);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return result;
}

}  // namespace

SimulationResult simulate(const StateSpaceModel& model, const InputSignal& input, double t_end, double dt) {
    model.validate();
    if (input.dims() != model.inputs())
        throw std::invalid_argument("input signal dimension does not match model inputs");
    auto f = [&](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd {
        return model.A * x + model.B * input.value(t);
    };
    auto out = [&](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd {
        return model.C * x + model.D * input.value(t);
    };
    return run_rk4(model.x0, f, out, t_end, dt);
}

SimulationResult simulate(const NonlinearStateModel& model, const InputSignal& input, double t_end, double dt) {
    if (model.state_dim <= 0) throw std::invalid_argument("state dimension must be positive");
    if (!model.f || !model.h) throw std::invalid_argument("model functions must be set");
    if (model.x0.size() != model.state_dim) throw std::invalid_argument("x0 size must match state dimension");
    auto f = [&](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd {
        Eigen::VectorXd dx = model.f(x, input.value(t), t);
        if (dx.size() != model.state_dim)
            throw std::runtime_error("state derivative has wrong dimension");
        return dx;
    };
    auto out = [&](const Eigen::VectorXd& x, double t) -> Eigen::VectorXd {
        return model.h(x, input.value(t));
    };
    return run_rk4(model.x0, f, out, t_end, dt);
}

StateSpaceModel rlc_model(double r_ohm, double l_henry, double c_farad) {
    if (!(l_henry > 0.0)) throw std::invalid_argument("inductance must be positive");
    if (!(c_farad > 0.0)) throw std::invalid_argument("capacitance must be positive");
    if (r_ohm < 0.0) throw std::invalid_argument("resistance must be non-negative");

    StateSpaceModel m;
    m.A.resize(2, 2);
    m.A << -r_ohm / l_henry, -1.0 / l_henry,
            1.0 / c_farad,    0.0;
    m.B.resize(2, 1);
    m.B << 1.0 / l_henry, 0.0;
    m.C.resize(1, 2);
    m.C << 1.0, 0.0;
    m.D = Eigen::MatrixXd::Zero(1, 1);
    m.x0 = Eigen::VectorXd::Zero(2);
    return m;
}

StateSpaceModel ode_to_state_space(const std::vector<double>& a, double b) {
    const auto n = static_cast<Eigen::Index>(a.size());
    if (n < 1) throw std::invalid_argument("ODE order must be at least 1");

    StateSpaceModel m;
    m.A = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) m.A(i, i + 1) = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) m.A(n - 1, j) = -a[static_cast<std::size_t>(j)];
    m.B = Eigen::MatrixXd::Zero(n, 1);
    m.B(n - 1, 0) = b;
    m.C = Eigen::MatrixXd::Zero(1, n);
    m.C(0, 0) = 1.0;
    m.D = Eigen::MatrixXd::Zero(1, 1);
    m.x0 = Eigen::VectorXd::Zero(n);
    m.validate();
    return m;
}

NonlinearStateModel coupled_second_order(CoupledAccel h1, CoupledAccel h2) {
    if (!h1 || !h2) throw std::invalid_argument("both acceleration functions must be set");
    NonlinearStateModel m;
    m.state_dim = 4;
    m.output_dim = 2;
    m.x0 = Eigen::VectorXd::Zero(4);
    m.f = [h1 = std::move(h1), h2 = std::move(h2)](const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                                   double) -> Eigen::VectorXd {
        const double uin = u.size() > 0 ? u(0) : 0.0;
        Eigen::VectorXd dx(4);
        dx(0) = x(1);
        dx(1) = h1(x(0), x(1), x(2), x(3), uin);
        dx(2) = x(3);
        dx(3) = h2(x(0), x(1), x(2), x(3), uin);
        return dx;
    };
    m.h = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) -> Eigen::VectorXd {
        Eigen::VectorXd y(2);
        y << x(0), x(2);
        return y;
    };
    return m;
}

LoadSeries plant_demand(const PlantModel& plant, double t_end, double dt, int cadence_minutes) {
    if (plant.components.empty()) throw std::invalid_argument("plant needs at least one component");
    if (cadence_minutes != 5 && cadence_minutes != 15)
        throw std::invalid_argument("cadence must be 5 or 15 minutes");

    std::vector<double> total;  // summed kW per simulation step
    for (const auto& component : plant.components) {
        SimulationResult result;
        try {
            if (const auto* linear = std::get_if<StateSpaceModel>(&component.model))
                result = simulate(*linear, component.input, t_end, dt);
            else
                result = simulate(std::get<NonlinearStateModel>(component.model), component.input, t_end, dt);
        } catch (const std::exception& e) {
            throw std::runtime_error("component \"" + component.name + "\": " + e.what());
        }
        if (total.empty()) total.assign(result.steps(), 0.0);
        for (std::size_t i = 0; i < result.steps(); ++i) {
            const double kw = component.power_kw(result.outputs[i]);
            if (!std::isfinite(kw) || kw < 0.0)
                throw std::runtime_error("component \"" + component.name +
                                         "\": power extraction produced a negative or non-finite kW");
            total[i] += kw;
        }
    }

    const double bucket_seconds = cadence_minutes * 60.0;
    const auto buckets = static_cast<std::size_t>(std::floor(t_end / bucket_seconds));
    if (buckets == 0)
        throw std::invalid_argument("simulation span shorter than one output bucket");

    std::vector<double> series(buckets, 0.0);
    std::vector<std::size_t> counts(buckets, 0);
    for (std::size_t i = 0; i < total.size(); ++i) {
        const double t = static_cast<double>(i) * dt;
        const auto bucket = static_cast<std::size_t>(std::floor(t / bucket_seconds));
        if (bucket >= buckets) break;
        series[bucket] += total[i];
        counts[bucket] += 1;
    }
    for (std::size_t k = 0; k < buckets; ++k) series[k] /= static_cast<double>(counts[k]);
    return LoadSeries(plant.start, cadence_minutes, std::move(series));
}

void save_simulation_csv(const SimulationResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const auto n = result.states.empty() ? 0 : result.states.front().size();
    const auto p = result.outputs.empty() ? 0 : result.outputs.front().size();
    out << "t_seconds";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
    for (Eigen::Index i = 1; i <= p; ++i) out << ",y" << i;
    out << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < result.steps(); ++i) {
        out << result.times[i];
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << result.states[i](j);
        for (Eigen::Index j = 0; j < p; ++j) out << ',' << result.outputs[i](j);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace demandkit
