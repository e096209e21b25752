#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "demandkit/timeseries.hpp"

namespace demandkit {

/// Linear plant component: x' = Ax + Bu, y = Cx + Du from initial state x0.
struct StateSpaceModel {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;
    Eigen::VectorXd x0;

    int states() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }

    /// Throws if the matrix dimensions are mutually inconsistent or any
    /// entry is non-finite.
    void validate() const;
};

/// General component: x' = f(x, u, t), y = h(x, u).
struct NonlinearStateModel {
    int state_dim = 0;
    int output_dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u, double t)> f;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& x, const Eigen::VectorXd& u)> h;
    Eigen::VectorXd x0;
};

/// Piecewise input signal defined by (time, value) breakpoints. Hold mode
/// keeps the last breakpoint value; Linear interpolates between breakpoints
/// and holds beyond the ends.
class InputSignal {
public:
    enum class Mode { Hold, Linear };

    InputSignal() = default;
    InputSignal(Mode mode, std::vector<std::pair<double, Eigen::VectorXd>> breakpoints);

    static InputSignal constant(Eigen::VectorXd value);
    static InputSignal constant(double value);
    static InputSignal zero(int dims);

    Eigen::VectorXd value(double t) const;
    int dims() const { return dims_; }

private:
    Mode mode_ = Mode::Hold;
    std::vector<std::pair<double, Eigen::VectorXd>> points_;
    int dims_ = 0;
};

struct SimulationResult {
    std::vector<double> times;                 // strictly increasing, starts at 0
    std::vector<Eigen::VectorXd> states;
    std::vector<Eigen::VectorXd> outputs;

    std::size_t steps() const { return times.size(); }
};

/// Classical fixed-step RK4 from t = 0 to t_end. Result has
/// floor(t_end / dt) + 1 points including the initial state. Aborts with
/// the failure time if the state goes non-finite.
SimulationResult simulate(const StateSpaceModel& model, const InputSignal& input, double t_end, double dt);
SimulationResult simulate(const NonlinearStateModel& model, const InputSignal& input, double t_end, double dt);

/// Series RLC circuit driven by a voltage source: states are inductor
/// current and capacitor voltage, output is the current.
StateSpaceModel rlc_model(double r_ohm, double l_henry, double c_farad);

/// y^(n) + a[n-1] y^(n-1) + ... + a[0] y = b u in companion form with
/// x1 = y, x2 = y', ..., xn = y^(n-1); output y = x1.
StateSpaceModel ode_to_state_space(const std::vector<double>& a, double b);

using CoupledAccel = std::function<double(double y1, double dy1, double y2, double dy2, double u)>;

/// Two coupled second-order equations y1'' = h1(...), y2'' = h2(...) as a
/// 4-state model with outputs (y1, y2).
NonlinearStateModel coupled_second_order(CoupledAccel h1, CoupledAccel h2);

/// One plant load: a component model, its input signal, and the map from
/// the component's output vector to electrical power in kW.
struct PlantComponent {
    std::string name;
    std::variant<StateSpaceModel, NonlinearStateModel> model;
    InputSignal input;
    std::function<double(const Eigen::VectorXd& output)> power_kw;
};

struct PlantModel {
    std::vector<PlantComponent> components;
    Timestamp start;  // timestamp of the resulting series
};

/// Simulates every component, sums the extracted kW draws, and averages
/// them into 5- or 15-minute buckets.
LoadSeries plant_demand(const PlantModel& plant, double t_end, double dt, int cadence_minutes);

/// CSV export: header `t_seconds,x1,...,xn,y1,...,yp`.
void save_simulation_csv(const SimulationResult& result, const std::filesystem::path& path);

}  // namespace demandkit
