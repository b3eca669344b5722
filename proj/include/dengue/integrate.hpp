#pragma once

#include <cstddef>
#include <vector>

#include "dengue/model.hpp"

namespace dengue {

/// Uniform grid t0 = t_0 < t_1 < ... < t_n = tf.
struct TimeGrid {
    double t0 = 0.0;
    double tf = 365.0;
    std::size_t n_steps = 3650;

    double step() const { return (tf - t0) / static_cast<double>(n_steps); }
    double time(std::size_t node) const;
    std::size_t n_nodes() const { return n_steps + 1; }

    void validate() const;
    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Builds the grid with `h` dividing `tf - t0`; throws ValidationError otherwise.
TimeGrid make_grid(double t0, double tf, double h);

/// One value per grid node.
template <typename T>
struct Trajectory {
    TimeGrid grid;
    std::vector<T> values;
};

using StateTrajectory = Trajectory<EpiState>;
using AdjointTrajectory = Trajectory<AdjointState>;

/// How the control is read between nodes.
enum class ControlHold {
    Linear,           ///< straight line between node values
    PiecewiseConstant ///< value at node i held on [t_i, t_{i+1})
};

/// Control values u(t) in [0, 1] on the nodes of a grid.
struct ControlTrajectory {
    TimeGrid grid;
    std::vector<double> values;
    ControlHold hold = ControlHold::Linear;

    static ControlTrajectory constant(const TimeGrid& grid, double u);

    // Values seen by an integrator inside step i.
    double step_start(std::size_t i) const { return values[i]; }
    double step_mid(std::size_t i) const;
    double step_end(std::size_t i) const;
};

/// Classical RK4 forward from x0. Throws NonFiniteState on blow-up.
StateTrajectory integrate_forward(const ModelParams& p, const ControlTrajectory& u, const EpiState& x0,
                                  const TimeGrid& grid);

/// Classical RK4 backward from the zero terminal co-state. The state between
/// nodes is rebuilt by cubic Hermite interpolation from node values and slopes.
AdjointTrajectory integrate_adjoint_backward(const ModelParams& p, const CostWeights& w, const StateTrajectory& xs,
                                             const ControlTrajectory& u, const TimeGrid& grid);

/// Composite trapezoid of the running cost, step by step.
double evaluate_cost(const CostWeights& w, const StateTrajectory& xs, const ControlTrajectory& u);

} // namespace dengue
