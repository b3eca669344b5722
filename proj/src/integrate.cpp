#include "dengue/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

void check_same_grid(const TimeGrid& expected, const TimeGrid& actual, const char* what) {
    if (!(expected == actual)) throw std::invalid_argument(std::string(what) + " is defined on a different grid");
}

[[noreturn]] void blow_up(const char* pass, std::size_t node, double t) {
    std::ostringstream os;
    os << pass << ": non-finite value at node " << node << " (t = " << t << ")";
    throw NonFiniteState(os.str());
}

EpiState hermite_midpoint(const EpiState& x0, const EpiState& f0, const EpiState& x1, const EpiState& f1, double h) {
    return 0.5 * (x0 + x1) + (h / 8.0) * (f0 - f1);
}

} // namespace

double TimeGrid::time(std::size_t node) const {
    if (node == n_steps) return tf;
    return t0 + static_cast<double>(node) * step();
}

void TimeGrid::validate() const {
    if (!(std::isfinite(t0) && std::isfinite(tf) && tf > t0)) throw ValidationError("t_f", "t_f: must exceed t0");
    if (n_steps < 1) throw ValidationError("h", "h: grid needs at least one step");
}

TimeGrid make_grid(double t0, double tf, double h) {
    if (!(std::isfinite(h) && h > 0.0)) throw ValidationError("h", "h: must be > 0");
    if (!(std::isfinite(tf) && tf > t0)) throw ValidationError("t_f", "t_f: must exceed t0");
    const double ratio = (tf - t0) / h;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw ValidationError("h", "h: must divide the horizon evenly");
    TimeGrid grid{t0, tf, static_cast<std::size_t>(rounded)};
    grid.validate();
    return grid;
}

ControlTrajectory ControlTrajectory::constant(const TimeGrid& grid, double u) {
    return ControlTrajectory{grid, std::vector<double>(grid.n_nodes(), u), ControlHold::Linear};
}

double ControlTrajectory::step_mid(std::size_t i) const {
    if (hold == ControlHold::PiecewiseConstant) return values[i];
    return 0.5 * (values[i] + values[i + 1]);
}

double ControlTrajectory::step_end(std::size_t i) const {
    if (hold == ControlHold::PiecewiseConstant) return values[i];
    return values[i + 1];
}

StateTrajectory integrate_forward(const ModelParams& p, const ControlTrajectory& u, const EpiState& x0,
                                  const TimeGrid& grid) {
    grid.validate();
    check_same_grid(grid, u.grid, "control");
    if (u.values.size() != grid.n_nodes()) throw std::invalid_argument("control: wrong number of nodes");
    if (!all_finite(x0)) blow_up("integrate_forward", 0, grid.t0);

    const double h = grid.step();
    StateTrajectory out{grid, {}};
    out.values.reserve(grid.n_nodes());
    out.values.push_back(x0);

    EpiState x = x0;
    for (std::size_t i = 0; i < grid.n_steps; ++i) {
        const double u0 = u.step_start(i);
        const double um = u.step_mid(i);
        const double u1 = u.step_end(i);
        const EpiState k1 = state_rhs(p, x, u0);
        const EpiState k2 = state_rhs(p, x + (0.5 * h) * k1, um);
        const EpiState k3 = state_rhs(p, x + (0.5 * h) * k2, um);
        const EpiState k4 = state_rhs(p, x + h * k3, u1);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!all_finite(x)) blow_up("integrate_forward", i + 1, grid.time(i + 1));
        out.values.push_back(x);
    }
    return out;
}

AdjointTrajectory integrate_adjoint_backward(const ModelParams& p, const CostWeights& w, const StateTrajectory& xs,
                                             const ControlTrajectory& u, const TimeGrid& grid) {
    grid.validate();
    check_same_grid(grid, xs.grid, "state trajectory");
    check_same_grid(grid, u.grid, "control");
    if (xs.values.size() != grid.n_nodes() || u.values.size() != grid.n_nodes())
        throw std::invalid_argument("integrate_adjoint_backward: wrong number of nodes");

    const double h = grid.step();
    AdjointTrajectory out{grid, std::vector<AdjointState>(grid.n_nodes())};

    AdjointState l{}; // transversality
    out.values[grid.n_steps] = l;
    for (std::size_t i = grid.n_steps; i-- > 0;) {
        const double u0 = u.step_start(i);
        const double um = u.step_mid(i);
        const double u1 = u.step_end(i);
        const EpiState& x0 = xs.values[i];
        const EpiState& x1 = xs.values[i + 1];
        const EpiState xm = hermite_midpoint(x0, state_rhs(p, x0, u0), x1, state_rhs(p, x1, u1), h);

        // Stepping from t_{i+1} to t_i, i.e. with step -h.
        const AdjointState k1 = adjoint_rhs(p, w, x1, l, u1);
        const AdjointState k2 = adjoint_rhs(p, w, xm, l + (-0.5 * h) * k1, um);
        const AdjointState k3 = adjoint_rhs(p, w, xm, l + (-0.5 * h) * k2, um);
        const AdjointState k4 = adjoint_rhs(p, w, x0, l + (-h) * k3, u0);
        l += (-h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!all_finite(l)) blow_up("integrate_adjoint_backward", i, grid.time(i));
        out.values[i] = l;
    }
    return out;
}

double evaluate_cost(const CostWeights& w, const StateTrajectory& xs, const ControlTrajectory& u) {
    check_same_grid(xs.grid, u.grid, "control");
    const TimeGrid& grid = xs.grid;
    if (xs.values.size() != grid.n_nodes() || u.values.size() != grid.n_nodes())
        throw std::invalid_argument("evaluate_cost: wrong number of nodes");

    const double h = grid.step();
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_steps; ++i) {
        total += 0.5 * h *
                 (cost_integrand(w, xs.values[i], u.step_start(i)) + cost_integrand(w, xs.values[i + 1], u.step_end(i)));
    }
    return total;
}

} // namespace dengue
