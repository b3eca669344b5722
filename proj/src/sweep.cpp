#include "dengue/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dengue/errors.hpp"

namespace dengue {

void SweepOptions::validate() const {
    if (!(relaxation > 0.0 && relaxation <= 1.0)) throw ValidationError("relaxation", "relaxation: must lie in (0, 1]");
    if (!(min_relaxation > 0.0 && min_relaxation <= relaxation))
        throw ValidationError("min_relaxation", "min_relaxation: must lie in (0, relaxation]");
    if (!(tol > 0.0)) throw ValidationError("tol", "tol: must be > 0");
    if (max_iters < 1) throw ValidationError("max_iters", "max_iters: must be >= 1");
}

Solution evaluate_fixed_control(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                const ControlTrajectory& u) {
    Solution sol;
    sol.states = integrate_forward(p, u, x0, u.grid);
    sol.control = u;
    sol.cost = evaluate_cost(w, sol.states, u);
    sol.converged = true;
    return sol;
}

Solution solve_indirect(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                        const SweepOptions& opts) {
    p.validate();
    w.validate();
    opts.validate();

    ControlTrajectory u = ControlTrajectory::constant(grid, 0.0);
    Solution sol;
    double theta = opts.relaxation;
    double previous_cost = INFINITY;
    double previous_change = INFINITY;
    std::size_t increases = 0;
    std::size_t stalls = 0;

    for (std::size_t iter = 1; iter <= opts.max_iters; ++iter) {
        const StateTrajectory xs = integrate_forward(p, u, x0, grid);
        const AdjointTrajectory ls = integrate_adjoint_backward(p, w, xs, u, grid);
        const double cost = evaluate_cost(w, xs, u);

        double change = 0.0;
        for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
            const double characterized = optimal_control(p, w, xs.values[i], ls.values[i]);
            const double updated = theta * characterized + (1.0 - theta) * u.values[i];
            change = std::max(change, std::abs(updated - u.values[i]));
            u.values[i] = std::clamp(updated, 0.0, 1.0);
        }
        sol.history.push_back({cost, change});
        sol.iterations = iter;

        if (change < opts.tol) {
            sol.converged = true;
            break;
        }

        // A rising cost or an update that stops shrinking both mean the
        // iteration is cycling; damp it.
        increases = cost > previous_cost ? increases + 1 : 0;
        stalls = change >= previous_change ? stalls + 1 : 0;
        if ((increases >= opts.patience || stalls >= opts.patience) && theta > opts.min_relaxation) {
            theta = std::max(opts.min_relaxation, 0.5 * theta);
            increases = 0;
            stalls = 0;
        }
        previous_cost = cost;
        previous_change = change;
    }

    sol.states = integrate_forward(p, u, x0, grid);
    sol.adjoints = integrate_adjoint_backward(p, w, sol.states, u, grid);
    sol.cost = evaluate_cost(w, sol.states, u);
    sol.control = std::move(u);
    return sol;
}

double characterization_residual(const ModelParams& p, const CostWeights& w, const Solution& sol) {
    if (!sol.has_adjoints()) throw std::invalid_argument("characterization_residual: solution carries no adjoints");
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.control.values.size(); ++i) {
        const double u_char = optimal_control(p, w, sol.states.values[i], sol.adjoints.values[i]);
        worst = std::max(worst, std::abs(sol.control.values[i] - u_char));
    }
    return worst;
}

} // namespace dengue
