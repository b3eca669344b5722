#include "dengue/direct.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

std::size_t steps_per_interval(const TimeGrid& grid, std::size_t n_intervals) {
    if (n_intervals == 0 || grid.n_steps % n_intervals != 0)
        throw ValidationError("n_intervals", "n_intervals: must divide the number of integration steps");
    return grid.n_steps / n_intervals;
}

PiecewiseControl project(std::vector<double> levels) {
    for (auto& v : levels) v = std::clamp(v, 0.0, 1.0);
    return PiecewiseControl{std::move(levels)};
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

} // namespace

void DirectOptions::validate(const TimeGrid& grid) const {
    steps_per_interval(grid, n_intervals);
    if (!(grad_tol > 0.0)) throw ValidationError("grad_tol", "grad_tol: must be > 0");
    if (max_iters < 1) throw ValidationError("max_iters", "max_iters: must be >= 1");
    if (!(initial_step > 0.0)) throw ValidationError("initial_step", "initial_step: must be > 0");
    if (!(ls_shrink > 0.0 && ls_shrink < 1.0)) throw ValidationError("ls_shrink", "ls_shrink: must lie in (0, 1)");
    if (!(armijo > 0.0 && armijo < 1.0)) throw ValidationError("armijo", "armijo: must lie in (0, 1)");
}

ControlTrajectory PiecewiseControl::sample(const TimeGrid& grid) const {
    const std::size_t per = steps_per_interval(grid, levels.size());
    ControlTrajectory u{grid, std::vector<double>(grid.n_nodes()), ControlHold::PiecewiseConstant};
    for (std::size_t i = 0; i < grid.n_steps; ++i) u.values[i] = levels[i / per];
    u.values[grid.n_steps] = levels.back();
    return u;
}

CostAndGradient cost_and_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                  const TimeGrid& grid, const PiecewiseControl& u) {
    const std::size_t per = steps_per_interval(grid, u.levels.size());
    const ControlTrajectory control = u.sample(grid);
    const StateTrajectory xs = integrate_forward(p, control, x0, grid);
    const AdjointTrajectory ls = integrate_adjoint_backward(p, w, xs, control, grid);

    const double h = grid.step();
    CostAndGradient out{evaluate_cost(w, xs, control), std::vector<double>(u.levels.size(), 0.0)};
    for (std::size_t i = 0; i < grid.n_steps; ++i) {
        const std::size_t j = i / per;
        const double uj = u.levels[j];
        out.gradient[j] += 0.5 * h *
                           (hamiltonian_du(p, w, xs.values[i], ls.values[i], uj) +
                            hamiltonian_du(p, w, xs.values[i + 1], ls.values[i + 1], uj));
    }
    return out;
}

std::vector<double> reduced_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                     const TimeGrid& grid, const PiecewiseControl& u) {
    return cost_and_gradient(p, w, x0, grid, u).gradient;
}

double parameterized_cost(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                          const PiecewiseControl& u) {
    const ControlTrajectory control = u.sample(grid);
    return evaluate_cost(w, integrate_forward(p, control, x0, grid), control);
}

std::vector<double> projected_gradient(const std::vector<double>& levels, const std::vector<double>& gradient) {
    std::vector<double> pg(gradient);
    for (std::size_t j = 0; j < pg.size(); ++j) {
        if ((levels[j] <= 0.0 && pg[j] > 0.0) || (levels[j] >= 1.0 && pg[j] < 0.0)) pg[j] = 0.0;
    }
    return pg;
}

Solution solve_direct(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                      const DirectOptions& opts) {
    p.validate();
    w.validate();
    opts.validate(grid);

    PiecewiseControl u{std::vector<double>(opts.n_intervals, 0.0)};
    CostAndGradient current = cost_and_gradient(p, w, x0, grid, u);

    Solution sol;
    sol.history.push_back({current.cost, 0.0});

    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        if (max_abs(projected_gradient(u.levels, current.gradient)) < opts.grad_tol) {
            sol.converged = true;
            break;
        }

        bool accepted = false;
        for (double alpha = opts.initial_step; alpha >= opts.min_step; alpha *= opts.ls_shrink) {
            std::vector<double> trial_levels(u.levels.size());
            for (std::size_t j = 0; j < trial_levels.size(); ++j)
                trial_levels[j] = u.levels[j] - alpha * current.gradient[j];
            PiecewiseControl trial = project(std::move(trial_levels));

            double decrease = 0.0; // g . (u_trial - u), non-positive
            double change = 0.0;
            for (std::size_t j = 0; j < trial.levels.size(); ++j) {
                const double d = trial.levels[j] - u.levels[j];
                decrease += current.gradient[j] * d;
                change = std::max(change, std::abs(d));
            }
            if (change == 0.0) break;

            const double trial_cost = parameterized_cost(p, w, x0, grid, trial);
            if (trial_cost <= current.cost + opts.armijo * decrease) {
                u = std::move(trial);
                current = cost_and_gradient(p, w, x0, grid, u);
                sol.history.push_back({current.cost, change});
                ++sol.iterations;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Stalled line search: no further descent is resolvable in floating point.
            sol.converged = max_abs(projected_gradient(u.levels, current.gradient)) < opts.grad_tol;
            break;
        }
    }

    sol.control = u.sample(grid);
    sol.states = integrate_forward(p, sol.control, x0, grid);
    sol.adjoints = integrate_adjoint_backward(p, w, sol.states, sol.control, grid);
    sol.cost = evaluate_cost(w, sol.states, sol.control);
    return sol;
}

GradientCheck check_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                             std::size_t n_intervals, std::size_t samples, double fd_step, std::uint64_t seed) {
    steps_per_interval(grid, n_intervals);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> level(0.05, 0.95);

    GradientCheck out;
    for (std::size_t s = 0; s < samples; ++s) {
        PiecewiseControl u{std::vector<double>(n_intervals)};
        for (auto& v : u.levels) v = level(rng);
        const std::vector<double> g = reduced_gradient(p, w, x0, grid, u);
        for (std::size_t j = 0; j < n_intervals; ++j) {
            PiecewiseControl plus = u, minus = u;
            plus.levels[j] += fd_step;
            minus.levels[j] -= fd_step;
            const double fd =
                (parameterized_cost(p, w, x0, grid, plus) - parameterized_cost(p, w, x0, grid, minus)) / (2.0 * fd_step);
            const double rel = std::abs(g[j] - fd) / std::max(std::abs(fd), 1e-12);
            out.max_relative_error = std::max(out.max_relative_error, rel);
        }
        ++out.samples;
    }
    return out;
}

} // namespace dengue
