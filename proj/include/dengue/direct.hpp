#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dengue/solution.hpp"

namespace dengue {

struct DirectOptions {
    std::size_t n_intervals = 365; ///< must divide the grid's n_steps
    double grad_tol = 1e-6;        ///< max-norm of the projected gradient
    std::size_t max_iters = 2000;
    double initial_step = 1.0;
    double ls_shrink = 0.5;
    double armijo = 1e-4;
    double min_step = 1e-14; ///< line search gives up below this

    void validate(const TimeGrid& grid) const;
};

/// Piecewise-constant control: `levels[j]` applies on the j-th of
/// `levels.size()` equal sub-intervals of the horizon.
struct PiecewiseControl {
    std::vector<double> levels;

    /// Node values with ControlHold::PiecewiseConstant. The last node repeats
    /// the last level.
    ControlTrajectory sample(const TimeGrid& grid) const;
};

struct CostAndGradient {
    double cost = 0.0;
    std::vector<double> gradient;
};

/// dJ/du_j for every interval j from one forward and one backward solve:
/// the trapezoid over the interval of 2 gamma_v u_j + (l3 - l1)(s_h - sigma r_h).
std::vector<double> reduced_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                     const TimeGrid& grid, const PiecewiseControl& u);

CostAndGradient cost_and_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                  const TimeGrid& grid, const PiecewiseControl& u);

/// Cost of the forward solve under a piecewise-constant control.
double parameterized_cost(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                          const PiecewiseControl& u);

/// Gradient entries zeroed where a bound is active and the descent direction
/// points out of [0, 1].
std::vector<double> projected_gradient(const std::vector<double>& levels, const std::vector<double>& gradient);

/// Projected gradient descent with Armijo backtracking on [0, 1]^n, from u = 0.
/// `history` holds one record per accepted step (the initial point first).
Solution solve_direct(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                      const DirectOptions& opts = {});

struct GradientCheck {
    double max_relative_error = 0.0;
    std::size_t samples = 0;
};

/// Compares reduced_gradient with central differences of the cost at
/// `samples` random controls drawn from [0.05, 0.95]^n_intervals.
GradientCheck check_gradient(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                             std::size_t n_intervals, std::size_t samples, double fd_step, std::uint64_t seed);

} // namespace dengue
