#pragma once

#include <cstddef>

#include "dengue/solution.hpp"

namespace dengue {

struct SweepOptions {
    double relaxation = 0.9;      ///< weight of the freshly characterized control
    double min_relaxation = 0.1;  ///< floor for automatic halving
    std::size_t patience = 3;     ///< consecutive cost increases before halving
    double tol = 1e-4;            ///< max-norm of the control update
    std::size_t max_iters = 500;

    void validate() const;
};

/// Forward-backward sweep. Starts from u = 0 and repeats
/// forward solve, backward solve, u <- theta * u_char + (1 - theta) * u
/// until the update is below `tol`. Non-convergence is reported through
/// `Solution::converged`, not by throwing.
Solution solve_indirect(const ModelParams& p, const CostWeights& w, const EpiState& x0, const TimeGrid& grid,
                        const SweepOptions& opts = {});

/// max over nodes of |u - optimal_control(x, l)| on the solution's own trajectories.
double characterization_residual(const ModelParams& p, const CostWeights& w, const Solution& sol);

} // namespace dengue
