#pragma once

#include <cstddef>
#include <vector>

#include "dengue/integrate.hpp"

namespace dengue {

struct IterationRecord {
    double cost = 0.0;
    double control_change = 0.0; ///< max-norm of the control update
};

/// Result of one solve. `adjoints` is empty for fixed-control runs.
struct Solution {
    StateTrajectory states;
    AdjointTrajectory adjoints;
    ControlTrajectory control;
    double cost = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> history;

    bool has_adjoints() const { return !adjoints.values.empty(); }
};

/// Single forward solve under a prescribed control; no optimization.
Solution evaluate_fixed_control(const ModelParams& p, const CostWeights& w, const EpiState& x0,
                                const ControlTrajectory& u);

} // namespace dengue
