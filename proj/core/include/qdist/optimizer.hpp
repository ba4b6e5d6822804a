#pragma once

#include <functional>
#include <vector>

#include "qdist/optimizer_config.hpp"

namespace qdist {

// Outcome of a multi-start sphere ascent. `point` is the best coordinate
// vector found; blocks are concatenated in the order they were declared.
struct SphereSearchResult {
    double value = 0.0;
    std::vector<double> point;
    int restarts_run = 0;
    bool converged = false;          // convergence flag of the best restart
    std::vector<double> per_restart_values;
};

// Maximizes `objective` over a product of unit spheres. `block_dims` gives
// the real dimension of each sphere factor; the argument vector is their
// concatenation, each block kept at unit Euclidean norm.
//
// Per restart: projected finite-difference ascent with backtracking (the
// step halves on non-improvement and never regrows), stopping when the
// windowed improvement drops below cfg.tol or cfg.max_iters is reached.
// Ties between restarts resolve to the lowest restart index.
SphereSearchResult maximize_on_spheres(const std::vector<int>& block_dims,
                                       const std::function<double(const std::vector<double>&)>& objective,
                                       const OptimizerConfig& cfg);

} // namespace qdist
