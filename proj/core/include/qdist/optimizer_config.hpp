#pragma once

#include <cstdint>

namespace qdist {

// Shared knobs for the multi-start ascent searches. Restart draws come
// from per-restart substreams of `seed`, so results are reproducible and
// independent of evaluation order.
struct OptimizerConfig {
    int restarts = 64;
    int max_iters = 2000;
    double step_init = 0.1;
    double tol = 1e-7;
    std::uint64_t seed = 1;
    double fd_step = 1e-5;

    void validate() const;
};

// How an optimization result relates to the quantity it targets.
enum class BoundKind { lower, upper, exact };

const char* to_string(BoundKind k);

} // namespace qdist
