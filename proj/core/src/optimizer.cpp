#include "qdist/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "qdist/errors.hpp"
#include "qdist/numkernel.hpp"

namespace qdist {

void OptimizerConfig::validate() const {
    if (restarts <= 0) throw InvalidState("optimizer restarts must be positive");
    if (max_iters <= 0) throw InvalidState("optimizer max_iters must be positive");
    if (step_init <= 0.0) throw InvalidState("optimizer step_init must be positive");
    if (!(tol > 0.0) || !(tol < 1.0)) throw InvalidState("optimizer tol must lie in (0, 1)");
    if (fd_step <= 0.0) throw InvalidState("optimizer fd_step must be positive");
}

const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
        case BoundKind::exact: return "exact";
    }
    return "unknown";
}

namespace {

void normalize_blocks(std::vector<double>& x, const std::vector<int>& dims) {
    int off = 0;
    for (int d : dims) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) s += x[static_cast<size_t>(off + i)] * x[static_cast<size_t>(off + i)];
        s = std::sqrt(s);
        if (s < 1e-300) {
            x[static_cast<size_t>(off)] = 1.0;
            for (int i = 1; i < d; ++i) x[static_cast<size_t>(off + i)] = 0.0;
        } else {
            for (int i = 0; i < d; ++i) x[static_cast<size_t>(off + i)] /= s;
        }
        off += d;
    }
}

// Remove the radial component of g within each block.
void project_tangent(std::vector<double>& g, const std::vector<double>& x, const std::vector<int>& dims) {
    int off = 0;
    for (int d : dims) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += g[static_cast<size_t>(off + i)] * x[static_cast<size_t>(off + i)];
        for (int i = 0; i < d; ++i) g[static_cast<size_t>(off + i)] -= dot * x[static_cast<size_t>(off + i)];
        off += d;
    }
}

} // namespace

SphereSearchResult maximize_on_spheres(const std::vector<int>& block_dims,
                                       const std::function<double(const std::vector<double>&)>& objective,
                                       const OptimizerConfig& cfg) {
    cfg.validate();
    if (block_dims.empty()) throw InvalidState("sphere search needs at least one block");
    int total = 0;
    for (int d : block_dims) {
        if (d <= 0) throw InvalidState("sphere block dimension must be positive");
        total += d;
    }

    constexpr int improvement_window = 20;
    constexpr double step_floor = 1e-13;

    SphereSearchResult best;
    best.per_restart_values.reserve(static_cast<size_t>(cfg.restarts));

    std::vector<double> x(static_cast<size_t>(total));
    std::vector<double> g(static_cast<size_t>(total));
    std::vector<double> trial(static_cast<size_t>(total));
    std::vector<double> xp(static_cast<size_t>(total));

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(restart));
        for (double& xi : x) xi = rng.gaussian();
        normalize_blocks(x, block_dims);
        double fx = objective(x);

        double step = cfg.step_init;
        bool converged = false;
        std::deque<double> window;
        window.push_back(fx);

        for (int iter = 0; iter < cfg.max_iters; ++iter) {
            for (int i = 0; i < total; ++i) {
                xp = x;
                xp[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + cfg.fd_step;
                const double fplus = objective(xp);
                xp[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - cfg.fd_step;
                const double fminus = objective(xp);
                g[static_cast<size_t>(i)] = (fplus - fminus) / (2.0 * cfg.fd_step);
            }
            project_tangent(g, x, block_dims);
            double gnorm = 0.0;
            for (double gi : g) gnorm += gi * gi;
            gnorm = std::sqrt(gnorm);
            if (gnorm < 1e-12) {
                converged = true;
                break;
            }

            bool improved = false;
            while (step >= step_floor) {
                for (int i = 0; i < total; ++i)
                    trial[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + step * g[static_cast<size_t>(i)] / gnorm;
                normalize_blocks(trial, block_dims);
                const double ft = objective(trial);
                if (ft > fx) {
                    x = trial;
                    fx = ft;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) {
                converged = true;   // step exhausted at numerical resolution
                break;
            }

            window.push_back(fx);
            if (static_cast<int>(window.size()) > improvement_window + 1) window.pop_front();
            if (static_cast<int>(window.size()) == improvement_window + 1 &&
                fx - window.front() < cfg.tol) {
                converged = true;
                break;
            }
        }

        best.per_restart_values.push_back(fx);
        if (restart == 0 || fx > best.value) {
            best.value = fx;
            best.point = x;
            best.converged = converged;
        }
    }
    best.restarts_run = cfg.restarts;
    return best;
}

} // namespace qdist
