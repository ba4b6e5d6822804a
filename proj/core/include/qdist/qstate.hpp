#pragma once

#include <optional>
#include <vector>

#include "qdist/numkernel.hpp"
#include "qdist/optimizer_config.hpp"

namespace qdist {

// Normalized state vector. Construction checks finiteness and unit norm.
class PureState {
public:
    // Defaults to the trivial state on C^1.
    PureState() : v_{Complex(1.0, 0.0)} {}
    explicit PureState(std::vector<Complex> amplitudes);
    static PureState basis_state(int dim, int index);
    // (1/sqrt(d)) sum_i |ii> on C^d (x) C^d.
    static PureState max_entangled(int d);

    int dim() const { return static_cast<int>(v_.size()); }
    const std::vector<Complex>& amplitudes() const { return v_; }
    Complex operator[](int i) const { return v_[static_cast<size_t>(i)]; }

    ComplexMatrix projector() const;

private:
    std::vector<Complex> v_;
};

Complex inner_product(const PureState& a, const PureState& b);

// Density operator: Hermitian within tol::hermitian, eigenvalues above
// -tol::psd, trace within tol::trace_one of 1.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(int d);
    // Skips the spectral check; for internal use on outputs that are PSD
    // by construction. Hermiticity and trace are still enforced.
    static DensityMatrix trusted(ComplexMatrix m);

    int dim() const { return mat_.rows(); }
    const ComplexMatrix& mat() const { return mat_; }

private:
    struct trusted_tag {};
    DensityMatrix(ComplexMatrix m, trusted_tag);
    ComplexMatrix mat_;
};

// Weighted collection of density operators on a common dimension.
struct StateEnsemble {
    ProbVector weights;
    std::vector<DensityMatrix> states;

    StateEnsemble(ProbVector w, std::vector<DensityMatrix> s);
    int size() const { return weights.size(); }
    int dim() const { return states.front().dim(); }
    DensityMatrix average() const;
};

// Base-2 von Neumann entropy.
double von_neumann_entropy(const DensityMatrix& rho);

// S(average) - sum_i p_i S(rho_i), clamped at zero.
double holevo_quantity(const StateEnsemble& e);

// tr sqrt(sqrt(rho1) rho2 sqrt(rho1)), computed spectrally and clipped
// into [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

double fidelity_pure(const PureState& a, const PureState& b);

// Canonical purification sum_i sqrt(lambda_i) |v_i> (x) |i> with the
// spectrum in descending order; lives on dim (x) dim.
PureState purify(const DensityMatrix& rho);

struct SearchDiagnostics {
    bool converged = false;
    int restarts_run = 0;
    std::vector<double> per_restart_values;
};

// Maximum overlap of purifications over ancilla unitaries, found by
// multi-start ascent. Agrees with uhlmann_fidelity at convergence; lack of
// convergence is reported through `diag`, never thrown.
double fidelity_purification_search(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    const OptimizerConfig& cfg,
                                    SearchDiagnostics* diag = nullptr);

// G_ij = sqrt(p_i p_j) <phi_i|phi_j>. Shares its nonzero spectrum with the
// weighted average of the projectors.
ComplexMatrix gram_matrix(const ProbVector& weights, const std::vector<PureState>& states);

} // namespace qdist
