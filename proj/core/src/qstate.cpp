#include "qdist/qstate.hpp"

#include <algorithm>
#include <cmath>

#include "qdist/optimizer.hpp"

namespace qdist {

PureState::PureState(std::vector<Complex> amplitudes) : v_(std::move(amplitudes)) {
    if (v_.empty()) throw InvalidState("empty state vector");
    double n = 0.0;
    for (Complex z : v_) {
        if (!is_finite(z)) throw InvalidState("non-finite amplitude");
        n += std::norm(z);
    }
    if (std::abs(std::sqrt(n) - 1.0) > tol::unit_norm)
        throw InvalidState("state vector is not normalized");
}

PureState PureState::basis_state(int dim, int index) {
    if (dim <= 0 || index < 0 || index >= dim) throw InvalidState("basis state index out of range");
    std::vector<Complex> v(static_cast<size_t>(dim), Complex(0.0, 0.0));
    v[static_cast<size_t>(index)] = 1.0;
    return PureState(std::move(v));
}

PureState PureState::max_entangled(int d) {
    if (d <= 0) throw InvalidState("entangled state needs a positive dimension");
    std::vector<Complex> v(static_cast<size_t>(d) * static_cast<size_t>(d), Complex(0.0, 0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v[static_cast<size_t>(i * d + i)] = a;
    return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const {
    const int d = dim();
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = v_[static_cast<size_t>(i)] * std::conj(v_[static_cast<size_t>(j)]);
    return m;
}

Complex inner_product(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner product dimensions");
    Complex z = 0.0;
    for (int i = 0; i < a.dim(); ++i) z += std::conj(a[i]) * b[i];
    return z;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, trusted_tag) : mat_(std::move(m)) {}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_square()) throw NonSquare("density matrix must be square");
    if (!mat_.all_finite()) throw InvalidState("non-finite density matrix entry");
    if (mat_.hermiticity_defect() > tol::hermitian)
        throw NotHermitian("density matrix is not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > tol::trace_one || std::abs(mat_.trace().imag()) > tol::trace_one)
        throw InvalidState("density matrix trace is not one");
    const std::vector<double> eigs = hermitian_eigenvalues(mat_);
    if (eigs.back() < -tol::psd) throw NotPSD("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.projector(), trusted_tag{});
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
    if (d <= 0) throw InvalidState("mixed state needs a positive dimension");
    return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / d, 0.0), trusted_tag{});
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
    if (!m.is_square()) throw NonSquare("density matrix must be square");
    if (m.hermiticity_defect() > tol::hermitian)
        throw NotHermitian("density matrix is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > tol::trace_one)
        throw InvalidState("density matrix trace is not one");
    return DensityMatrix(std::move(m), trusted_tag{});
}

StateEnsemble::StateEnsemble(ProbVector w, std::vector<DensityMatrix> s)
    : weights(std::move(w)), states(std::move(s)) {
    if (weights.size() != static_cast<int>(states.size()))
        throw DimensionMismatch("ensemble weight and state counts differ");
    for (const DensityMatrix& rho : states)
        if (rho.dim() != states.front().dim())
            throw DimensionMismatch("ensemble states live on different dimensions");
}

DensityMatrix StateEnsemble::average() const {
    ComplexMatrix avg(dim(), dim());
    for (int i = 0; i < size(); ++i) avg += states[static_cast<size_t>(i)].mat() * Complex(weights[i], 0.0);
    for (int i = 0; i < avg.rows(); ++i)
        for (int j = i + 1; j < avg.cols(); ++j) {
            const Complex z = 0.5 * (avg(i, j) + std::conj(avg(j, i)));
            avg(i, j) = z;
            avg(j, i) = std::conj(z);
        }
    return DensityMatrix::trusted(std::move(avg));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_values(hermitian_eigenvalues(rho.mat()));
}

double holevo_quantity(const StateEnsemble& e) {
    double mixed = 0.0;
    for (int i = 0; i < e.size(); ++i)
        mixed += e.weights[i] * von_neumann_entropy(e.states[static_cast<size_t>(i)]);
    return std::max(von_neumann_entropy(e.average()) - mixed, 0.0);
}

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("fidelity dimensions differ");
    const ComplexMatrix s1 = matrix_sqrt_psd(rho1.mat());
    ComplexMatrix m = s1 * rho2.mat() * s1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    double f = 0.0;
    for (double v : hermitian_eigenvalues(m)) {
        if (v < -tol::psd) throw NotPSD("fidelity kernel has a negative eigenvalue");
        if (v > 0.0) f += std::sqrt(v);
    }
    return std::clamp(f, 0.0, 1.0);
}

double fidelity_pure(const PureState& a, const PureState& b) {
    return std::min(std::abs(inner_product(a, b)), 1.0);
}

PureState purify(const DensityMatrix& rho) {
    const int d = rho.dim();
    Spectrum s = hermitian_eig(rho.mat());
    std::vector<Complex> v(static_cast<size_t>(d) * static_cast<size_t>(d), Complex(0.0, 0.0));
    double norm = 0.0;
    for (int i = 0; i < d; ++i) {
        double lam = s.values[static_cast<size_t>(i)];
        if (lam < -tol::psd) throw NotPSD("purification of non-PSD input");
        if (lam < 0.0) lam = 0.0;
        const double r = std::sqrt(lam);
        for (int a = 0; a < d; ++a) v[static_cast<size_t>(a * d + i)] = r * s.vectors(a, i);
        norm += lam;
    }
    norm = std::sqrt(norm);
    for (Complex& z : v) z /= norm;
    return PureState(std::move(v));
}

double fidelity_purification_search(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                    const OptimizerConfig& cfg, SearchDiagnostics* diag) {
    if (rho1.dim() != rho2.dim()) throw DimensionMismatch("fidelity dimensions differ");
    const int d = rho1.dim();
    const Spectrum s1 = hermitian_eig(rho1.mat());
    const Spectrum s2 = hermitian_eig(rho2.mat());

    // overlap weights between the two spectral frames
    ComplexMatrix c(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex dot = 0.0;
            for (int a = 0; a < d; ++a) dot += std::conj(s1.vectors(a, i)) * s2.vectors(a, j);
            const double li = std::max(s1.values[static_cast<size_t>(i)], 0.0);
            const double mj = std::max(s2.values[static_cast<size_t>(j)], 0.0);
            c(i, j) = std::sqrt(li * mj) * dot;
        }

    ComplexMatrix w(d, d);
    const auto objective = [&](const std::vector<double>& x) {
        for (int r = 0; r < d; ++r)
            for (int col = 0; col < d; ++col) {
                const size_t k = 2 * static_cast<size_t>(r * d + col);
                w(r, col) = Complex(x[k], x[k + 1]);
            }
        orthonormalize_columns(w);
        Complex z = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) z += c(i, j) * w(i, j);
        return std::abs(z);
    };

    const SphereSearchResult res = maximize_on_spheres({2 * d * d}, objective, cfg);
    if (diag != nullptr) {
        diag->converged = res.converged;
        diag->restarts_run = res.restarts_run;
        diag->per_restart_values = res.per_restart_values;
    }
    return std::clamp(res.value, 0.0, 1.0);
}

ComplexMatrix gram_matrix(const ProbVector& weights, const std::vector<PureState>& states) {
    if (weights.size() != static_cast<int>(states.size()))
        throw DimensionMismatch("gram matrix weight and state counts differ");
    const int n = weights.size();
    for (const PureState& s : states)
        if (s.dim() != states.front().dim())
            throw DimensionMismatch("gram matrix states live on different dimensions");
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Complex z = std::sqrt(weights[i] * weights[j]) *
                              inner_product(states[static_cast<size_t>(i)], states[static_cast<size_t>(j)]);
            g(i, j) = z;
            g(j, i) = std::conj(z);
        }
        g(i, i) = g(i, i).real();
    }
    return g;
}

} // namespace qdist
