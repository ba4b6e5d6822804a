#include <benchmark/benchmark.h>

#include "qdist/distinguish.hpp"
#include "qdist/qchannel.hpp"
#include "qdist/qstate.hpp"

namespace {

qdist::ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
    qdist::Rng rng(seed);
    qdist::ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            m(i, j) = rng.complex_gaussian();
            m(j, i) = std::conj(m(i, j));
        }
        m(i, i) = rng.gaussian();
    }
    return m;
}

qdist::DensityMatrix random_density(int d, std::uint64_t seed) {
    qdist::Rng rng(seed);
    std::vector<qdist::Complex> v(static_cast<size_t>(d) * static_cast<size_t>(d));
    double n = 0.0;
    for (qdist::Complex& z : v) {
        z = rng.complex_gaussian();
        n += std::norm(z);
    }
    n = std::sqrt(n);
    qdist::ComplexMatrix red(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            qdist::Complex z = 0.0;
            for (int k = 0; k < d; ++k)
                z += (v[static_cast<size_t>(i * d + k)] / n) * std::conj(v[static_cast<size_t>(j * d + k)] / n);
            red(i, j) = z;
        }
    return qdist::DensityMatrix::trusted(std::move(red));
}

qdist::ChannelEnsemble pauli_ensemble() {
    using qdist::Complex;
    using qdist::ComplexMatrix;
    ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    y(0, 1) = Complex(0.0, -1.0);
    y(1, 0) = Complex(0.0, 1.0);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    std::vector<qdist::Channel> chs;
    chs.push_back(qdist::Channel::identity(2));
    chs.push_back(qdist::Channel::unitary(x));
    chs.push_back(qdist::Channel::unitary(y));
    chs.push_back(qdist::Channel::unitary(z));
    return qdist::ChannelEnsemble(qdist::ProbVector::uniform(4), std::move(chs));
}

qdist::SU2Ensemble random_triple(std::uint64_t seed) {
    std::vector<qdist::ComplexMatrix> us;
    for (int k = 0; k < 3; ++k) us.push_back(qdist::random_su2(seed + static_cast<std::uint64_t>(k)));
    return qdist::SU2Ensemble(qdist::ProbVector::uniform(3), std::move(us));
}

void BM_HermitianEig(benchmark::State& state) {
    const auto m = random_hermitian(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(qdist::hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16);

void BM_UhlmannFidelity(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto r1 = random_density(d, 11);
    const auto r2 = random_density(d, 13);
    for (auto _ : state) benchmark::DoNotOptimize(qdist::uhlmann_fidelity(r1, r2));
}
BENCHMARK(BM_UhlmannFidelity)->Arg(2)->Arg(4)->Arg(8);

void BM_EnsembleHolevoAtPauli(benchmark::State& state) {
    const auto e = pauli_ensemble();
    const auto probe = qdist::PureState::max_entangled(2);
    for (auto _ : state) benchmark::DoNotOptimize(qdist::ensemble_holevo_at(e, probe));
}
BENCHMARK(BM_EnsembleHolevoAtPauli);

void BM_EnsembleHolevoAtRank4(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    std::vector<qdist::Channel> chs;
    for (int k = 0; k < 3; ++k) chs.push_back(qdist::random_channel(d, 4, 17 + static_cast<std::uint64_t>(k)));
    const qdist::ChannelEnsemble e(qdist::ProbVector::uniform(3), std::move(chs));
    const auto probe = qdist::PureState::max_entangled(d);
    for (auto _ : state) benchmark::DoNotOptimize(qdist::ensemble_holevo_at(e, probe));
}
BENCHMARK(BM_EnsembleHolevoAtRank4)->Arg(2)->Arg(4);

void BM_Su2ClosedForm(benchmark::State& state) {
    const auto e = random_triple(23);
    for (auto _ : state) benchmark::DoNotOptimize(qdist::su2_distinguishability(e));
}
BENCHMARK(BM_Su2ClosedForm);

void BM_DistOpsTriple(benchmark::State& state) {
    const auto e = random_triple(29).to_channels();
    qdist::OptimizerConfig cfg;
    cfg.restarts = 2;
    cfg.max_iters = 300;
    cfg.seed = 5;
    for (auto _ : state) benchmark::DoNotOptimize(qdist::dist_ops(e, cfg));
}
BENCHMARK(BM_DistOpsTriple);

} // namespace

BENCHMARK_MAIN();
