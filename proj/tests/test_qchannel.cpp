#include <doctest.h>

#include <cmath>

#include "qdist/qchannel.hpp"

using namespace qdist;

namespace {

DensityMatrix random_density(int d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> v(static_cast<size_t>(d) * static_cast<size_t>(d));
    double n = 0.0;
    for (Complex& z : v) {
        z = rng.complex_gaussian();
        n += std::norm(z);
    }
    n = std::sqrt(n);
    ComplexMatrix red(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex z = 0.0;
            for (int k = 0; k < d; ++k)
                z += (v[static_cast<size_t>(i * d + k)] / n) * std::conj(v[static_cast<size_t>(j * d + k)] / n);
            red(i, j) = z;
        }
    return DensityMatrix(std::move(red));
}

Channel depolarizing(double p) {
    const double s = std::sqrt(p / 3.0);
    ComplexMatrix k0(2, 2), k1(2, 2), k2(2, 2), k3(2, 2);
    k0(0, 0) = std::sqrt(1.0 - p);
    k0(1, 1) = std::sqrt(1.0 - p);
    k1(0, 1) = s;
    k1(1, 0) = s;
    k2(0, 1) = Complex(0.0, -s);
    k2(1, 0) = Complex(0.0, s);
    k3(0, 0) = s;
    k3(1, 1) = -s;
    return Channel::kraus({k0, k1, k2, k3});
}

} // namespace

TEST_SUITE("qchannel") {

TEST_CASE("channel factories validate their inputs") {
    ComplexMatrix not_unitary(2, 2);
    not_unitary(0, 0) = 1.0;
    not_unitary(1, 1) = 0.5;
    CHECK_THROWS_AS(Channel::unitary(not_unitary), InvalidChannel);

    ComplexMatrix half(2, 2);
    half(0, 0) = 1.0;
    CHECK_THROWS_AS(Channel::kraus({half}), InvalidChannel);

    const Channel id = Channel::identity(3);
    CHECK(id.kind() == ChannelKind::unitary);
    CHECK(id.dim_in() == 3);
    CHECK(validate(id).pass);
    CHECK(validate(depolarizing(0.3)).pass);
}

TEST_CASE("application matches direct conjugation") {
    const ComplexMatrix u = random_unitary(3, 8);
    const Channel ch = Channel::unitary(u);
    const DensityMatrix rho = random_density(3, 9);
    const DensityMatrix out = apply(ch, rho);
    CHECK(max_abs_diff(out.mat(), u * rho.mat() * u.dagger()) < 1e-12);
    CHECK(out.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

    const DensityMatrix qubit = random_density(2, 10);
    const DensityMatrix dep = apply(depolarizing(1.0), qubit);
    // full depolarizing sends everything near the maximally mixed state
    CHECK(max_abs_diff(dep.mat(), DensityMatrix::maximally_mixed(2).mat()) < 0.34);
    CHECK(dep.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identity extension acts on the leading factor") {
    const ComplexMatrix u = random_unitary(2, 12);
    const Channel ch = Channel::unitary(u);
    const DensityMatrix bell = DensityMatrix::from_pure(PureState::max_entangled(2));
    const DensityMatrix out = apply_extended(ch, bell);
    const ComplexMatrix big = tensor_product(u, ComplexMatrix::identity(2));
    CHECK(max_abs_diff(out.mat(), big * bell.mat() * big.dagger()) < 1e-12);

    const DensityMatrix same = apply_extended(Channel::identity(2), bell);
    CHECK(max_abs_diff(same.mat(), bell.mat()) < 1e-12);
}

TEST_CASE("composition laws") {
    const ComplexMatrix u = random_unitary(2, 21);
    const ComplexMatrix v = random_unitary(2, 22);
    const Channel seq = compose_sequential(Channel::unitary(u), Channel::unitary(v));
    CHECK(seq.kind() == ChannelKind::unitary);
    CHECK(max_abs_diff(*seq.unitary_matrix(), u * v) < 1e-12);

    const DensityMatrix rho = random_density(2, 23);
    const Channel dep = depolarizing(0.25);
    const Channel chained = compose_sequential(dep, Channel::unitary(u));
    const DensityMatrix direct = apply(dep, apply(Channel::unitary(u), rho));
    CHECK(max_abs_diff(apply(chained, rho).mat(), direct.mat()) < 1e-12);
    CHECK(chained.kraus_ops().size() == 4);

    const Channel prod = compose_tensor(Channel::unitary(u), dep);
    CHECK(prod.dim_in() == 4);
    CHECK(validate(prod).pass);
    const DensityMatrix ab = DensityMatrix::trusted(tensor_product(rho.mat(), random_density(2, 24).mat()));
    const ComplexMatrix expect =
        tensor_product(apply(Channel::unitary(u), rho).mat(), apply(dep, random_density(2, 24)).mat());
    CHECK(max_abs_diff(apply(prod, ab).mat(), expect) < 1e-12);

    CHECK_THROWS_AS(compose_sequential(Channel::identity(2), Channel::identity(3)), DimensionMismatch);
}

TEST_CASE("measure-and-reprepare forms lower to valid kraus sets") {
    EbForm form;
    form.psis = {{1.0, 0.0}, {0.0, 1.0}};
    form.phis = {{1.0, 0.0}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}};
    const Channel eb = Channel::entanglement_breaking(form);
    CHECK(eb.kind() == ChannelKind::entanglement_breaking);
    CHECK(validate(eb).pass);

    const DensityMatrix rho = random_density(2, 33);
    const DensityMatrix out = apply(eb, rho);
    ComplexMatrix expect(2, 2);
    const double p0 = rho.mat()(0, 0).real();
    const double p1 = rho.mat()(1, 1).real();
    expect(0, 0) = p0 + 0.5 * p1;
    expect(0, 1) = 0.5 * p1;
    expect(1, 0) = 0.5 * p1;
    expect(1, 1) = 0.5 * p1;
    CHECK(max_abs_diff(out.mat(), expect) < 1e-12);

    EbForm incomplete;
    incomplete.psis = {{1.0, 0.0}};
    incomplete.phis = {{1.0, 0.0}};
    CHECK_THROWS_AS(Channel::entanglement_breaking(incomplete), IncompletePOVM);
}

TEST_CASE("dilation reproduces the channel after discarding the ancilla") {
    for (int rank : {1, 2, 4}) {
        const Channel ch = rank == 1 ? Channel::unitary(random_unitary(3, 44))
                                     : random_channel(3, rank, 45 + static_cast<std::uint64_t>(rank));
        const Dilation dil = dilate(ch);
        CHECK(dil.ancilla_dim == static_cast<int>(ch.kraus_ops().size()));
        const int n = 3 * dil.ancilla_dim;
        CHECK(max_abs_diff(dil.unitary * dil.unitary.dagger(), ComplexMatrix::identity(n)) < 1e-10);

        const DensityMatrix rho = random_density(3, 50 + static_cast<std::uint64_t>(rank));
        ComplexMatrix anc(dil.ancilla_dim, dil.ancilla_dim);
        anc(0, 0) = 1.0;
        const ComplexMatrix embedded = dil.unitary * tensor_product(rho.mat(), anc) * dil.unitary.dagger();
        CHECK(max_abs_diff(partial_trace(embedded, 3, dil.ancilla_dim, Subsystem::A),
                           apply_raw(ch, rho.mat())) < 1e-10);
    }
}

TEST_CASE("random channels are deterministic and well formed") {
    const Channel a = random_channel(2, 3, 7);
    const Channel b = random_channel(2, 3, 7);
    CHECK(a.kraus_ops().size() == 3);
    CHECK(validate(a).pass);
    for (size_t k = 0; k < 3; ++k) CHECK(max_abs_diff(a.kraus_ops()[k], b.kraus_ops()[k]) == 0.0);

    CHECK(random_channel(2, 1, 9).kind() == ChannelKind::unitary);
}

TEST_CASE("channel ensembles enforce shared dimensions") {
    CHECK_THROWS_AS(ChannelEnsemble(ProbVector::uniform(2), {Channel::identity(2), Channel::identity(3)}),
                    DimensionMismatch);
    CHECK_THROWS_AS(ChannelEnsemble(ProbVector::uniform(3), {Channel::identity(2), Channel::identity(2)}),
                    DimensionMismatch);
}

} // TEST_SUITE
