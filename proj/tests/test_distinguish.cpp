#include <doctest.h>

#include <cmath>

#include "qdist/distinguish.hpp"

using namespace qdist;

namespace {

constexpr double kPi = 3.14159265358979323846;

Channel phase_channel(double theta) {
    ComplexMatrix u(2, 2);
    u(0, 0) = 1.0;
    u(1, 1) = std::polar(1.0, theta);
    return Channel::unitary(u);
}

ChannelEnsemble pauli_ensemble() {
    ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    y(0, 1) = Complex(0.0, -1.0);
    y(1, 0) = Complex(0.0, 1.0);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return ChannelEnsemble(ProbVector::uniform(4), {Channel::identity(2), Channel::unitary(x),
                                                    Channel::unitary(y), Channel::unitary(z)});
}

SU2Ensemble random_su2_triple(std::uint64_t seed, ProbVector weights) {
    return SU2Ensemble(std::move(weights),
                       {random_su2(seed), random_su2(seed + 1), random_su2(seed + 2)});
}

} // namespace

TEST_SUITE("distinguish") {

TEST_CASE("ensemble holevo at a fixed probe") {
    const ChannelEnsemble pauli = pauli_ensemble();
    const double chi = ensemble_holevo_at(pauli, PureState::max_entangled(2));
    CHECK(std::abs(chi - 2.0) <= 1e-9);

    CHECK_THROWS_AS(ensemble_holevo_at(pauli, PureState::basis_state(2, 0)), DimensionMismatch);
}

TEST_CASE("probe search fundamentals") {
    OptimizerConfig tiny;
    tiny.restarts = 2;
    tiny.max_iters = 50;

    const ChannelEnsemble lone(ProbVector::uniform(1), {Channel::identity(2)});
    CHECK(dist_ops(lone, tiny).value <= 1e-9);

    const ChannelEnsemble twins(ProbVector::uniform(2), {Channel::identity(2), Channel::identity(2)});
    CHECK(dist_ops(twins, tiny).value <= 1e-9);

    const ChannelEnsemble mixed = random_su2_triple(5, ProbVector({0.5, 0.3, 0.2})).to_channels();
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 1500;
    const OptimizationResult res = dist_ops(mixed, cfg);
    CHECK(res.bound == BoundKind::lower);
    CHECK(res.restarts_run == 8);
    CHECK(res.per_restart_values.size() == 8);
    CHECK(res.probe.dim() == 4);
    // the reported value is reproducible from the reported probe
    CHECK(std::abs(ensemble_holevo_at(mixed, res.probe) - res.value) <= 1e-9);
    // never above the weight entropy
    CHECK(res.value <= shannon_entropy(mixed.weights) + 1e-9);
    // never beaten by much at the maximally entangled probe
    CHECK(ensemble_holevo_at(mixed, PureState::max_entangled(2)) <= res.value + 1e-3);

    const OptimizationResult rerun = dist_ops(mixed, cfg);
    CHECK(rerun.value == res.value);
    for (int i = 0; i < 4; ++i) CHECK(rerun.probe[i] == res.probe[i]);
}

TEST_CASE("probe search reaches the pauli optimum") {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    const OptimizationResult res = dist_ops(pauli_ensemble(), cfg);
    CHECK(res.value >= 1.999);
    CHECK(res.value <= 2.0 + 1e-9);
}

TEST_CASE("worst-case output fidelity") {
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 800;

    const Channel u = Channel::unitary(random_su2(31));
    const OptimizationResult same = fidelity_ops(u, u, cfg);
    CHECK(same.bound == BoundKind::upper);
    CHECK(same.value >= 1.0 - 1e-9);
    CHECK(same.value <= 1.0 + 1e-9);

    for (std::uint64_t s = 40; s < 45; ++s) {
        const Channel a = Channel::unitary(random_su2(s));
        const Channel b = Channel::unitary(random_su2(s + 100));
        const double closed = two_unitary_min_overlap(a, b);
        const double searched = fidelity_ops(a, b, cfg).value;
        CHECK(std::abs(searched - closed) <= 1e-3);
        CHECK(searched >= closed - 1e-9);
    }

    CHECK_THROWS_AS(fidelity_ops(Channel::identity(2), Channel::identity(3)), DimensionMismatch);
}

TEST_CASE("two-unitary overlap geometry") {
    const Channel id = Channel::identity(2);
    CHECK(two_unitary_min_overlap(id, id) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two_unitary_min_overlap(id, phase_channel(kPi)) <= 1e-12);
    CHECK(std::abs(two_unitary_min_overlap(id, phase_channel(kPi / 2.0)) - std::cos(kPi / 4.0)) <= 1e-12);

    ComplexMatrix w(3, 3);
    w(0, 0) = 1.0;
    w(1, 1) = std::polar(1.0, 2.0 * kPi / 3.0);
    w(2, 2) = std::polar(1.0, -2.0 * kPi / 3.0);
    CHECK(two_unitary_min_overlap(Channel::identity(3), Channel::unitary(w)) <= 1e-12);

    CHECK_THROWS_AS(two_unitary_min_overlap(random_channel(2, 2, 5), id), InvalidChannel);
}

TEST_CASE("perfect discrimination copy counts") {
    const Channel id = Channel::identity(2);
    CHECK(min_copies_perfect(id, phase_channel(kPi)) == 1);
    CHECK(min_copies_perfect(id, phase_channel(kPi / 2.0)) == 2);
    CHECK(min_copies_perfect(id, phase_channel(kPi / 4.0)) == 4);
    CHECK_FALSE(min_copies_perfect(id, id).has_value());

    CHECK(copies_upper_bound({id, phase_channel(kPi / 2.0), phase_channel(kPi / 4.0)}) == 8);
    CHECK_THROWS_AS(copies_upper_bound({id, Channel::identity(2), phase_channel(kPi)}), InvalidState);
    CHECK_THROWS_AS(copies_upper_bound({id}), InvalidState);
}

TEST_CASE("closed form on the reference ensembles") {
    const auto [u, v] = reference_su2_pair();
    const SU2Result ru = su2_distinguishability(u);
    const SU2Result rv = su2_distinguishability(v);
    CHECK(std::abs(ru.value - 1.1380894859384285) <= 1e-12);
    CHECK(std::abs(rv.value - 1.1179939147543458) <= 1e-12);
    CHECK(ru.gram.rows() == 3);

    const std::vector<double> ou = pairwise_overlaps(u);
    const std::vector<double> ov = pairwise_overlaps(v);
    REQUIRE(ou.size() == 3);
    REQUIRE(ov.size() == 3);
    CHECK(std::abs(ou[0] - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(ou[1] - 1.0 / std::sqrt(3.0)) <= 1e-12);
    CHECK(std::abs(ou[2] - 0.25) <= 1e-12);
    CHECK(std::abs(ov[0] - 1.0 / std::sqrt(2.1)) <= 1e-12);
    CHECK(std::abs(ov[1] - 1.0 / std::sqrt(3.1)) <= 1e-12);
    CHECK(ov[2] <= 1e-12);

    // every overlap strictly larger on the u side, yet u is the more
    // distinguishable ensemble
    for (size_t k = 0; k < 3; ++k) CHECK(ou[k] > ov[k] + 1e-3);
    CHECK(ru.value > rv.value + 1e-3);

    ComplexMatrix det_minus_one(2, 2);
    det_minus_one(0, 0) = 1.0;
    det_minus_one(1, 1) = -1.0;
    CHECK_THROWS_AS(SU2Ensemble(ProbVector::uniform(2), {ComplexMatrix::identity(2), det_minus_one}),
                    InvalidChannel);
}

TEST_CASE("random special unitaries") {
    const ComplexMatrix a = random_su2(11);
    const ComplexMatrix b = random_su2(11);
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(max_abs_diff(a * a.dagger(), ComplexMatrix::identity(2)) <= 1e-12);
    const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    CHECK(std::abs(det - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(max_abs_diff(a, random_su2(12)) > 1e-3);
}

TEST_CASE("probe search corroborates the closed form") {
    const SU2Ensemble e = random_su2_triple(21, ProbVector::uniform(3));
    const double closed = su2_distinguishability(e).value;
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_iters = 1500;
    const OptimizationResult res = dist_ops(e.to_channels(), cfg);
    CHECK(res.value <= closed + 1e-9);
    CHECK(res.value >= closed - 1e-3);
}

TEST_CASE("overlap order can oppose distinguishability order") {
    ParadoxConfig none;
    none.trials = 0;
    const ParadoxResult base = paradox_search(none);
    CHECK(base.reference_pair_qualifies);
    CHECK(base.hits.empty());

    ParadoxConfig cfg;
    cfg.trials = 5000;
    const ParadoxResult found = paradox_search(cfg);
    CHECK(found.reference_pair_qualifies);
    CHECK(found.hits.size() > 0);
    for (const ParadoxHit& hit : found.hits) {
        REQUIRE(hit.overlaps_more.size() == hit.overlaps_less.size());
        for (size_t k = 0; k < hit.overlaps_more.size(); ++k)
            CHECK(hit.overlaps_more[k] > hit.overlaps_less[k]);
        CHECK(hit.value_more > hit.value_less);
        CHECK(std::abs(su2_distinguishability(hit.more_overlapping).value - hit.value_more) <= 1e-12);
        CHECK(std::abs(su2_distinguishability(hit.less_overlapping).value - hit.value_less) <= 1e-12);
    }

    ParadoxConfig again = cfg;
    again.trials = 500;
    const ParadoxResult r1 = paradox_search(again);
    const ParadoxResult r2 = paradox_search(again);
    CHECK(r1.hits.size() == r2.hits.size());

    ParadoxConfig weights = cfg;
    weights.trials = 1500;
    weights.random_weights = true;
    for (const ParadoxHit& hit : paradox_search(weights).hits) {
        for (size_t k = 0; k < hit.overlaps_more.size(); ++k)
            CHECK(hit.overlaps_more[k] > hit.overlaps_less[k]);
        CHECK(hit.value_more > hit.value_less);
    }

    ParadoxConfig bad;
    bad.trials = -1;
    CHECK_THROWS_AS(paradox_search(bad), InvalidState);
}

TEST_CASE("fidelity order and holevo order can disagree") {
    OrderSearchConfig cfg;
    cfg.trials = 500;
    const std::vector<OrderWitness> witnesses = order_disagreement_search(cfg);
    CHECK(witnesses.size() > 0);
    for (const OrderWitness& w : witnesses) {
        CHECK(w.fidelity_sharper < w.fidelity_duller - 1e-9);
        CHECK(w.holevo_sharper < w.holevo_duller - 1e-9);
        const double fs = uhlmann_fidelity(w.sharper_fidelity.states[0], w.sharper_fidelity.states[1]);
        const double fd = uhlmann_fidelity(w.duller_fidelity.states[0], w.duller_fidelity.states[1]);
        CHECK(std::abs(fs - w.fidelity_sharper) <= 1e-12);
        CHECK(std::abs(fd - w.fidelity_duller) <= 1e-12);
        CHECK(std::abs(holevo_quantity(w.sharper_fidelity) - w.holevo_sharper) <= 1e-12);
        CHECK(std::abs(holevo_quantity(w.duller_fidelity) - w.holevo_duller) <= 1e-12);
    }

    OrderSearchConfig pure = cfg;
    pure.trials = 300;
    pure.pure_only = true;
    CHECK(order_disagreement_search(pure).empty());

    OrderSearchConfig none = cfg;
    none.trials = 0;
    CHECK(order_disagreement_search(none).empty());
}

TEST_CASE("one-shot capacity search") {
    OptimizerConfig tiny;
    tiny.restarts = 2;
    tiny.max_iters = 100;
    const OptimizationResult lone = capacity({Channel::identity(2)}, tiny);
    CHECK(lone.value <= 1e-9);
    REQUIRE(lone.prior.has_value());
    CHECK(lone.prior->size() == 1);

    CHECK(capacity({Channel::identity(2), Channel::identity(2)}, tiny).value <= 1e-9);

    const ChannelEnsemble pauli = pauli_ensemble();
    OptimizerConfig cfg;
    cfg.restarts = 10;
    cfg.max_iters = 1200;
    const OptimizationResult res = capacity(pauli.channels, cfg);
    CHECK(res.bound == BoundKind::lower);
    CHECK(std::abs(res.value - 2.0) <= 1e-2);
    REQUIRE(res.prior.has_value());
    for (int i = 0; i < res.prior->size(); ++i)
        CHECK(std::abs(res.prior->weights()[static_cast<size_t>(i)] - 0.25) <= 5e-2);

    CHECK_THROWS_AS(capacity({}, tiny), InvalidState);
}

TEST_CASE("finite-copy separation evidence") {
    const Channel id = Channel::identity(2);
    CHECK_THROWS_AS(eb_finite_copy_check(id, id, 3), InvalidState);
    CHECK_THROWS_AS(eb_finite_copy_check(id, id, 0), InvalidState);

    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_iters = 400;

    const EbCopyReport same = eb_finite_copy_check(id, id, 1, cfg);
    CHECK(same.copies == 1);
    CHECK(same.fidelity_bound >= 0.999);
    CHECK(same.consistent);

    const EbCopyReport split = eb_finite_copy_check(id, phase_channel(kPi), 1, cfg);
    CHECK(split.fidelity_bound <= 1e-3);
    CHECK_FALSE(split.consistent);

    const Channel slow = phase_channel(kPi / 4.0);
    const EbCopyReport twice = eb_finite_copy_check(id, slow, 2, cfg);
    CHECK(twice.copies == 2);
    const double closed =
        two_unitary_min_overlap(compose_tensor(id, id), compose_tensor(slow, slow));
    CHECK(std::abs(twice.fidelity_bound - closed) <= 5e-3);
    CHECK(twice.consistent);
}

} // TEST_SUITE
