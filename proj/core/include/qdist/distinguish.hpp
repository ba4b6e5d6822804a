#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdist/optimizer.hpp"
#include "qdist/qchannel.hpp"
#include "qdist/qstate.hpp"

namespace qdist {

// Result of a probe-space search. `probe` lives on dim_in (x) dim_in.
struct OptimizationResult {
    double value = 0.0;
    PureState probe;
    int restarts_run = 0;
    bool converged = false;
    std::vector<double> per_restart_values;
    BoundKind bound = BoundKind::lower;
    std::optional<ProbVector> prior;   // set by the capacity search
};

// Holevo quantity of the states (E_i (x) id)(|phi><phi|) with the ensemble
// weights. The probe must live on dim_in (x) dim_in. Evaluated through the
// Gram spectra of the propagated Kraus pieces, so no density matrix on the
// extended space is ever formed.
double ensemble_holevo_at(const ChannelEnsemble& e, const PureState& probe);

// Entangled-probe distinguishability: maximizes ensemble_holevo_at over
// pure probes. The value is a lower bound of the channel-ensemble Holevo
// quantity; with enough restarts it is tight.
OptimizationResult dist_ops(const ChannelEnsemble& e, const OptimizerConfig& cfg = {});

// Worst-case output fidelity between two channels: minimizes the fidelity
// of (E_k (x) id)(|phi><phi|) over pure probes. Upper bound of the true
// minimum.
OptimizationResult fidelity_ops(const Channel& e1, const Channel& e2,
                                const OptimizerConfig& cfg = {});

// Minimum of |<phi| u1^dag u2 (x) id |phi>| over probes: the distance from
// the origin to the convex hull of the eigenvalues of u1^dag u2.
double two_unitary_min_overlap(const Channel& u1, const Channel& u2);

// Fewest parallel copies after which the two unitaries become perfectly
// distinguishable: ceil(pi / Theta) for eigenvalue arc width Theta,
// cross-checked by explicit hull computations at N and N - 1. Empty when
// the unitaries never separate (Theta == 0).
std::optional<int> min_copies_perfect(const Channel& u1, const Channel& u2);

// Copies sufficient to tell apart m unitaries pairwise: sum of the m - 1
// largest pairwise copy counts. Throws InvalidState when some pair never
// separates.
int copies_upper_bound(const std::vector<Channel>& unitaries);

// Ensemble of special unitaries on C^2: every member unitary within
// tol::unitary and |det - 1| <= tol::det_one.
struct SU2Ensemble {
    ProbVector weights;
    std::vector<ComplexMatrix> unitaries;

    SU2Ensemble(ProbVector w, std::vector<ComplexMatrix> u);
    int size() const { return weights.size(); }
    ChannelEnsemble to_channels() const;
};

// Closed-form distinguishability of an SU(2) ensemble: the entropy of the
// Gram matrix sqrt(p_i p_j) tr(U_i^dag U_j) / 2, attained at a maximally
// entangled probe.
struct SU2Result {
    double value = 0.0;
    ComplexMatrix gram;
};

SU2Result su2_distinguishability(const SU2Ensemble& e);

// Haar-random special unitary on C^2.
ComplexMatrix random_su2(std::uint64_t seed);

// The reference pair of three-element uniform SU(2) ensembles whose
// pairwise overlaps and distinguishability order in opposite directions.
std::pair<SU2Ensemble, SU2Ensemble> reference_su2_pair();

// |tr(U_i^dag U_j)| / 2 for i < j in lexicographic pair order.
std::vector<double> pairwise_overlaps(const SU2Ensemble& e);

struct ParadoxHit {
    SU2Ensemble more_overlapping;   // every pairwise |tr/2| larger
    SU2Ensemble less_overlapping;
    std::vector<double> overlaps_more;
    std::vector<double> overlaps_less;
    double value_more = 0.0;        // yet the larger distinguishability
    double value_less = 0.0;
};

struct ParadoxConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    double margin = 1e-6;
    bool random_weights = false;   // default: uniform weights on both triples
};

struct ParadoxResult {
    bool reference_pair_qualifies = false;
    std::vector<ParadoxHit> hits;
};

// Random search over pairs of three-element uniform SU(2) ensembles for
// cases where every pairwise overlap is strictly larger on one side while
// its distinguishability is strictly larger too. Always evaluates the
// bundled reference pair first.
ParadoxResult paradox_search(const ParadoxConfig& cfg);

struct OrderWitness {
    StateEnsemble sharper_fidelity;     // smaller pairwise fidelity ...
    StateEnsemble duller_fidelity;
    double fidelity_sharper = 0.0;
    double fidelity_duller = 0.0;
    double holevo_sharper = 0.0;        // ... yet smaller Holevo quantity
    double holevo_duller = 0.0;
};

struct OrderSearchConfig {
    std::uint64_t seed = 1;
    int trials = 200;
    double margin = 1e-6;
    bool pure_only = false;   // pure pairs admit no witness; used as a control
};

// Random search over pairs of two-member qubit ensembles (shared weights)
// for witnesses where the fidelity order and the Holevo order disagree.
// Best effort: may return no witnesses for small trial counts.
std::vector<OrderWitness> order_disagreement_search(const OrderSearchConfig& cfg);

// One-shot accessible-information proxy: maximizes the Holevo quantity
// jointly over the prior (squared-normalized reals) and the probe.
OptimizationResult capacity(const std::vector<Channel>& channels, const OptimizerConfig& cfg = {});

// Finite-copy separation evidence for two channels: minimized output
// fidelity of the n-fold tensor powers (n = 1 or 2). `consistent` records
// whether the bound stayed away from zero.
struct EbCopyReport {
    int copies = 0;
    double fidelity_bound = 0.0;
    bool consistent = false;
};

EbCopyReport eb_finite_copy_check(const Channel& e1, const Channel& e2, int copies,
                                  const OptimizerConfig& cfg = {});

} // namespace qdist
