#include "qdist/distinguish.hpp"

#include <algorithm>
#include <cmath>

namespace qdist {

namespace {

constexpr double kPi = 3.14159265358979323846;

void matmul_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
}

// Holevo quantity of a channel ensemble at a pure probe, evaluated through
// Gram matrices of the propagated Kraus pieces. For a probe reshaped to a
// matrix Phi, (A (x) id) vec(Phi) = vec(A Phi), so each output state is a
// mixture of the pure pieces A_ij Phi and its spectrum is the spectrum of
// their Gram matrix.
class HolevoEvaluator {
public:
    explicit HolevoEvaluator(const ChannelEnsemble& e)
        : din_(e.dim_in()), phi_(e.dim_in(), e.dim_in()) {
        for (int i = 0; i < e.size(); ++i) {
            const auto& ops = e.channels[static_cast<size_t>(i)].kraus_ops();
            member_offset_.push_back(total_rank_);
            member_rank_.push_back(static_cast<int>(ops.size()));
            for (const ComplexMatrix& a : ops) {
                ops_.push_back(a);
                psi_.emplace_back(a.rows(), a.cols());
                total_rank_ += 1;
            }
        }
        raw_gram_ = ComplexMatrix(total_rank_, total_rank_);
        scaled_gram_ = ComplexMatrix(total_rank_, total_rank_);
    }

    int probe_coords() const { return 2 * din_ * din_; }

    // x holds 2 d^2 reals encoding the probe amplitudes; the scale is
    // divided out so off-sphere finite-difference points stay valid.
    double value(const double* x, const ProbVector& weights) {
        double nrm = 0.0;
        for (int k = 0; k < 2 * din_ * din_; ++k) nrm += x[static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        nrm = std::sqrt(nrm);
        for (int a = 0; a < din_; ++a)
            for (int b = 0; b < din_; ++b) {
                const size_t k = 2 * static_cast<size_t>(a * din_ + b);
                phi_(a, b) = Complex(x[k] / nrm, x[k + 1] / nrm);
            }
        for (size_t k = 0; k < ops_.size(); ++k) matmul_into(ops_[k], phi_, psi_[k]);

        for (int j = 0; j < total_rank_; ++j)
            for (int k = j; k < total_rank_; ++k) {
                Complex dot = 0.0;
                const auto& pj = psi_[static_cast<size_t>(j)].data();
                const auto& pk = psi_[static_cast<size_t>(k)].data();
                for (size_t c = 0; c < pj.size(); ++c) dot += std::conj(pj[c]) * pk[c];
                raw_gram_(j, k) = dot;
                raw_gram_(k, j) = std::conj(dot);
            }

        double members = 0.0;
        const int n = static_cast<int>(member_rank_.size());
        for (int i = 0; i < n; ++i) {
            if (weights[i] <= 0.0) continue;
            const int r = member_rank_[static_cast<size_t>(i)];
            const int off = member_offset_[static_cast<size_t>(i)];
            if (r == 1) continue;   // pure output, zero entropy
            ComplexMatrix block(r, r);
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) block(j, k) = raw_gram_(off + j, off + k);
            members += weights[i] * entropy_of_values(hermitian_eigenvalues(block));
        }

        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double s = std::sqrt(weights[i] * weights[k]);
                for (int j = 0; j < member_rank_[static_cast<size_t>(i)]; ++j)
                    for (int l = 0; l < member_rank_[static_cast<size_t>(k)]; ++l) {
                        const int row = member_offset_[static_cast<size_t>(i)] + j;
                        const int col = member_offset_[static_cast<size_t>(k)] + l;
                        scaled_gram_(row, col) = s * raw_gram_(row, col);
                    }
            }
        const double avg = entropy_of_values(hermitian_eigenvalues(scaled_gram_));
        return std::max(avg - members, 0.0);
    }

private:
    int din_ = 0;
    int total_rank_ = 0;
    std::vector<int> member_offset_;
    std::vector<int> member_rank_;
    std::vector<ComplexMatrix> ops_;
    std::vector<ComplexMatrix> psi_;
    ComplexMatrix phi_;
    ComplexMatrix raw_gram_;
    ComplexMatrix scaled_gram_;
};

PureState probe_from_coords(const std::vector<double>& x, int dim) {
    std::vector<Complex> amp(static_cast<size_t>(dim));
    double norm = 0.0;
    for (int i = 0; i < dim; ++i) {
        amp[static_cast<size_t>(i)] = Complex(x[2 * static_cast<size_t>(i)], x[2 * static_cast<size_t>(i) + 1]);
        norm += std::norm(amp[static_cast<size_t>(i)]);
    }
    norm = std::sqrt(norm);
    for (Complex& z : amp) z /= norm;
    return PureState(std::move(amp));
}

} // namespace

double ensemble_holevo_at(const ChannelEnsemble& e, const PureState& probe) {
    if (probe.dim() != e.dim_in() * e.dim_in())
        throw DimensionMismatch("probe must live on dim_in x dim_in");
    HolevoEvaluator eval(e);
    std::vector<double> x(static_cast<size_t>(eval.probe_coords()));
    for (int i = 0; i < probe.dim(); ++i) {
        x[2 * static_cast<size_t>(i)] = probe[i].real();
        x[2 * static_cast<size_t>(i) + 1] = probe[i].imag();
    }
    return eval.value(x.data(), e.weights);
}

OptimizationResult dist_ops(const ChannelEnsemble& e, const OptimizerConfig& cfg) {
    HolevoEvaluator eval(e);
    const auto objective = [&](const std::vector<double>& x) {
        return eval.value(x.data(), e.weights);
    };
    const SphereSearchResult res = maximize_on_spheres({eval.probe_coords()}, objective, cfg);

    OptimizationResult out;
    out.value = res.value;
    out.probe = probe_from_coords(res.point, e.dim_in() * e.dim_in());
    out.restarts_run = res.restarts_run;
    out.converged = res.converged;
    out.per_restart_values = res.per_restart_values;
    out.bound = BoundKind::lower;
    return out;
}

OptimizationResult fidelity_ops(const Channel& e1, const Channel& e2, const OptimizerConfig& cfg) {
    if (e1.dim_in() != e2.dim_in() || e1.dim_out() != e2.dim_out())
        throw DimensionMismatch("fidelity search needs channels on common dimensions");
    const int d = e1.dim_in();
    const int dext = e1.dim_out() * d;
    const bool pure_outputs = e1.kraus_ops().size() == 1 && e2.kraus_ops().size() == 1;

    ComplexMatrix phi(d, d);
    ComplexMatrix psi1(e1.dim_out(), d);
    ComplexMatrix psi2(e2.dim_out(), d);

    const auto fidelity_at = [&](const std::vector<double>& x) {
        double nrm = 0.0;
        for (double c : x) nrm += c * c;
        nrm = std::sqrt(nrm);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const size_t k = 2 * static_cast<size_t>(a * d + b);
                phi(a, b) = Complex(x[k] / nrm, x[k + 1] / nrm);
            }
        if (pure_outputs) {
            matmul_into(e1.kraus_ops().front(), phi, psi1);
            matmul_into(e2.kraus_ops().front(), phi, psi2);
            Complex dot = 0.0;
            for (size_t c = 0; c < psi1.data().size(); ++c)
                dot += std::conj(psi1.data()[c]) * psi2.data()[c];
            return std::min(std::abs(dot), 1.0);
        }
        ComplexMatrix rho1(dext, dext);
        ComplexMatrix rho2(dext, dext);
        for (const ComplexMatrix& a : e1.kraus_ops()) {
            matmul_into(a, phi, psi1);
            const auto& v = psi1.data();
            for (int r = 0; r < dext; ++r)
                for (int c = 0; c < dext; ++c) rho1(r, c) += v[static_cast<size_t>(r)] * std::conj(v[static_cast<size_t>(c)]);
        }
        for (const ComplexMatrix& a : e2.kraus_ops()) {
            matmul_into(a, phi, psi2);
            const auto& v = psi2.data();
            for (int r = 0; r < dext; ++r)
                for (int c = 0; c < dext; ++c) rho2(r, c) += v[static_cast<size_t>(r)] * std::conj(v[static_cast<size_t>(c)]);
        }
        return uhlmann_fidelity(DensityMatrix::trusted(std::move(rho1)),
                                DensityMatrix::trusted(std::move(rho2)));
    };

    const auto objective = [&](const std::vector<double>& x) { return -fidelity_at(x); };
    const SphereSearchResult res = maximize_on_spheres({2 * d * d}, objective, cfg);

    OptimizationResult out;
    out.value = std::clamp(-res.value, 0.0, 1.0);
    out.probe = probe_from_coords(res.point, d * d);
    out.restarts_run = res.restarts_run;
    out.converged = res.converged;
    out.per_restart_values.reserve(res.per_restart_values.size());
    for (double v : res.per_restart_values) out.per_restart_values.push_back(-v);
    out.bound = BoundKind::upper;
    return out;
}

namespace {

const ComplexMatrix& require_unitary(const Channel& ch, const char* what) {
    if (ch.kind() != ChannelKind::unitary || !ch.unitary_matrix().has_value())
        throw InvalidChannel(what);
    return *ch.unitary_matrix();
}

std::vector<double> relative_phases(const Channel& u1, const Channel& u2) {
    const ComplexMatrix& a = require_unitary(u1, "overlap geometry needs unitary channels");
    const ComplexMatrix& b = require_unitary(u2, "overlap geometry needs unitary channels");
    if (a.rows() != b.rows()) throw DimensionMismatch("unitary pair dimensions differ");
    const ComplexMatrix w = a.dagger() * b;
    std::vector<double> phases;
    for (Complex z : unitary_eigenvalues(w)) phases.push_back(std::arg(z));
    return phases;
}

double minor_arc(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    if (d > kPi) d = 2.0 * kPi - d;
    return d;
}

// Origin containment for points on the unit circle: no angular gap may
// exceed pi.
bool circle_set_contains_origin(std::vector<double> phases, double angle_tol) {
    for (double& p : phases) {
        p = std::fmod(p, 2.0 * kPi);
        if (p < 0.0) p += 2.0 * kPi;
    }
    std::sort(phases.begin(), phases.end());
    double max_gap = phases.front() + 2.0 * kPi - phases.back();
    for (size_t i = 1; i < phases.size(); ++i)
        max_gap = std::max(max_gap, phases[i] - phases[i - 1]);
    return max_gap <= kPi + angle_tol;
}

// Distinct phase sums over multisets of `copies` picks from `phases`.
void product_phases(const std::vector<double>& phases, int copies, int first, double acc,
                    std::vector<double>& out) {
    if (copies == 0) {
        out.push_back(acc);
        return;
    }
    for (int i = first; i < static_cast<int>(phases.size()); ++i)
        product_phases(phases, copies - 1, i, acc + phases[static_cast<size_t>(i)], out);
}

} // namespace

double two_unitary_min_overlap(const Channel& u1, const Channel& u2) {
    const ComplexMatrix& a = require_unitary(u1, "overlap geometry needs unitary channels");
    const ComplexMatrix& b = require_unitary(u2, "overlap geometry needs unitary channels");
    if (a.rows() != b.rows()) throw DimensionMismatch("unitary pair dimensions differ");
    return convex_hull_origin_distance(unitary_eigenvalues(a.dagger() * b));
}

std::optional<int> min_copies_perfect(const Channel& u1, const Channel& u2) {
    const std::vector<double> phases = relative_phases(u1, u2);
    double theta = 0.0;
    for (size_t i = 0; i < phases.size(); ++i)
        for (size_t j = i + 1; j < phases.size(); ++j)
            theta = std::max(theta, minor_arc(phases[i], phases[j]));
    if (theta <= 1e-9) return std::nullopt;

    // the widest pair alone closes the circle after ceil(pi / theta) copies
    const int limit = static_cast<int>(std::ceil(kPi / theta - 1e-12));
    std::vector<double> sums;
    for (int n = 1; n <= limit; ++n) {
        sums.clear();
        product_phases(phases, n, 0, 0.0, sums);
        if (sums.size() > 4000000u)
            throw NonConvergence("copy scan point set is too large for this spectrum");
        if (circle_set_contains_origin(sums, 1e-9)) return n;
    }
    throw NonConvergence("copy scan exceeded its arc bound");
}

int copies_upper_bound(const std::vector<Channel>& unitaries) {
    const int m = static_cast<int>(unitaries.size());
    if (m < 2) throw InvalidState("pairwise copy bound needs at least two unitaries");
    std::vector<int> counts;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const std::optional<int> n =
                min_copies_perfect(unitaries[static_cast<size_t>(i)], unitaries[static_cast<size_t>(j)]);
            if (!n.has_value())
                throw InvalidState("a pair of the collection never becomes perfectly distinguishable");
            counts.push_back(*n);
        }
    std::sort(counts.begin(), counts.end(), std::greater<int>());
    int total = 0;
    for (int k = 0; k < m - 1; ++k) total += counts[static_cast<size_t>(k)];
    return total;
}

SU2Ensemble::SU2Ensemble(ProbVector w, std::vector<ComplexMatrix> u)
    : weights(std::move(w)), unitaries(std::move(u)) {
    if (weights.size() != static_cast<int>(unitaries.size()))
        throw DimensionMismatch("ensemble weight and unitary counts differ");
    for (const ComplexMatrix& m : unitaries) {
        if (m.rows() != 2 || m.cols() != 2) throw DimensionMismatch("special unitaries must be 2x2");
        if (max_abs_diff(m * m.dagger(), ComplexMatrix::identity(2)) > tol::unitary)
            throw InvalidChannel("ensemble member is not unitary");
        const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (std::abs(det - Complex(1.0, 0.0)) > tol::det_one)
            throw InvalidChannel("ensemble member determinant is not one");
    }
}

ChannelEnsemble SU2Ensemble::to_channels() const {
    std::vector<Channel> chans;
    chans.reserve(unitaries.size());
    for (const ComplexMatrix& u : unitaries) chans.push_back(Channel::unitary(u));
    return ChannelEnsemble(weights, std::move(chans));
}

SU2Result su2_distinguishability(const SU2Ensemble& e) {
    const int n = e.size();
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex tr = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    tr += std::conj(e.unitaries[static_cast<size_t>(i)](a, b)) *
                          e.unitaries[static_cast<size_t>(j)](a, b);
            const Complex z = std::sqrt(e.weights[i] * e.weights[j]) * tr * 0.5;
            g(i, j) = z;
            g(j, i) = std::conj(z);
        }
        g(i, i) = g(i, i).real();
    }
    SU2Result out;
    out.gram = g;
    out.value = entropy_of_values(hermitian_eigenvalues(g));
    return out;
}

ComplexMatrix random_su2(std::uint64_t seed) {
    ComplexMatrix u = random_unitary(2, seed);
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const double half = 0.5 * std::arg(det);
    return u * Complex(std::cos(half), -std::sin(half));
}

std::pair<SU2Ensemble, SU2Ensemble> reference_su2_pair() {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);

    const double cos_a = s3 / 4.0 - 1.0 / s2;
    const double sin_a = std::sqrt(1.0 - cos_a * cos_a);
    const Complex ea(cos_a, -sin_a);   // e^{-i alpha}, sin(alpha) >= 0
    const double r13 = 1.0 / s3;
    const double r23 = std::sqrt(2.0 / 3.0);

    std::vector<ComplexMatrix> us;
    us.push_back(ComplexMatrix::identity(2));
    us.push_back(ComplexMatrix::from_rows({{1.0 / s2, 1.0 / s2}, {-1.0 / s2, 1.0 / s2}}));
    us.push_back(ComplexMatrix::from_rows({{r13, r23 * ea}, {-r23 * std::conj(ea), r13}}));

    const double cos_b = -1.0 / std::sqrt(2.1 * 1.1);
    const double sin_b = std::sqrt(1.0 - cos_b * cos_b);
    const Complex eb(cos_b, -sin_b);   // e^{-i beta}, sin(beta) >= 0
    const double q12 = std::sqrt(1.0 / 2.1);
    const double q112 = std::sqrt(1.1 / 2.1);
    const double q13 = std::sqrt(1.0 / 3.1);
    const double q213 = std::sqrt(2.1 / 3.1);

    std::vector<ComplexMatrix> vs;
    vs.push_back(ComplexMatrix::identity(2));
    vs.push_back(ComplexMatrix::from_rows({{q12, q112}, {-q112, q12}}));
    vs.push_back(ComplexMatrix::from_rows({{q13, q213 * eb}, {-q213 * std::conj(eb), q13}}));

    return {SU2Ensemble(ProbVector::uniform(3), std::move(us)),
            SU2Ensemble(ProbVector::uniform(3), std::move(vs))};
}

std::vector<double> pairwise_overlaps(const SU2Ensemble& e) {
    std::vector<double> out;
    for (int i = 0; i < e.size(); ++i)
        for (int j = i + 1; j < e.size(); ++j) {
            Complex tr = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    tr += std::conj(e.unitaries[static_cast<size_t>(i)](a, b)) *
                          e.unitaries[static_cast<size_t>(j)](a, b);
            out.push_back(0.5 * std::abs(tr));
        }
    return out;
}

namespace {

std::optional<ParadoxHit> paradox_hit(const SU2Ensemble& a, const SU2Ensemble& b, double margin) {
    const std::vector<double> oa = pairwise_overlaps(a);
    const std::vector<double> ob = pairwise_overlaps(b);
    for (size_t k = 0; k < oa.size(); ++k)
        if (oa[k] - ob[k] < margin) return std::nullopt;
    const double va = su2_distinguishability(a).value;
    const double vb = su2_distinguishability(b).value;
    if (va - vb < margin) return std::nullopt;
    ParadoxHit hit{a, b, oa, ob, va, vb};
    return hit;
}

} // namespace

ParadoxResult paradox_search(const ParadoxConfig& cfg) {
    if (cfg.trials < 0) throw InvalidState("negative trial count");
    ParadoxResult result;
    const auto [ref_u, ref_v] = reference_su2_pair();
    result.reference_pair_qualifies = paradox_hit(ref_u, ref_v, cfg.margin).has_value();

    for (int t = 0; t < cfg.trials; ++t) {
        std::vector<ComplexMatrix> ua;
        std::vector<ComplexMatrix> ub;
        for (int k = 0; k < 3; ++k) {
            const std::uint64_t sa = cfg.seed + static_cast<std::uint64_t>(6 * t + k + 1) * 0x9E3779B97F4A7C15ULL;
            const std::uint64_t sb = cfg.seed + static_cast<std::uint64_t>(6 * t + k + 4) * 0x9E3779B97F4A7C15ULL;
            ua.push_back(random_su2(sa));
            ub.push_back(random_su2(sb));
        }
        ProbVector wa = ProbVector::uniform(3);
        ProbVector wb = ProbVector::uniform(3);
        if (cfg.random_weights) {
            Rng wrng = Rng::stream(cfg.seed + 0x517CC1B727220A95ULL, static_cast<std::uint64_t>(t));
            auto draw = [&wrng]() {
                std::vector<double> w(3);
                double sum = 0.0;
                for (double& x : w) {
                    const double g = wrng.gaussian();
                    x = g * g + 1e-6;
                    sum += x;
                }
                for (double& x : w) x /= sum;
                return ProbVector(std::move(w));
            };
            wa = draw();
            wb = draw();
        }
        const SU2Ensemble ea(std::move(wa), std::move(ua));
        const SU2Ensemble eb(std::move(wb), std::move(ub));
        if (auto hit = paradox_hit(ea, eb, cfg.margin)) {
            result.hits.push_back(std::move(*hit));
        } else if (auto swapped = paradox_hit(eb, ea, cfg.margin)) {
            result.hits.push_back(std::move(*swapped));
        }
    }
    return result;
}

namespace {

DensityMatrix random_qubit_mixed(Rng& rng) {
    std::vector<Complex> v(4);
    double n = 0.0;
    for (Complex& z : v) {
        z = rng.complex_gaussian();
        n += std::norm(z);
    }
    n = std::sqrt(n);
    ComplexMatrix full(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            full(i, j) = (v[static_cast<size_t>(i)] / n) * std::conj(v[static_cast<size_t>(j)] / n);
    ComplexMatrix red = partial_trace(full, 2, 2, Subsystem::A);
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            const Complex z = 0.5 * (red(i, j) + std::conj(red(j, i)));
            red(i, j) = z;
            red(j, i) = std::conj(z);
        }
    return DensityMatrix::trusted(std::move(red));
}

DensityMatrix random_qubit_pure(Rng& rng) {
    std::vector<Complex> v(2);
    double n = 0.0;
    for (Complex& z : v) {
        z = rng.complex_gaussian();
        n += std::norm(z);
    }
    n = std::sqrt(n);
    for (Complex& z : v) z /= n;
    return DensityMatrix::from_pure(PureState(std::move(v)));
}

} // namespace

std::vector<OrderWitness> order_disagreement_search(const OrderSearchConfig& cfg) {
    if (cfg.trials < 0) throw InvalidState("negative trial count");
    std::vector<OrderWitness> out;
    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
        const double p = 0.05 + 0.9 * rng.uniform01();
        const ProbVector weights({p, 1.0 - p});
        auto draw = [&]() { return cfg.pure_only ? random_qubit_pure(rng) : random_qubit_mixed(rng); };
        const DensityMatrix a1 = draw();
        const DensityMatrix a2 = draw();
        const DensityMatrix b1 = draw();
        const DensityMatrix b2 = draw();

        const double fa = uhlmann_fidelity(a1, a2);
        const double fb = uhlmann_fidelity(b1, b2);
        const StateEnsemble ea(weights, {a1, a2});
        const StateEnsemble eb(weights, {b1, b2});
        const double ha = holevo_quantity(ea);
        const double hb = holevo_quantity(eb);

        // sharper by fidelity (smaller F) yet duller by Holevo (smaller chi)
        if (fb - fa >= cfg.margin && hb - ha >= cfg.margin) {
            out.push_back(OrderWitness{ea, eb, fa, fb, ha, hb});
        } else if (fa - fb >= cfg.margin && ha - hb >= cfg.margin) {
            out.push_back(OrderWitness{eb, ea, fb, fa, hb, ha});
        }
    }
    return out;
}

OptimizationResult capacity(const std::vector<Channel>& channels, const OptimizerConfig& cfg) {
    if (channels.empty()) throw InvalidState("capacity needs at least one channel");
    const int m = static_cast<int>(channels.size());
    const ChannelEnsemble fixed(ProbVector::uniform(m), channels);
    HolevoEvaluator eval(fixed);

    std::vector<double> w(static_cast<size_t>(m));
    const auto objective = [&](const std::vector<double>& x) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) {
            w[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
            sum += w[static_cast<size_t>(i)];
        }
        for (double& wi : w) wi /= sum;
        return eval.value(x.data() + m, ProbVector(w));
    };

    const SphereSearchResult res = maximize_on_spheres({m, eval.probe_coords()}, objective, cfg);

    OptimizationResult out;
    out.value = res.value;
    const std::vector<double> probe_part(res.point.begin() + m, res.point.end());
    out.probe = probe_from_coords(probe_part, fixed.dim_in() * fixed.dim_in());
    out.restarts_run = res.restarts_run;
    out.converged = res.converged;
    out.per_restart_values = res.per_restart_values;
    out.bound = BoundKind::lower;
    std::vector<double> prior(static_cast<size_t>(m));
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
        prior[static_cast<size_t>(i)] = res.point[static_cast<size_t>(i)] * res.point[static_cast<size_t>(i)];
        sum += prior[static_cast<size_t>(i)];
    }
    for (double& p : prior) p /= sum;
    out.prior = ProbVector(prior);
    return out;
}

EbCopyReport eb_finite_copy_check(const Channel& e1, const Channel& e2, int copies,
                                  const OptimizerConfig& cfg) {
    if (copies != 1 && copies != 2) throw InvalidState("finite-copy check supports 1 or 2 copies");
    EbCopyReport report;
    report.copies = copies;
    if (copies == 1) {
        report.fidelity_bound = fidelity_ops(e1, e2, cfg).value;
    } else {
        report.fidelity_bound = fidelity_ops(compose_tensor(e1, e1), compose_tensor(e2, e2), cfg).value;
    }
    report.consistent = report.fidelity_bound > 1e-3;
    return report;
}

} // namespace qdist
