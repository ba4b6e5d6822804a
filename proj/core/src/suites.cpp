#include "qdist/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdist/distinguish.hpp"
#include "qdist/qchannel.hpp"
#include "qdist/qstate.hpp"

namespace qdist {

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t salt) {
    return seed + (trial * 64 + salt + 1) * 0x9E3779B97F4A7C15ULL;
}

DensityMatrix random_density(int d, Rng& rng) {
    std::vector<Complex> v(static_cast<size_t>(d) * static_cast<size_t>(d));
    double n = 0.0;
    for (Complex& z : v) {
        z = rng.complex_gaussian();
        n += std::norm(z);
    }
    n = std::sqrt(n);
    ComplexMatrix red(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Complex z = 0.0;
            for (int k = 0; k < d; ++k)
                z += (v[static_cast<size_t>(i * d + k)] / n) * std::conj(v[static_cast<size_t>(j * d + k)] / n);
            red(i, j) = z;
            red(j, i) = std::conj(z);
        }
    return DensityMatrix::trusted(std::move(red));
}

ProbVector random_weights(int n, Rng& rng) {
    std::vector<double> w(static_cast<size_t>(n));
    double sum = 0.0;
    for (double& x : w) {
        const double g = rng.gaussian();
        x = g * g + 1e-6;
        sum += x;
    }
    for (double& x : w) x /= sum;
    return ProbVector(std::move(w));
}

SU2Ensemble random_su2_ensemble(int n, std::uint64_t seed, Rng& rng) {
    std::vector<ComplexMatrix> us;
    us.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) us.push_back(random_su2(sub_seed(seed, 0, static_cast<std::uint64_t>(k))));
    return SU2Ensemble(random_weights(n, rng), std::move(us));
}

struct TrialTracker {
    SuiteReport report;

    explicit TrialTracker(std::string name) { report.suite = std::move(name); }

    void record(int trial, double violation, double tolerance, const char* what) {
        report.worst_violation = std::max(report.worst_violation, violation);
        if (violation > tolerance) {
            report.failures += 1;
            std::ostringstream os;
            os << "trial " << trial << ": " << what << " exceeded by " << (violation - tolerance);
            report.notes.push_back(os.str());
        }
    }

    SuiteReport finish(int trials) {
        report.trials = trials;
        report.pass = report.failures == 0;
        return report;
    }
};

double min_eigenvalue(const ComplexMatrix& m) {
    ComplexMatrix h(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    return hermitian_eigenvalues(h).back();
}

SuiteReport run_holevo_mono(int trials, std::uint64_t seed) {
    TrialTracker t("holevo-mono");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int d = 2 + rng.below(3);
        const int n = 2 + rng.below(2);
        const ProbVector w = random_weights(n, rng);
        std::vector<DensityMatrix> states;
        for (int i = 0; i < n; ++i) states.push_back(random_density(d, rng));
        const StateEnsemble in(w, states);
        const double chi_in = holevo_quantity(in);

        const int rank = 1 + rng.below(std::min(4, d * d));
        const Channel ch = random_channel(d, rank, sub_seed(seed, static_cast<std::uint64_t>(trial), 1));
        std::vector<DensityMatrix> outs;
        for (const DensityMatrix& rho : states) outs.push_back(apply(ch, rho));
        const double chi_out = holevo_quantity(StateEnsemble(w, std::move(outs)));
        t.record(trial, chi_out - chi_in, 1e-8, "channel action raised the Holevo quantity");

        const int db = 2 + rng.below(2);
        std::vector<DensityMatrix> joint;
        std::vector<DensityMatrix> reduced;
        for (int i = 0; i < n; ++i) {
            joint.push_back(random_density(2 * db, rng));
            ComplexMatrix red = partial_trace(joint.back().mat(), 2, db, Subsystem::A);
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b) {
                    const Complex z = 0.5 * (red(a, b) + std::conj(red(b, a)));
                    red(a, b) = z;
                    red(b, a) = std::conj(z);
                }
            reduced.push_back(DensityMatrix::trusted(std::move(red)));
        }
        const double chi_joint = holevo_quantity(StateEnsemble(w, std::move(joint)));
        const double chi_reduced = holevo_quantity(StateEnsemble(w, std::move(reduced)));
        t.record(trial, chi_reduced - chi_joint, 1e-8, "discarding a subsystem raised the Holevo quantity");
    }
    return t.finish(trials);
}

SuiteReport run_fidelity_mono(int trials, std::uint64_t seed) {
    TrialTracker t("fidelity-mono");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int d = 2 + rng.below(3);
        const DensityMatrix r1 = random_density(d, rng);
        const DensityMatrix r2 = random_density(d, rng);
        const double f_in = uhlmann_fidelity(r1, r2);

        const int rank = 1 + rng.below(std::min(4, d * d));
        const Channel ch = random_channel(d, rank, sub_seed(seed, static_cast<std::uint64_t>(trial), 1));
        const double f_out = uhlmann_fidelity(apply(ch, r1), apply(ch, r2));
        t.record(trial, f_in - f_out, 1e-8, "channel action lowered the fidelity");

        const int db = 2 + rng.below(2);
        const DensityMatrix j1 = random_density(2 * db, rng);
        const DensityMatrix j2 = random_density(2 * db, rng);
        const double f_joint = uhlmann_fidelity(j1, j2);
        auto reduce = [&](const DensityMatrix& rho) {
            ComplexMatrix red = partial_trace(rho.mat(), 2, db, Subsystem::A);
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b) {
                    const Complex z = 0.5 * (red(a, b) + std::conj(red(b, a)));
                    red(a, b) = z;
                    red(b, a) = std::conj(z);
                }
            return DensityMatrix::trusted(std::move(red));
        };
        const double f_reduced = uhlmann_fidelity(reduce(j1), reduce(j2));
        t.record(trial, f_joint - f_reduced, 1e-8, "discarding a subsystem lowered the fidelity");
    }
    return t.finish(trials);
}

OptimizerConfig small_search_config(std::uint64_t seed, int restarts, int max_iters) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    return cfg;
}

SuiteReport run_prop2(int trials, std::uint64_t seed) {
    TrialTracker t("prop2");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int n = 2 + rng.below(3);
        const SU2Ensemble e = random_su2_ensemble(n, sub_seed(seed, static_cast<std::uint64_t>(trial), 2), rng);
        const double closed = su2_distinguishability(e).value;

        const int rank = 1 + rng.below(4);
        const Channel post = random_channel(2, rank, sub_seed(seed, static_cast<std::uint64_t>(trial), 3));
        std::vector<Channel> composed;
        for (const ComplexMatrix& u : e.unitaries)
            composed.push_back(compose_sequential(post, Channel::unitary(u)));
        const ChannelEnsemble degraded(e.weights, std::move(composed));

        const OptimizerConfig cfg = small_search_config(sub_seed(seed, static_cast<std::uint64_t>(trial), 4), 6, 400);
        const double v = dist_ops(degraded, cfg).value;
        t.record(trial, v - closed, 1e-3, "post-processing raised distinguishability");
    }
    return t.finish(trials);
}

SuiteReport run_prop3(int trials, std::uint64_t seed) {
    TrialTracker t("prop3");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const SU2Ensemble e = random_su2_ensemble(2 + rng.below(2), sub_seed(seed, static_cast<std::uint64_t>(trial), 2), rng);
        const SU2Ensemble f = random_su2_ensemble(2 + rng.below(2), sub_seed(seed, static_cast<std::uint64_t>(trial), 3), rng);
        const double sum = su2_distinguishability(e).value + su2_distinguishability(f).value;

        const bool swap = rng.below(2) == 1;
        std::vector<Channel> composed;
        std::vector<double> weights;
        for (int i = 0; i < e.size(); ++i)
            for (int j = 0; j < f.size(); ++j) {
                const ComplexMatrix& a = e.unitaries[static_cast<size_t>(i)];
                const ComplexMatrix& b = f.unitaries[static_cast<size_t>(j)];
                composed.push_back(Channel::unitary(swap ? b * a : a * b));
                weights.push_back(e.weights[i] * f.weights[j]);
            }
        const ChannelEnsemble chained{ProbVector(std::move(weights)), std::move(composed)};

        const OptimizerConfig cfg = small_search_config(sub_seed(seed, static_cast<std::uint64_t>(trial), 4), 6, 400);
        const double v = dist_ops(chained, cfg).value;
        t.record(trial, v - sum, 1e-3, "composition exceeded the sum of parts");
    }
    return t.finish(trials);
}

SuiteReport run_prop4(int trials, std::uint64_t seed) {
    TrialTracker t("prop4");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const SU2Ensemble e1 = random_su2_ensemble(2, sub_seed(seed, static_cast<std::uint64_t>(trial), 2), rng);
        const SU2Ensemble e2 = random_su2_ensemble(2, sub_seed(seed, static_cast<std::uint64_t>(trial), 3), rng);
        const double sum = su2_distinguishability(e1).value + su2_distinguishability(e2).value;

        std::vector<Channel> products;
        std::vector<double> weights;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                products.push_back(Channel::unitary(tensor_product(e1.unitaries[static_cast<size_t>(i)],
                                                                   e2.unitaries[static_cast<size_t>(j)])));
                weights.push_back(e1.weights[i] * e2.weights[j]);
            }
        const ChannelEnsemble pair{ProbVector(std::move(weights)), std::move(products)};

        const double at_product = ensemble_holevo_at(pair, PureState::max_entangled(4));
        t.record(trial, std::abs(at_product - sum), 1e-9, "product probe missed the sum of parts");

        const OptimizerConfig cfg = small_search_config(sub_seed(seed, static_cast<std::uint64_t>(trial), 4), 12, 2000);
        const double v = dist_ops(pair, cfg).value;
        t.record(trial, (sum - 5e-3) - v, 0.0, "optimizer fell below the additivity bracket");
        t.record(trial, v - (sum + 1e-3), 0.0, "optimizer exceeded the additivity bracket");
    }
    return t.finish(trials);
}

SuiteReport run_prop8(int trials, std::uint64_t seed) {
    TrialTracker t("prop8");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int n = 2 + rng.below(3);
        const SU2Ensemble e = random_su2_ensemble(n, sub_seed(seed, static_cast<std::uint64_t>(trial), 2), rng);
        const double closed = su2_distinguishability(e).value;
        const ChannelEnsemble chans = e.to_channels();

        const double at = ensemble_holevo_at(chans, PureState::max_entangled(2));
        t.record(trial, std::abs(at - closed), 1e-9, "entangled-probe evaluation missed the closed form");

        const OptimizerConfig cfg = small_search_config(sub_seed(seed, static_cast<std::uint64_t>(trial), 3), 8, 1500);
        const double v = dist_ops(chans, cfg).value;
        t.record(trial, std::abs(v - closed), 1e-3, "optimizer missed the closed form");
    }
    return t.finish(trials);
}

SuiteReport run_majorization(int trials, std::uint64_t seed) {
    TrialTracker t("majorization");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int d = 2 + rng.below(3);

        ComplexMatrix m(d, d);
        if (trial % 2 == 0) {
            m = random_density(d, rng).mat();
        } else {
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j < d; ++j) {
                    m(i, j) = rng.complex_gaussian();
                    m(j, i) = std::conj(m(i, j));
                }
                m(i, i) = rng.gaussian();
            }
        }

        const ComplexMatrix u = random_unitary(d, sub_seed(seed, static_cast<std::uint64_t>(trial), 1));
        ComplexMatrix g = (m + u * m * u.dagger()) * Complex(0.5, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                const Complex z = 0.5 * (g(i, j) + std::conj(g(j, i)));
                g(i, j) = z;
                g(j, i) = std::conj(z);
            }

        const std::vector<double> lm = hermitian_eigenvalues(m);
        const std::vector<double> lg = hermitian_eigenvalues(g);
        double deficit = 0.0;
        double pm = 0.0;
        double pg = 0.0;
        for (int k = 0; k < d; ++k) {
            pm += lm[static_cast<size_t>(k)];
            pg += lg[static_cast<size_t>(k)];
            deficit = std::max(deficit, pg - pm);
        }
        deficit = std::max(deficit, std::abs(pm - pg));
        if (!majorizes(lm, lg)) deficit = std::max(deficit, 2e-12);
        t.record(trial, deficit, 1e-12, "mixture spectrum escaped majorization");
    }
    return t.finish(trials);
}

SuiteReport run_channel_laws(int trials, std::uint64_t seed) {
    TrialTracker t("channel-laws");
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
        const int d = 2 + rng.below(3);
        const int rank = 1 + rng.below(std::min(4, d * d));
        const Channel ch = random_channel(d, rank, sub_seed(seed, static_cast<std::uint64_t>(trial), 1));
        const DensityMatrix rho = random_density(d, rng);

        const ComplexMatrix out_raw = apply_raw(ch, rho.mat());
        t.record(trial, std::abs(out_raw.trace().real() - 1.0), 1e-8, "trace drifted under the channel");
        t.record(trial, std::max(0.0, -min_eigenvalue(out_raw)), 1e-9, "output lost positivity");

        const DensityMatrix sigma = random_density(d, rng);
        const Complex alpha(rng.gaussian(), rng.gaussian());
        const Complex beta(rng.gaussian(), rng.gaussian());
        const ComplexMatrix mixed_in = rho.mat() * alpha + sigma.mat() * beta;
        const ComplexMatrix lhs = apply_raw(ch, mixed_in);
        const ComplexMatrix rhs = apply_raw(ch, rho.mat()) * alpha + apply_raw(ch, sigma.mat()) * beta;
        t.record(trial, max_abs_diff(lhs, rhs), 1e-10, "channel action is not linear");

        const Dilation dil = dilate(ch);
        const int r = dil.ancilla_dim;
        t.record(trial,
                 max_abs_diff(dil.unitary * dil.unitary.dagger(), ComplexMatrix::identity(d * r)),
                 1e-8, "dilation is not unitary");
        ComplexMatrix anc(r, r);
        anc(0, 0) = 1.0;
        const ComplexMatrix embedded = dil.unitary * tensor_product(rho.mat(), anc) * dil.unitary.dagger();
        const ComplexMatrix recovered = partial_trace(embedded, d, r, Subsystem::A);
        t.record(trial, max_abs_diff(recovered, out_raw), 1e-8, "dilation does not reproduce the channel");

        const int povm_n = d + rng.below(3);
        const ComplexMatrix basis = random_unitary(povm_n, sub_seed(seed, static_cast<std::uint64_t>(trial), 5));
        EbForm form;
        for (int k = 0; k < povm_n; ++k) {
            std::vector<Complex> psi;
            for (int i = 0; i < d; ++i) psi.push_back(basis(i, k));
            std::vector<Complex> phi(static_cast<size_t>(d));
            double nrm = 0.0;
            for (Complex& z : phi) {
                z = rng.complex_gaussian();
                nrm += std::norm(z);
            }
            nrm = std::sqrt(nrm);
            for (Complex& z : phi) z /= nrm;
            form.psis.push_back(std::move(psi));
            form.phis.push_back(std::move(phi));
        }
        const Channel eb = Channel::entanglement_breaking(std::move(form));
        const DensityMatrix ext = apply_extended(eb, DensityMatrix::from_pure(PureState::max_entangled(d)));
        const ComplexMatrix pt = partial_transpose(ext.mat(), d, d, Subsystem::B);
        t.record(trial, std::max(0.0, -min_eigenvalue(pt)), 1e-8, "identity extension output is not separable");
    }
    return t.finish(trials);
}

} // namespace

std::vector<std::string> suite_names() {
    return {"holevo-mono", "fidelity-mono", "prop2", "prop3", "prop4", "prop8", "majorization", "channel-laws"};
}

int suite_default_trials(const std::string& name) {
    if (name == "holevo-mono" || name == "fidelity-mono") return 300;
    if (name == "prop2" || name == "prop3") return 25;
    if (name == "prop4") return 1;
    if (name == "prop8") return 100;
    if (name == "majorization") return 500;
    if (name == "channel-laws") return 200;
    throw UnknownSuite("unknown verification suite: " + name);
}

SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed) {
    const int n = trials > 0 ? trials : suite_default_trials(name);
    if (name == "holevo-mono") return run_holevo_mono(n, seed);
    if (name == "fidelity-mono") return run_fidelity_mono(n, seed);
    if (name == "prop2") return run_prop2(n, seed);
    if (name == "prop3") return run_prop3(n, seed);
    if (name == "prop4") return run_prop4(n, seed);
    if (name == "prop8") return run_prop8(n, seed);
    if (name == "majorization") return run_majorization(n, seed);
    if (name == "channel-laws") return run_channel_laws(n, seed);
    throw UnknownSuite("unknown verification suite: " + name);
}

} // namespace qdist
