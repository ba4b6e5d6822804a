#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdist/distinguish.hpp"
#include "qdist/fixtures.hpp"
#include "qdist/suites.hpp"

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Options {
    std::string fixture;
    std::string output = "text";
    std::uint64_t seed = 1;
    int restarts = 64;
    int max_iters = 2000;
    double tol = 1e-7;
    int trials = -1;
    int copies = 1;
    bool verify_ex3 = false;
    bool pure_only = false;
    bool random_weights = false;
    std::string suite;
};

std::string fmt6(double x) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.6f", x);
    return b;
}

ordered_json complex_json(qdist::Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vector_json(const std::vector<qdist::Complex>& v) {
    ordered_json a = ordered_json::array();
    for (qdist::Complex z : v) a.push_back(complex_json(z));
    return a;
}

ordered_json matrix_json(const qdist::ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json weights_json(const qdist::ProbVector& w) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < w.size(); ++i) a.push_back(w[i]);
    return a;
}

std::string joined6(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt6(v[i]);
    }
    return s;
}

// Report body: insertion-ordered JSON document plus parallel text lines.
struct Report {
    ordered_json doc;
    std::vector<std::string> lines;

    explicit Report(const std::string& command) {
        doc["command"] = command;
        lines.push_back("command: " + command);
    }
    void field(const std::string& key, const ordered_json& v, const std::string& text_line) {
        doc[key] = v;
        if (!text_line.empty()) lines.push_back(text_line);
    }
    void json_only(const std::string& key, ordered_json v) { doc[key] = std::move(v); }
    void text_only(std::string line) { lines.push_back(std::move(line)); }
};

struct LoadedFixture {
    std::string path;
    std::string bytes;
    qdist::FixtureFile file;
};

LoadedFixture read_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qdist::InvalidState("cannot read fixture file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    LoadedFixture lf;
    lf.path = path;
    lf.bytes = ss.str();
    lf.file = qdist::parse_fixture(lf.bytes);
    return lf;
}

void stamp_input(Report& r, const LoadedFixture& lf) {
    r.field("input", lf.path, "input: " + lf.path);
    const std::string digest = qdist::fnv1a_hex(lf.bytes);
    r.field("digest", digest, "digest: " + digest);
}

void stamp_params(Report& r, const std::string& params) {
    r.json_only("input", "(parameters)");
    const std::string digest = qdist::fnv1a_hex(params);
    r.field("digest", digest, "digest: " + digest);
}

qdist::OptimizerConfig make_config(const Options& o) {
    qdist::OptimizerConfig cfg;
    cfg.restarts = o.restarts;
    cfg.max_iters = o.max_iters;
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    return cfg;
}

void stamp_search(Report& r, const Options& o, const qdist::OptimizationResult& res) {
    r.field("seed", o.seed, "seed: " + std::to_string(o.seed));
    ordered_json settings;
    settings["restarts"] = o.restarts;
    settings["max_iters"] = o.max_iters;
    settings["tol"] = o.tol;
    r.json_only("settings", settings);
    r.field("value", res.value, "value = " + fmt6(res.value));
    r.field("bound", qdist::to_string(res.bound), std::string("bound: ") + qdist::to_string(res.bound));
    if (res.prior) {
        std::vector<double> p;
        for (int i = 0; i < res.prior->size(); ++i) p.push_back((*res.prior)[i]);
        r.field("prior", weights_json(*res.prior), "prior = " + joined6(p));
    }
    r.json_only("probe", vector_json(res.probe.amplitudes()));
    ordered_json diag;
    diag["converged"] = res.converged;
    diag["restarts_run"] = res.restarts_run;
    diag["per_restart_values"] = res.per_restart_values;
    r.json_only("diagnostics", diag);
    r.text_only(std::string("converged: ") + (res.converged ? "yes" : "no"));
}

int emit(Report& r, const Options& o, Clock::time_point t0, int code) {
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (o.output == "json") {
        r.doc["wall_ms"] = ms;
        std::cout << r.doc.dump(2) << "\n";
    } else {
        for (const std::string& l : r.lines) std::cout << l << "\n";
        std::printf("wall_ms: %.3f\n", ms);
    }
    return code;
}

int cmd_entropy(const Options& o) {
    const auto t0 = Clock::now();
    Report r("entropy");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const qdist::StateEnsemble se = qdist::to_state_ensemble(lf.file);
    const double v = qdist::von_neumann_entropy(se.average());
    r.field("value", v, "value = " + fmt6(v));
    return emit(r, o, t0, 0);
}

int cmd_holevo(const Options& o) {
    const auto t0 = Clock::now();
    Report r("holevo");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const double v = qdist::holevo_quantity(qdist::to_state_ensemble(lf.file));
    r.field("value", v, "value = " + fmt6(v));
    return emit(r, o, t0, 0);
}

int cmd_fidelity(const Options& o) {
    const auto t0 = Clock::now();
    Report r("fidelity");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const qdist::StateEnsemble se = qdist::to_state_ensemble(lf.file);
    if (se.size() != 2) throw qdist::InvalidState("fidelity needs a fixture with exactly two states");
    const double v = qdist::uhlmann_fidelity(se.states[0], se.states[1]);
    r.field("value", v, "value = " + fmt6(v));
    return emit(r, o, t0, 0);
}

int cmd_dist_ops(const Options& o) {
    const auto t0 = Clock::now();
    Report r("dist-ops");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const qdist::ChannelEnsemble ens = qdist::to_channel_ensemble(lf.file);
    const qdist::OptimizationResult res = qdist::dist_ops(ens, make_config(o));
    stamp_search(r, o, res);
    return emit(r, o, t0, 0);
}

int cmd_fid_ops(const Options& o) {
    const auto t0 = Clock::now();
    Report r("fid-ops");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const std::vector<qdist::Channel> chs = qdist::to_channels(lf.file);
    if (chs.size() != 2) throw qdist::InvalidState("fid-ops needs a fixture with exactly two operations");
    const qdist::OptimizationResult res = qdist::fidelity_ops(chs[0], chs[1], make_config(o));
    stamp_search(r, o, res);
    return emit(r, o, t0, 0);
}

int cmd_capacity(const Options& o) {
    const auto t0 = Clock::now();
    Report r("capacity");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const qdist::OptimizationResult res = qdist::capacity(qdist::to_channels(lf.file), make_config(o));
    stamp_search(r, o, res);
    return emit(r, o, t0, 0);
}

int cmd_su2(const Options& o) {
    const auto t0 = Clock::now();
    Report r("su2");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const qdist::SU2Ensemble e = qdist::to_su2_ensemble(lf.file);
    const qdist::SU2Result res = qdist::su2_distinguishability(e);
    r.field("value", res.value, "value = " + fmt6(res.value));
    r.field("bound", "exact", "bound: exact");
    const std::vector<double> overlaps = qdist::pairwise_overlaps(e);
    r.field("overlaps", overlaps, "overlaps = " + joined6(overlaps));
    return emit(r, o, t0, 0);
}

int cmd_pair(const Options& o) {
    const auto t0 = Clock::now();
    Report r("pair");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const std::vector<qdist::Channel> chs = qdist::to_channels(lf.file);
    if (chs.size() != 2) throw qdist::InvalidState("pair needs a fixture with exactly two operations");
    const double v = qdist::two_unitary_min_overlap(chs[0], chs[1]);
    r.field("value", v, "value = " + fmt6(v));
    r.field("bound", "exact", "bound: exact");
    return emit(r, o, t0, 0);
}

int cmd_min_copies(const Options& o) {
    const auto t0 = Clock::now();
    Report r("min-copies");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const std::vector<qdist::Channel> chs = qdist::to_channels(lf.file);
    if (chs.size() != 2) throw qdist::InvalidState("min-copies needs a fixture with exactly two operations");
    const auto copies = qdist::min_copies_perfect(chs[0], chs[1]);
    if (copies) {
        r.field("copies", *copies, "copies = " + std::to_string(*copies));
    } else {
        r.field("copies", nullptr, "copies = never");
    }
    r.field("bound", "exact", "bound: exact");
    return emit(r, o, t0, 0);
}

int cmd_copies_bound(const Options& o) {
    const auto t0 = Clock::now();
    Report r("copies-bound");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const std::vector<qdist::Channel> chs = qdist::to_channels(lf.file);
    if (chs.size() < 2) throw qdist::InvalidState("copies-bound needs at least two operations");
    const int n = qdist::copies_upper_bound(chs);
    r.field("copies_bound", n, "copies_bound = " + std::to_string(n));
    r.field("bound", "upper", "bound: upper");
    return emit(r, o, t0, 0);
}

int cmd_eb_check(const Options& o) {
    const auto t0 = Clock::now();
    Report r("eb-check");
    const LoadedFixture lf = read_fixture(o.fixture);
    stamp_input(r, lf);
    const std::vector<qdist::Channel> chs = qdist::to_channels(lf.file);
    if (chs.size() != 2) throw qdist::InvalidState("eb-check needs a fixture with exactly two operations");
    const qdist::EbCopyReport rep = qdist::eb_finite_copy_check(chs[0], chs[1], o.copies, make_config(o));
    r.field("seed", o.seed, "seed: " + std::to_string(o.seed));
    r.field("copies", rep.copies, "copies: " + std::to_string(rep.copies));
    r.field("value", rep.fidelity_bound, "value = " + fmt6(rep.fidelity_bound));
    r.field("bound", "upper", "bound: upper");
    r.field("consistent", rep.consistent,
            std::string("consistent: ") + (rep.consistent ? "yes" : "no"));
    return emit(r, o, t0, 0);
}

ordered_json su2_json(const qdist::SU2Ensemble& e) {
    ordered_json out;
    out["weights"] = weights_json(e.weights);
    ordered_json us = ordered_json::array();
    for (const qdist::ComplexMatrix& u : e.unitaries) us.push_back(matrix_json(u));
    out["unitaries"] = us;
    return out;
}

int cmd_paradox(const Options& o) {
    const auto t0 = Clock::now();
    Report r("paradox");
    qdist::ParadoxConfig pc;
    pc.seed = o.seed;
    pc.trials = o.trials < 0 ? 100 : o.trials;
    pc.random_weights = o.random_weights;
    std::string params = "paradox seed=" + std::to_string(pc.seed) + " trials=" + std::to_string(pc.trials);
    if (pc.random_weights) params += " random-weights";
    stamp_params(r, params);
    r.field("seed", pc.seed, "seed: " + std::to_string(pc.seed));
    r.field("trials", pc.trials, "trials: " + std::to_string(pc.trials));

    const qdist::ParadoxResult res = qdist::paradox_search(pc);
    const char* ex3 = res.reference_pair_qualifies ? "PARADOX CONFIRMED" : "NOT CONFIRMED";
    r.field("ex3", ex3, std::string("ex3: ") + ex3);
    r.field("hits", static_cast<int>(res.hits.size()), "hits: " + std::to_string(res.hits.size()));

    ordered_json hits = ordered_json::array();
    for (size_t k = 0; k < res.hits.size(); ++k) {
        const qdist::ParadoxHit& h = res.hits[k];
        ordered_json hj;
        hj["overlaps_more"] = h.overlaps_more;
        hj["overlaps_less"] = h.overlaps_less;
        hj["value_more"] = h.value_more;
        hj["value_less"] = h.value_less;
        hj["more_overlapping"] = su2_json(h.more_overlapping);
        hj["less_overlapping"] = su2_json(h.less_overlapping);
        hits.push_back(std::move(hj));
        r.text_only("hit " + std::to_string(k) + ": D " + fmt6(h.value_more) + " > " + fmt6(h.value_less) +
                    " while overlaps (" + joined6(h.overlaps_more) + ") > (" + joined6(h.overlaps_less) + ")");
    }
    r.json_only("hit_list", std::move(hits));
    return emit(r, o, t0, o.verify_ex3 && !res.reference_pair_qualifies ? 1 : 0);
}

ordered_json state_ensemble_json(const qdist::StateEnsemble& e) {
    ordered_json out;
    out["weights"] = weights_json(e.weights);
    ordered_json states = ordered_json::array();
    for (const qdist::DensityMatrix& s : e.states) states.push_back(matrix_json(s.mat()));
    out["states"] = states;
    return out;
}

int cmd_order_search(const Options& o) {
    const auto t0 = Clock::now();
    Report r("order-search");
    qdist::OrderSearchConfig oc;
    oc.seed = o.seed;
    oc.trials = o.trials < 0 ? 200 : o.trials;
    oc.pure_only = o.pure_only;
    std::string params = "order-search seed=" + std::to_string(oc.seed) + " trials=" + std::to_string(oc.trials);
    if (oc.pure_only) params += " pure-only";
    stamp_params(r, params);
    r.field("seed", oc.seed, "seed: " + std::to_string(oc.seed));
    r.field("trials", oc.trials, "trials: " + std::to_string(oc.trials));

    const std::vector<qdist::OrderWitness> ws = qdist::order_disagreement_search(oc);
    r.field("witnesses", static_cast<int>(ws.size()), "witnesses: " + std::to_string(ws.size()));
    ordered_json list = ordered_json::array();
    for (size_t k = 0; k < ws.size(); ++k) {
        const qdist::OrderWitness& w = ws[k];
        ordered_json wj;
        wj["fidelity_sharper"] = w.fidelity_sharper;
        wj["fidelity_duller"] = w.fidelity_duller;
        wj["holevo_sharper"] = w.holevo_sharper;
        wj["holevo_duller"] = w.holevo_duller;
        wj["sharper_fidelity"] = state_ensemble_json(w.sharper_fidelity);
        wj["duller_fidelity"] = state_ensemble_json(w.duller_fidelity);
        list.push_back(std::move(wj));
        r.text_only("witness " + std::to_string(k) + ": fidelity " + fmt6(w.fidelity_sharper) + " < " +
                    fmt6(w.fidelity_duller) + " yet holevo " + fmt6(w.holevo_sharper) + " < " +
                    fmt6(w.holevo_duller));
    }
    r.json_only("witness_list", std::move(list));
    return emit(r, o, t0, 0);
}

int cmd_verify(const Options& o) {
    const auto t0 = Clock::now();
    Report r("verify");
    const qdist::SuiteReport rep = qdist::run_suite(o.suite, o.trials < 0 ? 0 : o.trials, o.seed);
    stamp_params(r, "verify suite=" + rep.suite + " trials=" + std::to_string(rep.trials) +
                        " seed=" + std::to_string(o.seed));
    r.field("seed", o.seed, "seed: " + std::to_string(o.seed));
    r.field("suite", rep.suite, "suite: " + rep.suite);
    r.field("trials", rep.trials, "trials: " + std::to_string(rep.trials));
    r.field("failures", rep.failures, "failures: " + std::to_string(rep.failures));
    {
        char b[64];
        std::snprintf(b, sizeof(b), "%.3e", rep.worst_violation);
        r.field("worst_violation", rep.worst_violation, std::string("worst_violation = ") + b);
    }
    r.json_only("notes", rep.notes);
    for (const std::string& n : rep.notes) r.text_only("note: " + n);
    r.field("pass", rep.pass, std::string("result: ") + (rep.pass ? "pass" : "fail"));
    return emit(r, o, t0, rep.pass ? 0 : 1);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distinguishability numerics for quantum states and operations"};
    app.require_subcommand(1);
    Options o;

    const auto add_output = [&o](CLI::App* sub) {
        sub->add_option("--output", o.output, "Report format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    const auto add_fixture = [&o, &add_output](CLI::App* sub) {
        sub->add_option("fixture", o.fixture, "Fixture file")->required();
        add_output(sub);
    };
    const auto add_search = [&o](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Random stream seed");
        sub->add_option("--restarts", o.restarts, "Search restarts");
        sub->add_option("--tol", o.tol, "Convergence window tolerance");
        sub->add_option("--max-iters", o.max_iters, "Iteration cap per restart");
    };

    add_fixture(app.add_subcommand("entropy", "Entropy of the fixture's average state"));
    add_fixture(app.add_subcommand("holevo", "Holevo quantity of the fixture's state ensemble"));
    add_fixture(app.add_subcommand("fidelity", "Fidelity of the fixture's two states"));

    CLI::App* dist = app.add_subcommand("dist-ops", "Entangled-probe distinguishability of the operations");
    add_fixture(dist);
    add_search(dist);
    CLI::App* fid = app.add_subcommand("fid-ops", "Minimized output fidelity of the two operations");
    add_fixture(fid);
    add_search(fid);
    CLI::App* cap = app.add_subcommand("capacity", "Joint prior and probe ascent over the operations");
    add_fixture(cap);
    add_search(cap);

    add_fixture(app.add_subcommand("su2", "Closed-form distinguishability of an SU(2) ensemble"));
    add_fixture(app.add_subcommand("pair", "Minimal probe overlap of two unitaries"));
    add_fixture(app.add_subcommand("min-copies", "Copies needed for perfect discrimination"));
    add_fixture(app.add_subcommand("copies-bound", "Pairwise-sum copy bound for the unitaries"));

    CLI::App* eb = app.add_subcommand("eb-check", "Finite-copy fidelity bound for two operations");
    add_fixture(eb);
    add_search(eb);
    eb->add_option("--copies", o.copies, "Tensor copies (1 or 2)")->check(CLI::Range(1, 2));

    CLI::App* par = app.add_subcommand("paradox", "Search for overlap/distinguishability order reversals");
    add_output(par);
    par->add_option("--seed", o.seed, "Random stream seed");
    par->add_option("--trials", o.trials, "Random pairs to try");
    par->add_flag("--verify-ex3", o.verify_ex3, "Exit nonzero unless the reference pair qualifies");
    par->add_flag("--random-weights", o.random_weights, "Draw random weights instead of uniform");

    CLI::App* ord = app.add_subcommand("order-search", "Search for fidelity/Holevo order disagreements");
    add_output(ord);
    ord->add_option("--seed", o.seed, "Random stream seed");
    ord->add_option("--trials", o.trials, "Random ensembles to try");
    ord->add_flag("--pure-only", o.pure_only, "Restrict to pure states (control; no witnesses exist)");

    CLI::App* ver = app.add_subcommand("verify", "Run a property suite");
    add_output(ver);
    ver->add_option("--suite", o.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember(qdist::suite_names()));
    ver->add_option("--trials", o.trials, "Trial count (0 = suite default)");
    ver->add_option("--seed", o.seed, "Random stream seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "entropy") return cmd_entropy(o);
        if (name == "holevo") return cmd_holevo(o);
        if (name == "fidelity") return cmd_fidelity(o);
        if (name == "dist-ops") return cmd_dist_ops(o);
        if (name == "fid-ops") return cmd_fid_ops(o);
        if (name == "capacity") return cmd_capacity(o);
        if (name == "su2") return cmd_su2(o);
        if (name == "pair") return cmd_pair(o);
        if (name == "min-copies") return cmd_min_copies(o);
        if (name == "copies-bound") return cmd_copies_bound(o);
        if (name == "eb-check") return cmd_eb_check(o);
        if (name == "paradox") return cmd_paradox(o);
        if (name == "order-search") return cmd_order_search(o);
        if (name == "verify") return cmd_verify(o);
    } catch (const qdist::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: unknown command\n";
    return 2;
}
