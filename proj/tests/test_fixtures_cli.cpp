#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paths.hpp"
#include "qdist/fixtures.hpp"

using namespace qdist;

namespace {

const char* kBundled[] = {
    "ex3_u",        "ex3_v",           "pauli",          "bell_probe",
    "basis_pair",   "identical_states", "bhattacharyya_pair", "plus_zero",
    "eb_measure_reprepare", "pair_theta_pi", "pair_theta_half_pi",
    "pair_theta_quarter_pi", "trio_copies_bound"};

std::string fixture_path(const std::string& name) {
    return std::string(kFixturesDir) + "/" + name + ".json";
}

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(kCliPath) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = std::move(out);
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string drop_wall_ms(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (!contains(line, "wall_ms")) out += line + "\n";
    return out;
}

std::string scratch_file(const std::string& name, const std::string& body) {
    const std::string path = std::string(kScratchDir) + "/" + name;
    std::ofstream f(path);
    f << body;
    f.close();
    return path;
}

void check_matrix_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) CHECK(a(i, j) == b(i, j));
}

void check_round_trip_exact(const FixtureFile& a, const FixtureFile& b) {
    CHECK(a.version == b.version);
    CHECK(a.dimension == b.dimension);
    CHECK(a.comment == b.comment);
    REQUIRE(a.operations.size() == b.operations.size());
    for (size_t k = 0; k < a.operations.size(); ++k) {
        const FixtureOperation& x = a.operations[k];
        const FixtureOperation& y = b.operations[k];
        CHECK(x.type == y.type);
        CHECK(x.weight == y.weight);
        if (x.type == "unitary") check_matrix_equal(x.matrix, y.matrix);
        if (x.type == "kraus") {
            REQUIRE(x.ops.size() == y.ops.size());
            for (size_t m = 0; m < x.ops.size(); ++m) check_matrix_equal(x.ops[m], y.ops[m]);
        }
        if (x.type == "eb") {
            REQUIRE(x.eb.phis.size() == y.eb.phis.size());
            REQUIRE(x.eb.psis.size() == y.eb.psis.size());
            for (size_t m = 0; m < x.eb.phis.size(); ++m)
                for (size_t i = 0; i < x.eb.phis[m].size(); ++i)
                    CHECK(x.eb.phis[m][i] == y.eb.phis[m][i]);
            for (size_t m = 0; m < x.eb.psis.size(); ++m)
                for (size_t i = 0; i < x.eb.psis[m].size(); ++i)
                    CHECK(x.eb.psis[m][i] == y.eb.psis[m][i]);
        }
    }
    REQUIRE(a.states.size() == b.states.size());
    for (size_t k = 0; k < a.states.size(); ++k) {
        const FixtureState& x = a.states[k];
        const FixtureState& y = b.states[k];
        CHECK(x.type == y.type);
        CHECK(x.weight == y.weight);
        if (x.type == "pure") {
            REQUIRE(x.vec.size() == y.vec.size());
            for (size_t i = 0; i < x.vec.size(); ++i) CHECK(x.vec[i] == y.vec[i]);
        }
        if (x.type == "density") check_matrix_equal(x.matrix, y.matrix);
    }
}

} // namespace

TEST_SUITE("fixtures_cli") {

TEST_CASE("serialization round trips every bundled fixture exactly") {
    for (const char* name : kBundled) {
        CAPTURE(name);
        const FixtureFile loaded = load_fixture(fixture_path(name));
        CHECK(loaded.version == kFixtureVersion);
        const FixtureFile reparsed = parse_fixture(serialize_fixture(loaded));
        check_round_trip_exact(loaded, reparsed);
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_fixture("{"), InvalidState);
    CHECK_THROWS_AS(parse_fixture("[1, 2]"), InvalidState);
    CHECK_THROWS_AS(
        parse_fixture(R"({"version": "qdist-fixture/9", "dimension": 2,
            "operations": [{"type": "unitary", "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}]})"),
        InvalidState);
    CHECK_THROWS_AS(
        parse_fixture(R"({"version": "qdist-fixture/1", "dimension": 0,
            "operations": [{"type": "unitary", "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}]})"),
        InvalidState);
    CHECK_THROWS_AS(
        parse_fixture(R"({"version": "qdist-fixture/1", "dimension": 2,
            "operations": [{"type": "unitary", "matrix": [[[1],[0,0]],[[0,0],[1,0]]]}]})"),
        InvalidState);
    CHECK_THROWS_AS(
        parse_fixture(R"({"version": "qdist-fixture/1", "dimension": 2,
            "operations": [{"type": "mystery", "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}]})"),
        InvalidState);
    CHECK_THROWS_AS(parse_fixture(R"({"version": "qdist-fixture/1", "dimension": 2})"),
                    InvalidState);
    CHECK_THROWS_AS(load_fixture("/nonexistent/fixture.json"), InvalidState);
}

TEST_CASE("reference ensembles ship as fixtures") {
    const auto [ref_u, ref_v] = reference_su2_pair();
    const SU2Ensemble u = to_su2_ensemble(load_fixture(fixture_path("ex3_u")));
    const SU2Ensemble v = to_su2_ensemble(load_fixture(fixture_path("ex3_v")));
    REQUIRE(u.size() == 3);
    REQUIRE(v.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(u.weights.weights()[static_cast<size_t>(k)] -
                       ref_u.weights.weights()[static_cast<size_t>(k)]) <= 1e-15);
        CHECK(max_abs_diff(u.unitaries[static_cast<size_t>(k)],
                           ref_u.unitaries[static_cast<size_t>(k)]) <= 1e-15);
        CHECK(max_abs_diff(v.unitaries[static_cast<size_t>(k)],
                           ref_v.unitaries[static_cast<size_t>(k)]) <= 1e-15);
    }
}

TEST_CASE("every bundled fixture lowers to validated objects") {
    for (const char* name : kBundled) {
        CAPTURE(name);
        const FixtureFile f = load_fixture(fixture_path(name));
        if (!f.operations.empty()) {
            for (const Channel& ch : to_channels(f)) CHECK(validate(ch).pass);
        }
        if (!f.states.empty()) {
            const StateEnsemble se = to_state_ensemble(f);
            CHECK(se.size() == static_cast<int>(f.states.size()));
        }
    }
}

TEST_CASE("digest and number formatting primitives") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(format_real(0.5) == "0.5");
    const std::string third = format_real(1.0 / 3.0);
    CHECK(std::stod(third) == 1.0 / 3.0);
}

TEST_CASE("cli quantities match their closed forms") {
    const CliResult holevo = run_cli("holevo " + fixture_path("basis_pair"));
    CHECK(holevo.exit_code == 0);
    CHECK(contains(holevo.output, "value = 1.000000"));

    const CliResult fid = run_cli("fidelity " + fixture_path("bhattacharyya_pair"));
    CHECK(fid.exit_code == 0);
    CHECK(contains(fid.output, "value = 0.948683"));

    const CliResult su2_u = run_cli("su2 " + fixture_path("ex3_u"));
    CHECK(su2_u.exit_code == 0);
    CHECK(contains(su2_u.output, "value = 1.138089"));
    CHECK(contains(su2_u.output, "bound: exact"));

    const CliResult su2_v = run_cli("su2 " + fixture_path("ex3_v"));
    CHECK(su2_v.exit_code == 0);
    CHECK(contains(su2_v.output, "value = 1.117994"));

    const CliResult pair = run_cli("pair " + fixture_path("pair_theta_half_pi"));
    CHECK(pair.exit_code == 0);
    CHECK(contains(pair.output, "value = 0.707107"));

    const CliResult copies = run_cli("min-copies " + fixture_path("pair_theta_half_pi"));
    CHECK(copies.exit_code == 0);
    CHECK(contains(copies.output, "copies = 2"));

    const std::string twin = scratch_file("twin_identity.json", R"({
  "version": "qdist-fixture/1",
  "dimension": 2,
  "operations": [
    {"type": "unitary", "weight": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]},
    {"type": "unitary", "weight": 0.5, "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}
  ]
})");
    const CliResult never = run_cli("min-copies " + twin);
    CHECK(never.exit_code == 0);
    CHECK(contains(never.output, "copies = never"));

    const CliResult misuse = run_cli("min-copies " + fixture_path("identical_states"));
    CHECK(misuse.exit_code == 2);

    const CliResult bound = run_cli("copies-bound " + fixture_path("trio_copies_bound"));
    CHECK(bound.exit_code == 0);
    CHECK(contains(bound.output, "copies_bound = 8"));
}

TEST_CASE("cli search reports are deterministic json") {
    const std::string args = "dist-ops " + fixture_path("pauli") + " --restarts 4 --output json";
    const CliResult first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(first.output);
    CHECK(doc.at("value").get<double>() >= 1.999);
    CHECK(doc.at("value").get<double>() <= 2.0 + 1e-9);
    CHECK(doc.at("bound").get<std::string>() == "lower");
    CHECK(doc.at("settings").at("restarts").get<int>() == 4);
    CHECK(doc.at("digest").get<std::string>().size() == 16);
    CHECK(doc.contains("wall_ms"));
    CHECK(doc.at("diagnostics").at("per_restart_values").size() == 4);

    const CliResult second = run_cli(args);
    REQUIRE(second.exit_code == 0);
    CHECK(drop_wall_ms(first.output) == drop_wall_ms(second.output));
}

TEST_CASE("cli failure modes exit with code two") {
    const CliResult missing = run_cli("holevo /nonexistent/nope.json");
    CHECK(missing.exit_code == 2);
    CHECK(contains(missing.output, "error:"));

    const std::string bad_unitary = scratch_file("bad_unitary.json", R"({
  "version": "qdist-fixture/1",
  "dimension": 2,
  "operations": [
    {"type": "unitary", "weight": 1.0, "matrix": [[[1,0],[0,0]],[[0,0],[0.5,0]]]}
  ]
})");
    const CliResult invalid = run_cli("dist-ops " + bad_unitary + " --restarts 1");
    CHECK(invalid.exit_code == 2);
    CHECK(contains(invalid.output, "error:"));

    const std::string det_minus = scratch_file("det_minus_one.json", R"({
  "version": "qdist-fixture/1",
  "dimension": 2,
  "operations": [
    {"type": "unitary", "weight": 1.0, "matrix": [[[1,0],[0,0]],[[0,0],[-1,0]]]}
  ]
})");
    const CliResult not_su2 = run_cli("su2 " + det_minus);
    CHECK(not_su2.exit_code == 2);
    CHECK(contains(not_su2.output, "error:"));

    CHECK(run_cli("fidelity " + fixture_path("ex3_u")).exit_code == 2);
    CHECK(run_cli("verify --suite nope").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli searches and suites run end to end") {
    const CliResult paradox = run_cli("paradox --trials 5 --verify-ex3");
    CHECK(paradox.exit_code == 0);
    CHECK(contains(paradox.output, "ex3: PARADOX CONFIRMED"));

    const CliResult order = run_cli("order-search --trials 0");
    CHECK(order.exit_code == 0);
    CHECK(contains(order.output, "witnesses: 0"));

    const CliResult suite = run_cli("verify --suite majorization --trials 50");
    CHECK(suite.exit_code == 0);
    CHECK(contains(suite.output, "result: pass"));

    const CliResult eb = run_cli("eb-check " + fixture_path("eb_measure_reprepare") +
                                 " --restarts 2 --max-iters 150");
    CHECK(eb.exit_code == 0);
    CHECK(contains(eb.output, "consistent: yes"));
}

} // TEST_SUITE
