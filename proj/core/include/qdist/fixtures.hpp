#pragma once

#include <string>
#include <vector>

#include "qdist/distinguish.hpp"
#include "qdist/qchannel.hpp"
#include "qdist/qstate.hpp"

namespace qdist {

inline constexpr const char* kFixtureVersion = "qdist-fixture/1";

// One ensemble member. Exactly one payload is meaningful per type:
// "unitary" -> matrix, "kraus" -> ops, "eb" -> eb.
struct FixtureOperation {
    std::string type;
    double weight = 1.0;
    ComplexMatrix matrix;
    std::vector<ComplexMatrix> ops;
    EbForm eb;
};

// One state entry: "pure" -> vec, "density" -> matrix.
struct FixtureState {
    std::string type;
    double weight = 1.0;
    std::vector<Complex> vec;
    ComplexMatrix matrix;
};

// On-disk ensemble description. Complex numbers are [re, im] pairs and
// matrices row-major nested arrays; reals are written with 17 significant
// digits so parse -> serialize -> parse is exact on the payload.
struct FixtureFile {
    std::string version = kFixtureVersion;
    int dimension = 0;
    std::string comment;
    std::vector<FixtureOperation> operations;
    std::vector<FixtureState> states;
};

// Throws InvalidState on malformed documents or version mismatch.
FixtureFile parse_fixture(const std::string& text);
FixtureFile load_fixture(const std::string& path);
std::string serialize_fixture(const FixtureFile& f);

// Channel construction validates the payloads and throws on failure.
Channel to_channel(const FixtureOperation& op, int dimension);
std::vector<Channel> to_channels(const FixtureFile& f);
ChannelEnsemble to_channel_ensemble(const FixtureFile& f);
SU2Ensemble to_su2_ensemble(const FixtureFile& f);
StateEnsemble to_state_ensemble(const FixtureFile& f);

// 64-bit FNV-1a of the byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Shortest decimal form with 17 significant digits ("%.17g").
std::string format_real(double x);

} // namespace qdist
