#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdist {

// Result of a randomized property suite. `worst_violation` is the largest
// observed excess over the suite's tolerance-free ideal (0 when every
// trial satisfied the property exactly or within noise).
struct SuiteReport {
    std::string suite;
    int trials = 0;
    int failures = 0;
    double worst_violation = 0.0;
    bool pass = false;
    std::vector<std::string> notes;   // one entry per failing trial
};

// Registered suite names:
//   holevo-mono     information never grows under channels or discarding
//   fidelity-mono   fidelity never shrinks under channels or discarding
//   prop2           post-processing cannot raise distinguishability
//   prop3           composed ensembles stay below the sum of parts
//   prop4           tensor pairs bracket the sum of parts
//   prop8           optimizer agrees with the SU(2) closed form
//   majorization    spectrum of a half-mixture is majorized by the original
//   channel-laws    trace, positivity, linearity, dilation, separability
std::vector<std::string> suite_names();

// Per-suite default trial counts (optimizer-heavy suites default low).
int suite_default_trials(const std::string& name);

// Runs `trials` seeded trials of the named suite. trials <= 0 selects the
// suite default. Throws UnknownSuite for unregistered names.
SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed);

} // namespace qdist
