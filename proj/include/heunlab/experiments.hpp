#pragma once

// Experiment drivers behind the command-line verbs.  Each returns a Report;
// serialization and exit-code mapping live with the caller.

#include "heunlab/config.hpp"
#include "heunlab/report.hpp"

namespace heun {

Report run_spectrum(const ExperimentConfig& cfg);
Report run_svd(const ExperimentConfig& cfg);
Report run_special_cases(const ExperimentConfig& cfg);
Report run_orbit_invariance(const ExperimentConfig& cfg);
Report run_rank_one(const ExperimentConfig& cfg);
Report run_tau_probe(const ExperimentConfig& cfg);

Report run_experiment(const ExperimentConfig& cfg);

// "pass" -> 0, "fail" -> 1, "inconclusive"/"warning" -> 3 (usage errors -> 2)
int exit_code_for(const Report& rep);

} // namespace heun
