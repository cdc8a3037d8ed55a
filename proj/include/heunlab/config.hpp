#pragma once

// Experiment configuration: a flat key=value file plus command-line
// overrides; flags always win over the file.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "heunlab/couplings.hpp"

namespace heun {

enum class ExperimentKind { spectrum, svd, orbit, special_cases, rank_one, tau_probe };

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_string(std::string_view s);

enum class OutputFormat { json, csv };

struct ExperimentConfig {
    double r = 1.0;
    double alpha = 1.0;
    double epsilon = 1e-12;
    int basis_size = 48;
    int quad_size = 48;
    std::optional<CouplingVector> g;
    std::string preset;
    ExperimentKind experiment = ExperimentKind::special_cases;
    std::string out_path;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 12345;

    // Resolves preset/explicit coupling; throws usage_error on conflicts or
    // invalid numbers.  Called before any computation.
    void validate() const;
    CouplingVector coupling() const; // resolved g (preset wins if both unset -> error)
};

// Raised for malformed configuration or command lines; maps to exit code 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key=value parser ('#' comments, blank lines ignored).  Unknown keys
// are rejected so typos cannot silently change an experiment.
ExperimentConfig load_config_file(const std::string& path, const ExperimentConfig& base = {});

// Parses "g0,g1,g2,g3".
CouplingVector parse_coupling(const std::string& text);

} // namespace heun
