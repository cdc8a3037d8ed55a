#pragma once

// Machine-readable experiment reports.  Every comparison row cites the
// formula (or cross-method) its reference value came from; a row without a
// reference is explicitly tagged "none".

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heunlab/config.hpp"

namespace heun {

struct ComparisonItem {
    std::string quantity;  // e.g. "nu", "E", "E0"
    int index = 0;
    double value = 0.0;
    std::optional<double> reference;
    std::string reference_source; // formula text, "cross-method: ...", or ""
    std::string provenance;       // "closed-form" | "cross-method" | "none"
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool converged = false;
};

struct CriterionResult {
    std::string name;
    std::string formula;     // what was compared, citable
    double max_rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct Report {
    ExperimentConfig config;
    std::string experiment;
    std::vector<ComparisonItem> items;
    std::vector<CriterionResult> criteria;
    std::vector<std::string> notes;
    nlohmann::json extra; // experiment-specific payload (e.g. the orbit table)
    double wall_ms = 0.0;
    std::string status; // "pass" | "fail" | "inconclusive" | "warning"

    void add_comparison(const std::string& quantity, int index, double value,
                        std::optional<double> reference, const std::string& source,
                        const std::string& provenance, bool converged);
    // criterion from the current items matching `quantity`
    void add_criterion(const std::string& name, const std::string& formula, double tolerance);
    void finalize_status(); // pass unless any criterion failed; notes may downgrade

    nlohmann::json to_json() const;
    std::string to_csv() const; // index,value,reference,abs_err,rel_err,converged

    // serializes to out_path (or stdout when empty) in config.format
    void write() const;
};

} // namespace heun
