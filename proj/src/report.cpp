#include "heunlab/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace heun {

void Report::add_comparison(const std::string& quantity, int index, double value,
                            std::optional<double> reference, const std::string& source,
                            const std::string& provenance, bool converged) {
    ComparisonItem it;
    it.quantity = quantity;
    it.index = index;
    it.value = value;
    it.reference = reference;
    it.reference_source = source;
    it.provenance = provenance;
    it.converged = converged;
    if (reference) {
        it.abs_err = std::abs(value - *reference);
        const double scale = std::max(std::abs(*reference), 1e-300);
        it.rel_err = it.abs_err / scale;
    } else {
        it.abs_err = std::numeric_limits<double>::quiet_NaN();
        it.rel_err = std::numeric_limits<double>::quiet_NaN();
    }
    items.push_back(std::move(it));
}

void Report::add_criterion(const std::string& name, const std::string& formula, double tolerance) {
    CriterionResult c;
    c.name = name;
    c.formula = formula;
    c.tolerance = tolerance;
    double worst = 0.0;
    int counted = 0;
    for (const auto& it : items) {
        if (it.quantity != name || !it.reference || !it.converged) continue;
        worst = std::max(worst, it.rel_err);
        ++counted;
    }
    c.max_rel_err = worst;
    c.pass = counted > 0 && worst < tolerance;
    c.detail = std::to_string(counted) + " converged comparisons";
    criteria.push_back(std::move(c));
}

void Report::finalize_status() {
    if (status == "fail" || status == "inconclusive" || status == "warning") return;
    status = "pass";
    for (const auto& c : criteria)
        if (!c.pass) status = "fail";
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["status"] = status;
    j["wall_ms"] = wall_ms;
    nlohmann::json jc;
    jc["r"] = config.r;
    jc["alpha"] = config.alpha;
    jc["eps"] = config.epsilon;
    jc["basis_size"] = config.basis_size;
    jc["quad_size"] = config.quad_size;
    jc["seed"] = config.seed;
    if (config.g) jc["g"] = config.g->g;
    if (!config.preset.empty()) jc["preset"] = config.preset;
    jc["format"] = config.format == OutputFormat::json ? "json" : "csv";
    j["config"] = jc;

    j["items"] = nlohmann::json::array();
    for (const auto& it : items) {
        nlohmann::json ji;
        ji["quantity"] = it.quantity;
        ji["index"] = it.index;
        ji["value"] = it.value;
        if (it.reference) ji["reference"] = *it.reference;
        else ji["reference"] = nullptr;
        ji["reference_source"] = it.reference_source;
        ji["provenance"] = it.provenance;
        if (it.reference) {
            ji["abs_err"] = it.abs_err;
            ji["rel_err"] = it.rel_err;
        }
        ji["converged"] = it.converged;
        j["items"].push_back(ji);
    }
    j["criteria"] = nlohmann::json::array();
    for (const auto& c : criteria) {
        nlohmann::json jcrit;
        jcrit["name"] = c.name;
        jcrit["formula"] = c.formula;
        jcrit["max_rel_err"] = c.max_rel_err;
        jcrit["tolerance"] = c.tolerance;
        jcrit["pass"] = c.pass;
        jcrit["detail"] = c.detail;
        j["criteria"].push_back(jcrit);
    }
    j["notes"] = notes;
    if (!extra.is_null()) j["extra"] = extra;
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "index,value,reference,abs_err,rel_err,converged\n";
    out.precision(17);
    for (const auto& it : items) {
        out << it.index << ',' << it.value << ',';
        if (it.reference) out << *it.reference << ',' << it.abs_err << ',' << it.rel_err;
        else out << ",,";
        out << ',' << (it.converged ? 1 : 0) << '\n';
    }
    return out.str();
}

void Report::write() const {
    const std::string text =
        config.format == OutputFormat::json ? to_json().dump(2) + "\n" : to_csv();
    if (config.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out_path);
    if (!out) throw usage_error("report: cannot write '" + config.out_path + "'");
    out << text;
}

} // namespace heun
