// Command-line front end.  Each verb runs one experiment and emits a JSON or
// CSV report.  Exit codes: 0 all comparisons passed, 1 any failed, 2 usage
// or configuration error, 3 inconclusive or informative-only outcome.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "heunlab/errors.hpp"
#include "heunlab/experiments.hpp"
#include "heunlab/presets.hpp"

namespace {

struct RawOptions {
    std::string config_file;
    double r = 0, alpha = 0, eps = 0;
    int basis_size = 0, quad_size = 0;
    std::string g_text, preset, out_path, format;
    std::uint64_t seed = 0;
};

void attach_common(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--config", raw.config_file, "flat key = value file; flags override it");
    cmd->add_option("--r", raw.r, "inverse length scale (real period pi/r)");
    cmd->add_option("--alpha", raw.alpha, "imaginary period scale");
    cmd->add_option("--g", raw.g_text, "couplings g0,g1,g2,g3");
    cmd->add_option("--preset", raw.preset, "named coupling preset (see --list-presets)");
    cmd->add_option("--basis-size", raw.basis_size, "Galerkin basis size M");
    cmd->add_option("--quad-size", raw.quad_size, "quadrature / discretization size N");
    cmd->add_option("--eps", raw.eps, "series precision target");
    cmd->add_option("--out", raw.out_path, "output path (default: stdout)");
    cmd->add_option("--format", raw.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", raw.seed, "seed for sampled couplings");
}

heun::ExperimentConfig merge(const CLI::App* cmd, const RawOptions& raw, heun::ExperimentKind kind) {
    heun::ExperimentConfig cfg;
    if (cmd->count("--config")) cfg = heun::load_config_file(raw.config_file, cfg);
    if (cmd->count("--r")) cfg.r = raw.r;
    if (cmd->count("--alpha")) cfg.alpha = raw.alpha;
    if (cmd->count("--eps")) cfg.epsilon = raw.eps;
    if (cmd->count("--basis-size")) cfg.basis_size = raw.basis_size;
    if (cmd->count("--quad-size")) cfg.quad_size = raw.quad_size;
    if (cmd->count("--g")) cfg.g = heun::parse_coupling(raw.g_text);
    if (cmd->count("--preset")) cfg.preset = raw.preset;
    if (cmd->count("--out")) cfg.out_path = raw.out_path;
    if (cmd->count("--format")) cfg.format = raw.format == "csv" ? heun::OutputFormat::csv
                                                                 : heun::OutputFormat::json;
    if (cmd->count("--seed")) cfg.seed = raw.seed;
    cfg.experiment = kind;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral experiments for the four-coupling elliptic operator family"};
    app.require_subcommand(0, 1);
    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print the named coupling presets and exit");

    RawOptions raw;
    struct Verb {
        const char* name;
        const char* help;
        heun::ExperimentKind kind;
        CLI::App* cmd = nullptr;
    };
    Verb verbs[] = {
        {"spectrum", "eigenvalues of the differential operator at one coupling",
         heun::ExperimentKind::spectrum},
        {"svd", "singular values of the integral operator at one coupling",
         heun::ExperimentKind::svd},
        {"orbit", "spectra across the full 24-element coupling orbit", heun::ExperimentKind::orbit},
        {"special-cases", "all closed-form ladders against the computed spectra",
         heun::ExperimentKind::special_cases},
        {"rank-one", "zero-half-sum couplings: ground energy route agreement",
         heun::ExperimentKind::rank_one},
        {"tau-probe", "ordering/pairing evidence for the singular value conjecture",
         heun::ExperimentKind::tau_probe},
    };
    for (auto& v : verbs) {
        v.cmd = app.add_subcommand(v.name, v.help);
        attach_common(v.cmd, raw);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list_presets) {
        for (const auto& p : heun::all_presets()) {
            std::cout << p.name << " = (" << p.g[0] << "," << p.g[1] << "," << p.g[2] << ","
                      << p.g[3] << ")  " << p.note << "\n";
        }
        return 0;
    }

    const Verb* chosen = nullptr;
    for (auto& v : verbs)
        if (v.cmd->parsed()) chosen = &v;
    if (!chosen) {
        std::cerr << app.help() << std::endl;
        return 2;
    }

    try {
        const heun::ExperimentConfig cfg = merge(chosen->cmd, raw, chosen->kind);
        const heun::Report rep = heun::run_experiment(cfg);
        rep.write();
        return heun::exit_code_for(rep);
    } catch (const heun::usage_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const heun::domain_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 1;
    }
}
