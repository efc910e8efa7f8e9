// croppest: command-line front end writing CSV.
//
//   croppest simulate   [--config F] [--KEY V ...] [-o out.csv]
//   croppest equilibria ...
//   croppest stability  ... [--hopf hopf.csv]
//   croppest bifurcate  ... --parameter alpha --from 0.02 --to 0.12 --steps 50
//   croppest optimize   ... [--history hist.csv] [--freeze-u1] [--freeze-u2]

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "croppest/commands.hpp"
#include "croppest/config.hpp"
#include "croppest/errors.hpp"

using namespace croppest;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::map<std::string, std::optional<double>, std::less<>> keys;
    std::string output;
    std::string write_config;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--set", args.sets, "override as key=value (repeatable)");
    for (auto key : config_keys()) {
        auto& slot = args.keys[std::string(key)];
        sub->add_option("--" + std::string(key), slot, "override " + std::string(key))->group("Overrides");
    }
    sub->add_option("-o,--output", args.output, "CSV output file (default: stdout)");
    sub->add_option("--write-config", args.write_config, "write the effective config to this file");
}

RunConfig build_config(Command cmd, const CommonArgs& args) {
    RunConfig cfg = RunConfig::defaults_for(cmd);
    if (!args.config_path.empty()) cfg.apply_file(args.config_path);
    for (const auto& s : args.sets) cfg.apply_override(s);
    for (const auto& [key, value] : args.keys)
        if (value) cfg.set(key, *value);
    return cfg;
}

// Opens `path` for writing, or returns stdout for "" and "-".
std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
    if (path.empty() || path == "-") return std::cout;
    holder = std::make_unique<std::ofstream>(path);
    if (!*holder) throw ConfigError("cannot open output file " + path);
    return *holder;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crop-pest-awareness model: simulation, equilibria, stability, sweeps, optimal control"};
    app.require_subcommand(1);

    CommonArgs sim_args, eq_args, stab_args, bif_args, opt_args;
    auto* sim = app.add_subcommand("simulate", "integrate the uncontrolled system");
    add_common(sim, sim_args);

    auto* eq = app.add_subcommand("equilibria", "list equilibria with stability verdicts");
    add_common(eq, eq_args);

    auto* stab = app.add_subcommand("stability", "linearization table, optional Hopf scan over alpha");
    add_common(stab, stab_args);
    std::string hopf_path;
    HopfScanOptions hopf;
    stab->add_option("--hopf", hopf_path, "write a Hopf scan over alpha to this file");
    stab->add_option("--hopf-from", hopf.alpha_lo, "lower alpha of the scan")->capture_default_str();
    stab->add_option("--hopf-to", hopf.alpha_hi, "upper alpha of the scan")->capture_default_str();
    stab->add_option("--hopf-samples", hopf.n_samples, "alpha samples in the scan")->capture_default_str();

    auto* bif = app.add_subcommand("bifurcate", "parameter sweep recording tail extrema");
    add_common(bif, bif_args);
    cli::BifurcateOptions bif_opts;
    bif->add_option("--parameter", bif_opts.parameter, "model parameter to sweep")->capture_default_str();
    bif->add_option("--from", bif_opts.from, "first value")->capture_default_str();
    bif->add_option("--to", bif_opts.to, "last value")->capture_default_str();
    bif->add_option("--steps", bif_opts.steps, "number of intervals")->capture_default_str();
    bif->add_option("--transient", bif_opts.transient_fraction, "discarded leading share of the horizon")
        ->capture_default_str();
    bif->add_option("--threads", bif_opts.threads, "worker threads (0 = all cores)")->capture_default_str();

    auto* opt = app.add_subcommand("optimize", "forward-backward sweep for the optimal controls");
    add_common(opt, opt_args);
    cli::OptimizeOptions opt_opts;
    std::string history_path;
    opt->add_option("--history", history_path, "write per-iteration J and control change here");
    opt->add_flag("--freeze-u1", opt_opts.freeze_u1, "pin u1 to 0");
    opt->add_flag("--freeze-u2", opt_opts.freeze_u2, "pin u2 to 0");
    opt->add_option("--max-iterations", opt_opts.max_iterations, "sweep iteration cap")->capture_default_str();
    opt->add_option("--tolerance", opt_opts.tolerance, "relative control-change tolerance")->capture_default_str();
    opt->add_option("--theta", opt_opts.relaxation_theta, "relaxation weight in (0, 1]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kConfigFailure;
    }

    try {
        Command cmd{};
        const CommonArgs* args = nullptr;
        if (sim->parsed()) cmd = Command::Simulate, args = &sim_args;
        else if (eq->parsed()) cmd = Command::Equilibria, args = &eq_args;
        else if (stab->parsed()) cmd = Command::Stability, args = &stab_args;
        else if (bif->parsed()) cmd = Command::Bifurcate, args = &bif_args;
        else cmd = Command::Optimize, args = &opt_args;

        const RunConfig cfg = build_config(cmd, *args);
        if (!args->write_config.empty()) {
            std::ofstream f(args->write_config);
            if (!f) throw ConfigError("cannot open " + args->write_config);
            f << cfg.to_text();
        }

        std::unique_ptr<std::ofstream> out_file;
        std::ostream& out = open_output(args->output, out_file);
        switch (cmd) {
            case Command::Simulate: return cli::cmd_simulate(cfg, out, std::cerr);
            case Command::Equilibria: return cli::cmd_equilibria(cfg, out, std::cerr);
            case Command::Stability: {
                std::unique_ptr<std::ofstream> hopf_file;
                std::ostream* hopf_out = hopf_path.empty() ? nullptr : &open_output(hopf_path, hopf_file);
                return cli::cmd_stability(cfg, out, std::cerr, hopf_out, hopf);
            }
            case Command::Bifurcate: return cli::cmd_bifurcate(cfg, bif_opts, out, std::cerr);
            case Command::Optimize: {
                std::unique_ptr<std::ofstream> hist_file;
                std::ostream* hist = history_path.empty() ? nullptr : &open_output(history_path, hist_file);
                return cli::cmd_optimize(cfg, opt_opts, out, hist, std::cerr);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kConfigFailure;
    }
    return cli::kConfigFailure;
}
