#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "femto/experiment.hpp"
#include "femto/serialize.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string mode;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--config", o.config_path,
                    "Config file; omit for built-in defaults")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", o.sets,
                    "Override a config key, e.g. --set demand_bps=2e6 "
                    "(repeatable)");
    cmd->add_option("--seed", o.seed, "Master seed override")
        ->each([&o](const std::string&) { o.seed_given = true; });
    cmd->add_option("--mode", o.mode, "Rate evaluation mode")
        ->check(CLI::IsMember({"ideal", "sinr"}));
}

femto::ExperimentSpec build_spec(const CommonOpts& o)
{
    femto::ExperimentSpec spec = o.config_path.empty()
                                     ? femto::parse_config("")
                                     : femto::load_config(o.config_path);
    for (const auto& s : o.sets)
        femto::apply_override(spec, s);
    // Dedicated flags take precedence over --set and the file.
    if (o.seed_given)
        spec.base.master_seed = o.seed;
    if (!o.mode.empty())
        spec.base.eval_mode = femto::eval_mode_from_string(o.mode);
    if (!o.out_path.empty())
        spec.output_csv = o.out_path;
    spec.validate();
    return spec;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw femto::ConfigError("cannot write output file '" + path + "'");
    out << text;
    if (!out.flush())
        throw femto::ConfigError("failed writing output file '" + path + "'");
}

std::string trial_dump(const femto::ExperimentSpec& spec, int topology_index,
                       int draw_index)
{
    femto::SystemConfig cfg = spec.base;
    std::uint64_t tseed = femto::derive_seed(
        cfg.master_seed, femto::StreamPurpose::topology_seed,
        static_cast<std::uint64_t>(topology_index));
    std::uint64_t cseed = femto::derive_seed(
        cfg.master_seed, femto::StreamPurpose::channel_seed,
        static_cast<std::uint64_t>(topology_index),
        static_cast<std::uint64_t>(draw_index));
    femto::TrialRecord rec = femto::run_trial_record(cfg, tseed, cseed);
    return femto::trial_json(rec, cfg).dump(2) + "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Femtocell PRB allocation simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    int jobs = 1;
    std::string audit_path;
    CLI::App* run = app.add_subcommand(
        "run", "Run the demand sweep and write the results CSV");
    add_common(run, run_opts);
    run->add_option("--out", run_opts.out_path,
                    "CSV output path (default: stdout)");
    run->add_option("--jobs", jobs, "Worker threads; 0 uses all cores")
        ->check(CLI::Range(0, 4096));
    run->add_option("--audit", audit_path,
                    "Also dump a JSON audit of trial (0, 0) at the first "
                    "sweep demand");

    CommonOpts trial_opts;
    int topology_index = 0;
    int draw_index = 0;
    CLI::App* trial = app.add_subcommand(
        "trial", "Run one trial and dump every intermediate product as JSON");
    add_common(trial, trial_opts);
    trial->add_option("--out", trial_opts.out_path,
                      "JSON output path (default: stdout)");
    trial->add_option("--topology", topology_index, "Topology index")
        ->check(CLI::NonNegativeNumber);
    trial->add_option("--draw", draw_index, "Channel draw index")
        ->check(CLI::NonNegativeNumber);

    CommonOpts validate_opts;
    CLI::App* validate = app.add_subcommand(
        "validate", "Check a config file and exit");
    add_common(validate, validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            femto::ExperimentSpec spec = build_spec(run_opts);
            femto::run_experiment(spec, jobs);
            if (!audit_path.empty()) {
                femto::ExperimentSpec first = spec;
                first.base.demand_bps = spec.demand_sweep_bps.front();
                write_text(audit_path, trial_dump(first, 0, 0));
            }
        } else if (trial->parsed()) {
            femto::ExperimentSpec spec = build_spec(trial_opts);
            write_text(trial_opts.out_path,
                       trial_dump(spec, topology_index, draw_index));
        } else if (validate->parsed()) {
            femto::ExperimentSpec spec = build_spec(validate_opts);
            std::cout << "ok: " << spec.label << ", "
                      << spec.demand_sweep_bps.size() << " sweep point(s)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
