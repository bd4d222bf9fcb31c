#include "femto/experiment.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace femto {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Cuts a comment starting at '#' or ';' when at line start or preceded by
// whitespace, so values themselves may not contain those characters.
std::string strip_comment(const std::string& line)
{
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if ((c == '#' || c == ';') &&
            (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
            return line.substr(0, i);
    }
    return line;
}

double parse_double(const std::string& key, const std::string& raw)
{
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size() || raw.empty() || errno == ERANGE)
        throw ConfigError("key '" + key + "': expected a number, got '" +
                          raw + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& raw)
{
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(raw.c_str(), &end, 10);
    if (end != raw.c_str() + raw.size() || raw.empty() || errno == ERANGE)
        throw ConfigError("key '" + key + "': expected an integer, got '" +
                          raw + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& raw)
{
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
    if (end != raw.c_str() + raw.size() || raw.empty() || errno == ERANGE ||
        raw.find('-') != std::string::npos)
        throw ConfigError("key '" + key +
                          "': expected an unsigned integer, got '" + raw +
                          "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& raw)
{
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("key '" + key + "': empty list entry");
        out.push_back(parse_double(key, item));
    }
    if (out.empty())
        throw ConfigError("key '" + key + "': empty list");
    return out;
}

using Setter = std::function<void(ExperimentSpec&, const std::string& key,
                                  const std::string& raw)>;

const std::map<std::string, Setter>& setters()
{
    auto dbl = [](double SystemConfig::* field) {
        return [field](ExperimentSpec& s, const std::string& k,
                       const std::string& raw) {
            s.base.*field = parse_double(k, raw);
        };
    };
    auto num = [](int SystemConfig::* field) {
        return [field](ExperimentSpec& s, const std::string& k,
                       const std::string& raw) {
            s.base.*field = static_cast<int>(parse_int(k, raw));
        };
    };
    auto prop = [](double PropagationParams::* field) {
        return [field](ExperimentSpec& s, const std::string& k,
                       const std::string& raw) {
            s.base.propagation.*field = parse_double(k, raw);
        };
    };
    auto noise = [](double NoiseParams::* field) {
        return [field](ExperimentSpec& s, const std::string& k,
                       const std::string& raw) {
            s.base.noise.*field = parse_double(k, raw);
        };
    };

    static const std::map<std::string, Setter> table = {
        {"cell_radius_m", dbl(&SystemConfig::cell_radius_m)},
        {"coverage_radius_m", dbl(&SystemConfig::coverage_radius_m)},
        {"fap_density_per_m2", dbl(&SystemConfig::fap_density_per_m2)},
        {"user_density_multiplier",
         dbl(&SystemConfig::user_density_multiplier)},
        {"n_prbs_total", num(&SystemConfig::n_prbs_total)},
        {"n_prbs_femto", num(&SystemConfig::n_prbs_femto)},
        {"p_max_dbm", dbl(&SystemConfig::p_max_dbm)},
        {"demand_bps", dbl(&SystemConfig::demand_bps)},
        {"snr_gap", dbl(&SystemConfig::snr_gap)},
        {"d_in_min_m", prop(&PropagationParams::d_in_min_m)},
        {"d_in_max_m", prop(&PropagationParams::d_in_max_m)},
        {"wall_loss_db", prop(&PropagationParams::wall_loss_db)},
        {"window_loss_db", prop(&PropagationParams::window_loss_db)},
        {"shadow_sigma_db", prop(&PropagationParams::shadow_sigma_db)},
        {"min_distance_m", prop(&PropagationParams::min_distance_m)},
        {"psd_dbm_per_hz", noise(&NoiseParams::psd_dbm_per_hz)},
        {"noise_figure_db", noise(&NoiseParams::noise_figure_db)},
        {"prb_bandwidth_hz", noise(&NoiseParams::prb_bandwidth_hz)},
        {"n_topologies", num(&SystemConfig::n_topologies)},
        {"n_channel_draws", num(&SystemConfig::n_channel_draws)},
        {"outage_fraction", dbl(&SystemConfig::outage_fraction)},
        {"eval_mode",
         [](ExperimentSpec& s, const std::string& k, const std::string& raw) {
             try {
                 s.base.eval_mode = eval_mode_from_string(raw);
             } catch (const std::exception&) {
                 throw ConfigError("key '" + k +
                                   "': expected 'ideal' or 'sinr', got '" +
                                   raw + "'");
             }
         }},
        {"coloring_strategy",
         [](ExperimentSpec& s, const std::string& k, const std::string& raw) {
             try {
                 s.base.coloring_strategy = coloring_strategy_from_string(raw);
             } catch (const std::exception&) {
                 throw ConfigError("key '" + k +
                                   "': expected 'dsatur' or 'bfs', got '" +
                                   raw + "'");
             }
         }},
        {"master_seed",
         [](ExperimentSpec& s, const std::string& k, const std::string& raw) {
             s.base.master_seed = parse_u64(k, raw);
         }},
        {"demand_sweep_bps",
         [](ExperimentSpec& s, const std::string& k, const std::string& raw) {
             s.demand_sweep_bps = parse_list(k, raw);
         }},
        {"label",
         [](ExperimentSpec& s, const std::string&, const std::string& raw) {
             s.label = raw;
         }},
        {"output_csv",
         [](ExperimentSpec& s, const std::string&, const std::string& raw) {
             s.output_csv = raw;
         }},
    };
    return table;
}

const char* const kSections[] = {"system", "propagation", "noise",
                                 "simulation", "experiment"};

void set_key(ExperimentSpec& spec, const std::string& key,
             const std::string& raw)
{
    auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown key '" + key + "'");
    it->second(spec, key, raw);
}

} // namespace

void ExperimentSpec::validate() const
{
    base.validate();
    if (demand_sweep_bps.empty())
        throw ConfigError("key 'demand_sweep_bps': sweep must be nonempty");
    for (std::size_t i = 0; i < demand_sweep_bps.size(); ++i) {
        if (!(demand_sweep_bps[i] > 0.0))
            throw ConfigError("key 'demand_sweep_bps': demands must be "
                              "positive");
        if (i > 0 && demand_sweep_bps[i] <= demand_sweep_bps[i - 1])
            throw ConfigError("key 'demand_sweep_bps': demands must be "
                              "strictly increasing");
    }
}

ExperimentSpec parse_config(const std::string& text)
{
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": unterminated section header");
            std::string section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const char* s : kSections)
                known = known || section == s;
            if (!known)
                throw ConfigError("unknown section '" + section + "'");
            continue; // sections only group keys; names stay global
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": missing key before '='");
        set_key(spec, key, value); // duplicate keys: last one wins
    }

    if (spec.demand_sweep_bps.empty())
        spec.demand_sweep_bps = {spec.base.demand_bps};
    spec.validate();
    return spec;
}

ExperimentSpec load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(ExperimentSpec& spec, const std::string& assignment)
{
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment +
                          "' is not of the form key=value");
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    if (key.empty())
        throw ConfigError("override '" + assignment + "' has an empty key");
    set_key(spec, key, value);
}

std::vector<SweepPoint> run_sweep(const ExperimentSpec& spec, int jobs)
{
    spec.validate();
    std::vector<SweepPoint> points;
    points.reserve(spec.demand_sweep_bps.size());
    for (double demand : spec.demand_sweep_bps) {
        SystemConfig cfg = spec.base;
        cfg.demand_bps = demand;
        points.push_back(run_point(cfg, jobs));
    }
    return points;
}

std::string to_csv(const std::vector<SweepPoint>& points, std::uint64_t seed)
{
    std::string out = "demand_bps,outage_mean,outage_stderr,min_rate_mean,"
                      "max_rate_mean,n_trials,seed\n";
    char buf[256];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf,
                      "%.10g,%.10g,%.10g,%.10g,%.10g,%d,%llu\n", p.demand_bps,
                      p.outage_mean, p.outage_stderr, p.min_rate_mean,
                      p.max_rate_mean, p.n_trials,
                      static_cast<unsigned long long>(seed));
        out += buf;
    }
    return out;
}

std::vector<SweepPoint> run_experiment(const ExperimentSpec& spec, int jobs)
{
    std::vector<SweepPoint> points = run_sweep(spec, jobs);
    std::string csv = to_csv(points, spec.base.master_seed);
    if (spec.output_csv.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(spec.output_csv, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write output file '" + spec.output_csv +
                              "'");
        out << csv;
        if (!out.flush())
            throw ConfigError("failed writing output file '" +
                              spec.output_csv + "'");
    }
    return points;
}

} // namespace femto
