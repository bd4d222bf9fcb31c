#include "femto/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "femto/channel.hpp"

namespace femto {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// One fading vector per link, spanning the whole femto band so a PRB's
// fade does not depend on which subset was granted.
std::vector<double> link_fading(std::uint64_t channel_seed, int fap, int user,
                                int n_prbs)
{
    RandomStream rng(derive_seed(channel_seed, StreamPurpose::fading,
                                 static_cast<std::uint64_t>(fap),
                                 static_cast<std::uint64_t>(user)));
    return draw_fading(n_prbs, rng);
}

TrialMetrics metrics_from_rates(const std::vector<double>& rates,
                                const SystemConfig& cfg)
{
    TrialMetrics m;
    m.user_rates = rates;
    if (rates.empty())
        return m;
    int below = 0;
    double lo = rates[0];
    double hi = rates[0];
    const double threshold = cfg.outage_fraction * cfg.demand_bps;
    for (double r : rates) {
        if (r < threshold)
            ++below;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    m.outage_rate = static_cast<double>(below) /
                    static_cast<double>(rates.size());
    m.min_rate = lo;
    m.max_rate = hi;
    return m;
}

} // namespace

TrialRecord run_trial_record(const SystemConfig& cfg,
                             std::uint64_t topology_seed,
                             std::uint64_t channel_seed)
{
    cfg.validate();

    TrialRecord rec;
    {
        RandomStream place_rng(
            derive_seed(topology_seed, StreamPurpose::placement));
        rec.topo = generate_topology(cfg, place_rng);
    }
    const int n_faps = rec.topo.n_faps();
    const int n_users = rec.topo.n_users();
    const int n_prbs = cfg.n_prbs_femto;
    const double p_max = cfg.p_max_w();

    // Long-term link states are fixed per topology draw; fading alone is
    // redrawn per channel seed.
    Matrix avg_gains(static_cast<std::size_t>(n_faps),
                     static_cast<std::size_t>(n_users));
    for (int l = 0; l < n_faps; ++l)
        for (int k = 0; k < n_users; ++k) {
            RandomStream link_rng(
                derive_seed(topology_seed, StreamPurpose::link_state,
                            static_cast<std::uint64_t>(l),
                            static_cast<std::uint64_t>(k)));
            LinkShadowState s = draw_link_shadow(cfg.propagation, link_rng);
            double d = distance(rec.topo.fap_positions[static_cast<std::size_t>(l)],
                                rec.topo.user_positions[static_cast<std::size_t>(k)]);
            avg_gains(static_cast<std::size_t>(l),
                      static_cast<std::size_t>(k)) =
                average_gain(cfg.propagation, s, d);
        }

    rec.assignment = assign_users(rec.topo, avg_gains);

    rec.loads.resize(static_cast<std::size_t>(n_faps));
    rec.demands.assign(static_cast<std::size_t>(n_faps), 0);
    for (int l = 0; l < n_faps; ++l) {
        const auto& served = rec.assignment.served_users[static_cast<std::size_t>(l)];
        if (served.empty())
            continue; // unloaded FAP requests nothing
        std::vector<UserDemand> users;
        users.reserve(served.size());
        for (int k : served)
            users.push_back({cfg.demand_bps,
                             avg_gains(static_cast<std::size_t>(l),
                                       static_cast<std::size_t>(k))});
        rec.loads[static_cast<std::size_t>(l)] =
            estimate_load(users, p_max, cfg);
        rec.demands[static_cast<std::size_t>(l)] =
            rec.loads[static_cast<std::size_t>(l)].n_l_int;
    }

    {
        InterferenceGraph ig = build_interference_graph(rec.topo);
        ExpandedGraph eg = expand_graph(ig, rec.demands);
        rec.coloring = cfg.coloring_strategy == ColoringStrategy::dsatur
                           ? dsatur_color(eg, n_prbs)
                           : greedy_bfs_color(eg, n_prbs);
        rec.prbs = assignment_from_coloring(eg, rec.coloring);
        rec.node_owner = eg.owner;
    }

    rec.allocations.resize(static_cast<std::size_t>(n_faps));
    std::vector<double> rates(static_cast<std::size_t>(n_users), 0.0);
    std::vector<Matrix> all_gains; // only materialized for sinr mode
    if (cfg.eval_mode == EvalMode::sinr)
        all_gains.resize(static_cast<std::size_t>(n_faps));

    for (int l = 0; l < n_faps; ++l) {
        const auto& served = rec.assignment.served_users[static_cast<std::size_t>(l)];
        const auto& grant = rec.prbs.prbs[static_cast<std::size_t>(l)];

        if (cfg.eval_mode == EvalMode::sinr) {
            Matrix& g = all_gains[static_cast<std::size_t>(l)];
            g = Matrix(static_cast<std::size_t>(n_users),
                       static_cast<std::size_t>(n_prbs));
            for (int k = 0; k < n_users; ++k) {
                std::vector<double> fade =
                    link_fading(channel_seed, l, k, n_prbs);
                for (int n = 0; n < n_prbs; ++n)
                    g(static_cast<std::size_t>(k), static_cast<std::size_t>(n)) =
                        avg_gains(static_cast<std::size_t>(l),
                                  static_cast<std::size_t>(k)) *
                        fade[static_cast<std::size_t>(n)];
            }
        }

        if (served.empty() || grant.empty())
            continue; // served users keep rate 0

        Matrix gains(served.size(), grant.size());
        for (std::size_t row = 0; row < served.size(); ++row) {
            int k = served[row];
            if (cfg.eval_mode == EvalMode::sinr) {
                for (std::size_t col = 0; col < grant.size(); ++col)
                    gains(row, col) = all_gains[static_cast<std::size_t>(l)](
                        static_cast<std::size_t>(k),
                        static_cast<std::size_t>(grant[col]));
            } else {
                std::vector<double> fade =
                    link_fading(channel_seed, l, k, n_prbs);
                for (std::size_t col = 0; col < grant.size(); ++col)
                    gains(row, col) =
                        avg_gains(static_cast<std::size_t>(l),
                                  static_cast<std::size_t>(k)) *
                        fade[static_cast<std::size_t>(grant[col])];
            }
        }

        RateMatrix r = per_prb_rates(gains, static_cast<int>(grant.size()),
                                     p_max, cfg);
        std::vector<double> demands(served.size(), cfg.demand_bps);
        rec.allocations[static_cast<std::size_t>(l)] = maxmin_allocate(r, demands);
        std::vector<double> got =
            achieved_rates(rec.allocations[static_cast<std::size_t>(l)], r);
        for (std::size_t row = 0; row < served.size(); ++row)
            rates[static_cast<std::size_t>(served[row])] = got[row];
    }

    if (cfg.eval_mode == EvalMode::sinr)
        rates = evaluate_rates_sinr(rec.assignment, rec.prbs, rec.allocations,
                                    all_gains, cfg);

    rec.metrics = metrics_from_rates(rates, cfg);
    return rec;
}

TrialMetrics run_trial(const SystemConfig& cfg, std::uint64_t topology_seed,
                       std::uint64_t channel_seed)
{
    return run_trial_record(cfg, topology_seed, channel_seed).metrics;
}

std::vector<double> evaluate_rates_sinr(
    const CellAssignment& ca, const PRBAssignment& pa,
    const std::vector<Allocation>& allocations,
    const std::vector<Matrix>& gains_per_fap, const SystemConfig& cfg)
{
    const std::size_t n_faps = pa.prbs.size();
    if (allocations.size() != n_faps || gains_per_fap.size() != n_faps)
        throw std::invalid_argument("evaluate_rates_sinr: per-FAP inputs "
                                    "disagree in length");
    const std::size_t n_users = ca.serving_fap.size();
    const double sigma2 = cfg.noise_power_w();
    const double bw = cfg.noise.prb_bandwidth_hz;
    const double p_max = cfg.p_max_w();

    // Transmitters per PRB; a FAP radiates p_max split over its grant.
    std::vector<std::vector<std::pair<int, double>>> on_prb(
        static_cast<std::size_t>(cfg.n_prbs_femto));
    std::vector<double> fap_power(n_faps, 0.0);
    for (std::size_t l = 0; l < n_faps; ++l) {
        if (pa.prbs[l].empty())
            continue;
        fap_power[l] = p_max / static_cast<double>(pa.prbs[l].size());
        for (int prb : pa.prbs[l])
            on_prb[static_cast<std::size_t>(prb)].push_back(
                {static_cast<int>(l), fap_power[l]});
    }

    std::vector<double> rates(n_users, 0.0);
    for (std::size_t k = 0; k < n_users; ++k) {
        int l = ca.serving_fap[k];
        const auto& grant = pa.prbs[static_cast<std::size_t>(l)];
        if (grant.empty())
            continue;
        const Allocation& alloc = allocations[static_cast<std::size_t>(l)];

        // Locate this user's row in its FAP's allocation.
        const auto& served = ca.served_users[static_cast<std::size_t>(l)];
        std::size_t row = static_cast<std::size_t>(
            std::lower_bound(served.begin(), served.end(),
                             static_cast<int>(k)) -
            served.begin());

        double total = 0.0;
        for (std::size_t col = 0; col < grant.size(); ++col) {
            int prb = grant[col];
            double interference = 0.0;
            for (const auto& [m, pm] : on_prb[static_cast<std::size_t>(prb)]) {
                if (m == l)
                    continue;
                interference += pm * gains_per_fap[static_cast<std::size_t>(m)](
                                         k, static_cast<std::size_t>(prb));
            }
            double signal =
                fap_power[static_cast<std::size_t>(l)] *
                gains_per_fap[static_cast<std::size_t>(l)](
                    k, static_cast<std::size_t>(prb));
            double sinr = signal / (cfg.snr_gap * (sigma2 + interference));
            total += alloc.c(row, col) * bw * std::log1p(sinr) / kLn2;
        }
        rates[k] = total;
    }
    return rates;
}

SweepPoint aggregate(const std::vector<TrialMetrics>& trials,
                     const SystemConfig& cfg)
{
    if (trials.empty())
        throw std::invalid_argument("aggregate: no trials");

    SweepPoint p;
    p.demand_bps = cfg.demand_bps;
    p.n_trials = static_cast<int>(trials.size());

    auto mean_stderr = [&](auto&& get, double& mean, double& se) {
        double sum = 0.0;
        for (const auto& t : trials)
            sum += get(t);
        mean = sum / static_cast<double>(trials.size());
        if (trials.size() < 2) {
            se = 0.0;
            return;
        }
        double ss = 0.0;
        for (const auto& t : trials) {
            double d = get(t) - mean;
            ss += d * d;
        }
        double var = ss / static_cast<double>(trials.size() - 1);
        se = std::sqrt(var / static_cast<double>(trials.size()));
    };

    mean_stderr([](const TrialMetrics& t) { return t.outage_rate; },
                p.outage_mean, p.outage_stderr);
    mean_stderr([](const TrialMetrics& t) { return t.min_rate; },
                p.min_rate_mean, p.min_rate_stderr);
    mean_stderr([](const TrialMetrics& t) { return t.max_rate; },
                p.max_rate_mean, p.max_rate_stderr);
    return p;
}

SweepPoint run_point(const SystemConfig& cfg, int jobs)
{
    cfg.validate();
    const int n_trials = cfg.n_topologies * cfg.n_channel_draws;
    std::vector<TrialMetrics> trials(static_cast<std::size_t>(n_trials));

    auto trial_at = [&](int idx) {
        int topo_idx = idx / cfg.n_channel_draws;
        int draw_idx = idx % cfg.n_channel_draws;
        std::uint64_t tseed =
            derive_seed(cfg.master_seed, StreamPurpose::topology_seed,
                        static_cast<std::uint64_t>(topo_idx));
        std::uint64_t cseed =
            derive_seed(cfg.master_seed, StreamPurpose::channel_seed,
                        static_cast<std::uint64_t>(topo_idx),
                        static_cast<std::uint64_t>(draw_idx));
        trials[static_cast<std::size_t>(idx)] = run_trial(cfg, tseed, cseed);
    };

    if (jobs <= 0)
        jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min(jobs, n_trials));

    if (jobs == 1) {
        for (int i = 0; i < n_trials; ++i)
            trial_at(i);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                try {
                    for (int i = next.fetch_add(1); i < n_trials;
                         i = next.fetch_add(1))
                        trial_at(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(n_trials); // stop the other workers
                }
            });
        for (auto& th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }
    return aggregate(trials, cfg);
}

} // namespace femto
