#include "femto/serialize.hpp"

namespace femto {

using nlohmann::json;

namespace {

json points_json(const std::vector<Point2>& pts)
{
    json arr = json::array();
    for (const auto& p : pts)
        arr.push_back({p.x, p.y});
    return arr;
}

} // namespace

json topology_json(const Topology& t)
{
    return {
        {"cell_radius_m", t.cell_radius_m},
        {"coverage_radius_m", t.coverage_radius_m},
        {"fap_positions", points_json(t.fap_positions)},
        {"user_positions", points_json(t.user_positions)},
    };
}

json trial_json(const TrialRecord& rec, const SystemConfig& cfg)
{
    json loads = json::array();
    for (const auto& le : rec.loads)
        loads.push_back({
            {"w", le.w},
            {"p_w", le.p},
            {"n_l", le.n_l},
            {"n_l_int", le.n_l_int},
            {"feasible", le.feasible},
        });

    json allocations = json::array();
    for (const auto& a : rec.allocations) {
        json rows = json::array();
        for (std::size_t k = 0; k < a.c.rows(); ++k) {
            json row = json::array();
            for (std::size_t n = 0; n < a.c.cols(); ++n)
                row.push_back(a.c(k, n));
            rows.push_back(std::move(row));
        }
        allocations.push_back({{"t", a.t}, {"c", std::move(rows)}});
    }

    return {
        {"demand_bps", cfg.demand_bps},
        {"topology", topology_json(rec.topo)},
        {"serving_fap", rec.assignment.serving_fap},
        {"loads", loads},
        {"integer_demands", rec.demands},
        {"coloring",
         {{"node_owner", rec.node_owner}, {"color", rec.coloring.color}}},
        {"prbs", rec.prbs.prbs},
        {"allocations", allocations},
        {"user_rates", rec.metrics.user_rates},
        {"outage_rate", rec.metrics.outage_rate},
        {"min_rate", rec.metrics.min_rate},
        {"max_rate", rec.metrics.max_rate},
    };
}

} // namespace femto
