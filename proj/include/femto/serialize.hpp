#pragma once

#include "json.hpp"

#include "femto/simulation.hpp"

namespace femto {

nlohmann::json topology_json(const Topology& t);

/// Full audit dump of one trial: positions, cell selection, load
/// estimates, coloring, PRB grants, time shares and achieved rates.
nlohmann::json trial_json(const TrialRecord& rec, const SystemConfig& cfg);

} // namespace femto
