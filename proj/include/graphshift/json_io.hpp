#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphshift/experiment.hpp"
#include "graphshift/generators.hpp"
#include "graphshift/solver.hpp"
#include "graphshift/trace.hpp"

namespace graphshift {

using json = nlohmann::json;

json to_json(const SolverConfig& cfg);
json to_json(const KktReport& rep);
json to_json(const RunResult& run, bool include_trace);
json to_json(const RunTrace& trace);
json traces_to_json(const std::vector<RunTrace>& traces);
json to_json(const ClusterAssignment& assignment);

/// Sidecar written next to generated matrices: the full GeneratorSpec, the
/// realized sparse rate and the PRNG identity, so outputs are self-describing.
json generator_metadata(const GeneratorSpec& spec, const AffinityMatrixd& a);

void write_json_file(const std::string& path, const json& j);

}  // namespace graphshift
