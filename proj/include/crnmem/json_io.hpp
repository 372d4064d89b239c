#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "crnmem/determinism.hpp"
#include "crnmem/memory.hpp"
#include "crnmem/network.hpp"
#include "crnmem/nfa.hpp"
#include "crnmem/tm.hpp"

namespace crnmem {

using json = nlohmann::json;

// Deterministic serialization: keys sorted (nlohmann objects are ordered
// maps), doubles printed with 17 significant digits, two-space indent.
// Identical trees give byte-identical text.
std::string canonical_dump(const json& j);

// FNV-1a 64-bit over raw bytes, hex; used for manifest input digests.
std::string fnv1a_digest(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// { "species": { "<name>": { "c": "p/q", "states": [ {"id", "lo", "hi",
//   "lo_closed"}, ... ] } } }, one map per network species required.
std::vector<MemoryMap> maps_from_json(const json& j, const ReactionNetwork& net);
json maps_to_json(const std::vector<MemoryMap>& maps, const ReactionNetwork& net);

// {"states": [...], "start": [...], "accept": [...],
//  "transitions": [["q","1","q'"], ...]}
Automaton automaton_from_json(const json& j);

json trajectory_to_json(const MemoryTrajectory& traj, const ReactionNetwork& net);
std::string trajectory_to_csv(const MemoryTrajectory& traj, const ReactionNetwork& net);

json delta_table_to_json(const DeltaTable& table);
DeltaTable delta_table_from_json(const json& j);
json delta_conflict_to_json(const DeltaConflict& conflict);

json waveforms_to_json(const ReactionNetwork& net);
json tm_to_json(const MultiTapeTM& tm);
json trace_to_json(const FollowTrace& trace);

}  // namespace crnmem
