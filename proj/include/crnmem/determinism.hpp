#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnmem/memory.hpp"
#include "crnmem/network.hpp"

namespace crnmem {

struct DeltaEvidence {
    std::size_t samples = 0;
    std::vector<std::vector<double>> witnesses;  // a few sampled initializations
};

// Empirical transition function over full memory states. Terminal states
// (no successor observed) map to themselves. Evidence, not proof: verdicts
// are "sampled-deterministic", never "proven".
struct DeltaTable {
    std::map<MemoryState, MemoryState> entries;
    std::map<MemoryState, DeltaEvidence> evidence;
};

struct DeltaConflict {
    MemoryState state;
    std::vector<double> witness_a, witness_b;
    MemoryState successor_a, successor_b;  // empty vector encodes "no successor"
    std::optional<std::size_t> earliest_differing_step;
    std::string note;
};

struct DeltaResult {
    std::optional<DeltaTable> table;        // set when sampled-deterministic
    std::optional<DeltaConflict> conflict;  // set otherwise
};

struct DeltaOptions {
    std::size_t samples_per_state = 25;
    double horizon = 40.0;
    double endpoint_margin = 0.05;  // fraction of interval width kept clear
    std::uint64_t seed = 0;
    IntegratorConfig integrator;
};

// For each listed state, integrates from low-discrepancy initializations
// drawn inside the state's interval box and records the first successor
// state. Agreement across samples yields a table entry; the first
// disagreement yields a conflict report with two witnesses.
DeltaResult extract_delta(const ReactionNetwork& net, const std::vector<MemoryMap>& maps,
                          double d, const std::vector<MemoryState>& states,
                          const DeltaOptions& opts = {});

struct DeltaVerifyVerdict {
    bool pass = false;
    std::optional<std::size_t> first_bad_step;
    std::string message;
};

// Every consecutive pair (m, m') of the trajectory must satisfy m' = delta(m).
DeltaVerifyVerdict verify_delta(const DeltaTable& table, const MemoryTrajectory& traj);

// Successor table read off one observed trajectory; sets the conflict when a
// revisited state shows two successors. States with no successor map to
// themselves. Used where box-sampled initialization is meaningless
// (externally driven networks).
DeltaResult delta_from_trajectory(const MemoryTrajectory& traj);

}  // namespace crnmem
