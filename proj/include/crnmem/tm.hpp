#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnmem/determinism.hpp"
#include "crnmem/memory.hpp"

namespace crnmem {

// Binary expansion without leading zeros; 0 -> "0". Injective.
std::string itoa_binary(std::uint64_t n);
std::optional<std::uint64_t> itoa_parse(const std::string& word);

// One micro-step of the machine: every tape applies its action
// simultaneously. A write rule is either a fixed symbol or "keep what was
// read"; one table application costs one step.
struct TapeAction {
    enum class Write : std::uint8_t { blank, zero, one, copy } write = Write::copy;
    std::int8_t move = 0;  // -1, 0, +1
};

struct MicroState {
    std::vector<TapeAction> actions;       // one per tape
    std::size_t next = 0;                  // following micro state, or a macro entry
    bool macro_boundary = false;           // next indexes macro_programs
    bool checkpoint = false;               // completing this step finishes a macro write
};

// Per memory state m the machine clears each tape, writes itoa(delta(m)),
// returns the heads, and branches to the macro state of delta(m); terminal
// states (delta(m) = m) halt immediately.
struct MultiTapeTM {
    std::size_t tape_count = 0;
    std::vector<MemoryState> macro_states;                 // index -> m
    std::map<MemoryState, std::size_t> macro_index;        // m -> index
    std::vector<bool> halting;                             // delta(m) == m
    std::vector<std::vector<MicroState>> macro_programs;   // per macro state
    std::vector<MemoryState> macro_target;                 // delta(m)

    std::size_t micro_state_count() const;
};

MultiTapeTM generate_tm(const DeltaTable& delta);

struct FollowTrace {
    struct Checkpoint {
        std::size_t index = 0;   // n
        std::uint64_t step = 0;  // s_n
        std::vector<std::string> tapes;
    };
    std::vector<Checkpoint> checkpoints;
    bool halted = false;
    bool hit_step_limit = false;
};

// Runs the machine from itoa(initial); checkpoint n is recorded when the
// n-th macro cycle completes (s_0 = 0 is the initialization itself).
FollowTrace run_tm(const MultiTapeTM& tm, const MemoryState& initial, std::uint64_t max_steps);

struct FollowVerdict {
    bool pass = false;
    double c = 0.0;  // max over n>=1 of s_n / t_n
    std::optional<std::size_t> first_mismatch;
    std::string message;
};

// Decodes every checkpoint through itoa and matches it against the
// trajectory entry of the same index; c = max s_n/t_n (s_0 = 0 covers
// t_0 = 0). The trace must cover the whole trajectory.
FollowVerdict verify_realtime_follow(const FollowTrace& trace, const MemoryTrajectory& traj);

}  // namespace crnmem
