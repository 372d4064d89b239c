#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crnmem/memory.hpp"
#include "crnmem/network.hpp"

namespace crnmem {

// Nondeterministic finite automaton over the binary alphabet.
struct Automaton {
    std::vector<std::string> states;
    std::vector<std::tuple<std::string, char, std::string>> transitions;  // (q, '0'/'1', q')
    std::vector<std::string> start;
    std::vector<std::string> accept;

    void validate() const;
    std::size_t state_index(const std::string& name) const;

    // reachable state set after consuming the word (subset construction)
    std::vector<bool> run(const std::string& word) const;
};

// Dual-rail compilation: species X_q / Xb_q hold the "in state q" boolean,
// staging rails Y_q / Yb_q latch the next value during the compute phase and
// are copied onto the main rails during the commit phase, then cleared by a
// reset tail. Three driven clock signals (C_cmp, C_com, C_rst) schedule the
// phases; S0/S1 carry the input word during compute phases.
struct CompilationOutput {
    ReactionNetwork network;
    std::vector<MemoryMap> maps;      // one per species, identical 3-state shape
    std::vector<double> x0;           // rails encoding the start set
    double recommended_delay = 0.0;   // one clock phase
    double symbol_period = 0.0;
    std::vector<std::size_t> rail_species;  // X_q indexes, automaton state order

    // install the waveforms for an input word (clock length adapts)
    void set_input(const std::string& word);
};

CompilationOutput compile(const Automaton& aut, double symbol_period, std::int64_t rate_k);

// Square input waves: S_b is high during the compute phase of every position
// holding symbol b, with trapezoidal ramps of 1% of the period at the edges.
std::vector<Breakpoint> encode_symbol_wave(const std::string& word, char symbol,
                                           double symbol_period);

// The committed automaton view of a trajectory: project onto the given rail
// species, keep entries where every projected id is settled (low 0 / high 1),
// collapse consecutive duplicates.
std::vector<MemoryState> decode_rails(const MemoryTrajectory& traj,
                                      const std::vector<std::size_t>& rails);

}  // namespace crnmem
