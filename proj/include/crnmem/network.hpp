#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnmem/errors.hpp"

namespace crnmem {

struct Species {
    std::size_t index = 0;
    std::string name;
};

// One reaction with dense per-species stoichiometry. Rates are positive
// integers; duplicate reactions are legal and merge additively when the
// vector field is derived.
struct Reaction {
    std::vector<std::uint32_t> reactants;
    std::vector<std::uint32_t> products;
    std::int64_t rate = 1;
};

struct Breakpoint {
    double time = 0.0;
    double value = 0.0;
};

// Externally prescribed concentration: piecewise linear through the
// breakpoints, held constant before the first and after the last one.
struct DrivenSignal {
    std::size_t species = 0;
    std::vector<Breakpoint> points;

    double value_at(double t) const;
    double slope_at(double t) const;  // right-slope at breakpoints
};

struct ReactionNetwork {
    std::vector<Species> species;
    std::vector<Reaction> reactions;
    std::vector<DrivenSignal> driven;

    std::size_t species_count() const { return species.size(); }
    std::optional<std::size_t> find_species(std::string_view name) const;
    bool is_driven(std::size_t species_index) const;
    const DrivenSignal* driven_signal(std::size_t species_index) const;

    // Checks the structural invariants (references in range, rates >= 1,
    // driven species never net-produced, breakpoint ordering).
    void validate() const;
};

bool is_valid_identifier(std::string_view name);

// Line-oriented .crn text:
//   side "->" side ":" INT      side := "0" | term ("+" term)*
//   term := [INT] IDENT         omitted coefficient = 1
//   driven IDENT: (t0,v0) (t1,v1) ...
//   '#' starts a comment
// Species are numbered in first-mention order.
ReactionNetwork parse_network(std::string_view text);

std::string to_text(const ReactionNetwork& net);

}  // namespace crnmem
