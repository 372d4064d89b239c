#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "crnmem/integrate.hpp"
#include "crnmem/rational.hpp"

namespace crnmem {

inline constexpr std::uint32_t kResidualState = std::numeric_limits<std::uint32_t>::max();

struct MemoryInterval {
    std::uint32_t id = 0;
    Rational lo, hi;
    bool lo_closed = false;  // true only for state 0, [0, b)

    bool empty() const { return !lo_closed && !(lo < hi); }
};

// Per-species partition of [0, c]: state 0 is [0,b), every other state is an
// open rational interval, everything else is the residual set. Intervals are
// stored with exact endpoints; classification of a double concentration is
// decided by exact rational-vs-double ordering, so a value indistinguishable
// from an endpoint reads as residual.
class MemoryMap {
public:
    MemoryMap() = default;
    MemoryMap(Rational c, std::vector<MemoryInterval> states);

    const Rational& c() const { return c_; }
    const std::vector<MemoryInterval>& states() const { return states_; }
    const MemoryInterval* find_state(std::uint32_t id) const;

    // id of the interval containing r, or kResidualState; r must lie in [0,c]
    std::uint32_t classify(double r) const;

    // distinct finite endpoints for event detection (nearest doubles)
    std::vector<double> boundaries() const;

private:
    void validate() const;

    Rational c_{1, 1};
    std::vector<MemoryInterval> states_;
};

using MemoryState = std::vector<std::uint32_t>;

struct TransitionEvent {
    std::size_t species = 0;
    std::uint32_t state = 0;
    enum class Kind { enter, leave } kind = Kind::enter;
    double time = 0.0;
    bool synthetic = false;  // enter at t = 0 by initialization
};

// One stay of a species inside an interval state. A missing t_leave means the
// species never left within the horizon: the paper's convention reads this as
// leaving at t = infinity, observed here as a lower bound of horizon-t_enter.
struct Visit {
    std::size_t species = 0;
    std::uint32_t state = 0;
    double t_enter = 0.0;
    bool enter_synthetic = false;
    std::optional<double> t_leave;
};

std::vector<TransitionEvent> extract_events(const Solution& sol,
                                            const std::vector<MemoryMap>& maps);

std::vector<Visit> collect_visits(const std::vector<TransitionEvent>& events);

std::optional<double> state_time(const Visit& visit);  // nullopt = infinity-marked

// Enter times of visits with state time >= d (T(X, x0, d)); the synthetic
// t = 0 entry is always included. Visits cut by the horizon with less than d
// observed set the truncation flag instead of qualifying.
std::vector<double> entry_times(const std::vector<Visit>& visits, std::size_t species, double d,
                                double horizon, bool* truncated = nullptr);

std::optional<double> next_transition(const std::vector<double>& times, double t);

struct MemoryTrajectory {
    struct Entry {
        std::size_t step = 0;
        double time = 0.0;
        MemoryState state;
        std::vector<std::size_t> entered;  // species whose qualifying enter fired here
    };
    std::vector<Entry> entries;
    double delay = 0.0;
    std::vector<double> x0;
    bool truncated = false;
    std::string warning;
};

MemoryTrajectory extract_trajectory(const Solution& sol, const std::vector<MemoryMap>& maps,
                                    double d);

struct RateBoundReport {
    bool pass = true;
    std::size_t bound = 0;        // 2|S|
    std::size_t worst_count = 0;  // entries in the worst window
    double window_start = 0.0;
};

// Every half-open window of length d may contain at most 2|S| trajectory
// entries. Entry 0 is the initial state, not a transition, and is excluded
// from the count (its time is in T only by the synthetic-entry convention).
RateBoundReport check_rate_bound(const MemoryTrajectory& traj, std::size_t species_count,
                                 double d);

}  // namespace crnmem
