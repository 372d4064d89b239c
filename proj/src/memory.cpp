#include "crnmem/memory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

// Qualifying entry times closer than this merge into one trajectory sample.
// Exactly complementary rails (x + x_bar conserved) cross their boundaries at
// the same instant up to integration noise; sampling between the pair would
// expose a half-committed state on ~1e-12 tie-break noise.
constexpr double kSimultaneityTol = 1e-9;

}  // namespace

MemoryMap::MemoryMap(Rational c, std::vector<MemoryInterval> states)
    : c_(c), states_(std::move(states)) {
    std::sort(states_.begin(), states_.end(),
              [](const MemoryInterval& a, const MemoryInterval& b) {
                  if (a.lo < b.lo) return true;
                  if (b.lo < a.lo) return false;
                  return a.hi < b.hi;
              });
    validate();
}

void MemoryMap::validate() const {
    if (!(Rational(0, 1) < c_)) throw std::invalid_argument("memory map needs c > 0");
    bool has_zero = false;
    for (const auto& s : states_) {
        for (const auto& o : states_)
            if (&s != &o && s.id == o.id)
                throw std::invalid_argument("duplicate memory state id " + std::to_string(s.id));
        if (s.id == 0) {
            has_zero = true;
            if (!(s.lo == Rational(0, 1)) || !s.lo_closed)
                throw std::invalid_argument("state 0 must be the half-open interval [0,b)");
            if (!(Rational(0, 1) < s.hi))
                throw std::invalid_argument("state 0 needs b > 0");
        } else {
            if (s.lo_closed) throw std::invalid_argument("only state 0 may be closed at lo");
            if (!(Rational(0, 1) < s.lo))
                throw std::invalid_argument("open states need 0 < lo");
            if (s.hi < s.lo) throw std::invalid_argument("interval with hi < lo");
        }
        if (c_ < s.hi) throw std::invalid_argument("interval endpoint beyond c");
    }
    if (!has_zero) throw std::invalid_argument("memory map must define state 0");
    // pairwise disjoint; empty (a,a) states never hold a point
    const MemoryInterval* prev = nullptr;
    for (const auto& s : states_) {
        if (s.empty()) continue;
        if (prev && s.lo < prev->hi)
            throw std::invalid_argument("memory states overlap: ids " + std::to_string(prev->id) +
                                        " and " + std::to_string(s.id));
        prev = &s;
    }
}

const MemoryInterval* MemoryMap::find_state(std::uint32_t id) const {
    for (const auto& s : states_)
        if (s.id == id) return &s;
    return nullptr;
}

std::uint32_t MemoryMap::classify(double r) const {
    if (r < 0.0 || c_.compare_double(r) > 0)
        throw PreconditionError("value outside [0, c] in memory lookup");
    for (const auto& s : states_) {
        if (s.empty()) continue;
        bool above = s.lo_closed ? r >= 0.0 : s.lo.compare_double(r) > 0;  // r > lo
        bool below = s.hi.compare_double(r) < 0;                           // r < hi
        if (above && below) return s.id;
    }
    return kResidualState;
}

std::vector<double> MemoryMap::boundaries() const {
    std::vector<double> out;
    for (const auto& s : states_) {
        if (s.empty()) continue;
        if (!s.lo_closed) out.push_back(s.lo.to_double());
        out.push_back(s.hi.to_double());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<TransitionEvent> extract_events(const Solution& sol,
                                            const std::vector<MemoryMap>& maps) {
    const std::size_t n = sol.dimension();
    if (maps.size() != n) throw PreconditionError("one memory map per species required");

    // coverage: dynamics must stay within [0, c] per species
    std::vector<double> maxima(n, 0.0);
    auto probe = [&](double t) {
        auto state = sol.eval(t);
        for (std::size_t i = 0; i < n; ++i) maxima[i] = std::max(maxima[i], state[i]);
    };
    for (std::size_t k = 0; k < sol.step_count(); ++k) {
        double t0 = sol.step_start(k), h = sol.step_width(k);
        for (int j = 0; j < 32; ++j) probe(t0 + h * j / 32.0);
    }
    probe(sol.t_end());
    for (std::size_t i = 0; i < n; ++i)
        if (maps[i].c().compare_double(maxima[i]) > 0)
            throw CoverageError("species " + std::to_string(i) +
                                " exceeds its memory map bound c = " + maps[i].c().str());

    std::vector<std::vector<double>> boundaries(n);
    for (std::size_t i = 0; i < n; ++i) boundaries[i] = maps[i].boundaries();
    auto crossings = detect_events(sol, boundaries);

    std::vector<TransitionEvent> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> cuts{0.0};
        for (const auto& e : crossings)
            if (e.species == i && e.direction != EventDirection::grazing &&
                e.time > cuts.back())
                cuts.push_back(e.time);
        cuts.push_back(sol.t_end());

        // membership is constant between crossings; classify segment interiors
        auto segment_member = [&](double a, double b) -> std::uint32_t {
            for (double w : {0.5, 0.25, 0.75}) {
                std::uint32_t m = maps[i].classify(sol.eval_species(a + (b - a) * w, i));
                if (m != kResidualState) return m;
            }
            return kResidualState;
        };

        std::uint32_t prev_m = kResidualState;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            std::uint32_t m = segment_member(cuts[k], cuts[k + 1]);
            if (k == 0) {
                if (m != kResidualState)
                    out.push_back({i, m, TransitionEvent::Kind::enter, 0.0, true});
            } else {
                // entering or leaving the residual set is never an event
                if (m != prev_m) {
                    if (prev_m != kResidualState)
                        out.push_back({i, prev_m, TransitionEvent::Kind::leave, cuts[k], false});
                    if (m != kResidualState)
                        out.push_back({i, m, TransitionEvent::Kind::enter, cuts[k], false});
                }
            }
            prev_m = m;
        }
    }

    std::sort(out.begin(), out.end(), [](const TransitionEvent& a, const TransitionEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.species != b.species) return a.species < b.species;
        if (a.kind != b.kind) return a.kind == TransitionEvent::Kind::leave;
        return a.state < b.state;
    });
    return out;
}

std::vector<Visit> collect_visits(const std::vector<TransitionEvent>& events) {
    std::map<std::size_t, std::optional<std::size_t>> open;  // species -> index into out
    std::vector<Visit> out;
    for (const auto& e : events) {
        auto& slot = open[e.species];
        if (e.kind == TransitionEvent::Kind::enter) {
            if (slot) throw std::logic_error("enter while a visit is still open");
            out.push_back({e.species, e.state, e.time, e.synthetic, std::nullopt});
            slot = out.size() - 1;
        } else {
            if (!slot || out[*slot].state != e.state)
                throw std::logic_error("leave without a matching enter");
            out[*slot].t_leave = e.time;
            slot.reset();
        }
    }
    return out;
}

std::optional<double> state_time(const Visit& visit) {
    if (!visit.t_leave) return std::nullopt;
    return *visit.t_leave - visit.t_enter;
}

std::vector<double> entry_times(const std::vector<Visit>& visits, std::size_t species, double d,
                                double horizon, bool* truncated) {
    if (!(d > 0)) throw PreconditionError("delay d must be positive");
    std::vector<double> out;
    for (const auto& v : visits) {
        if (v.species != species) continue;
        if (v.enter_synthetic) {
            out.push_back(v.t_enter);  // included by convention regardless of duration
            continue;
        }
        if (v.t_leave) {
            if (*v.t_leave - v.t_enter >= d) out.push_back(v.t_enter);
        } else if (horizon - v.t_enter >= d) {
            out.push_back(v.t_enter);  // observed at least d of an unresolved visit
        } else if (truncated) {
            *truncated = true;  // qualification undecided at the horizon
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<double> next_transition(const std::vector<double>& times, double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.end()) return std::nullopt;
    return *it;
}

MemoryTrajectory extract_trajectory(const Solution& sol, const std::vector<MemoryMap>& maps,
                                    double d) {
    const std::size_t n = sol.dimension();
    if (!(d > 0)) throw PreconditionError("delay d must be positive");

    MemoryTrajectory traj;
    traj.delay = d;
    traj.x0 = sol.initial_state();

    MemoryState initial(n);
    for (std::size_t i = 0; i < n; ++i) {
        initial[i] = maps[i].classify(traj.x0[i]);
        if (initial[i] == kResidualState)
            throw ResidualInitError("species " + std::to_string(i) +
                                    " is initialized in the residual set");
    }

    auto events = extract_events(sol, maps);
    auto visits = collect_visits(events);

    bool truncated = false;
    std::vector<std::pair<double, std::size_t>> all_times;  // (time, species)
    for (std::size_t i = 0; i < n; ++i) {
        auto times = entry_times(visits, i, d, sol.t_end(), &truncated);
        for (double t : times) all_times.emplace_back(t, i);
    }
    std::sort(all_times.begin(), all_times.end());

    // enter times per species for m_last (all enters, any duration)
    std::vector<std::vector<std::pair<double, std::uint32_t>>> enters(n);
    for (const auto& e : events)
        if (e.kind == TransitionEvent::Kind::enter) enters[e.species].emplace_back(e.time, e.state);

    auto last_state = [&](std::size_t i, double t) -> std::uint32_t {
        const auto& v = enters[i];
        auto it = std::upper_bound(v.begin(), v.end(), t, [](double x, const auto& p) {
            return x < p.first;
        });
        if (it == v.begin()) return initial[i];
        return (it - 1)->second;
    };

    traj.entries.push_back({0, 0.0, initial, {}});
    std::size_t k = 0;
    while (k < all_times.size()) {
        // coalesce a group of numerically simultaneous qualifying times
        std::size_t j = k;
        while (j + 1 < all_times.size() &&
               all_times[j + 1].first - all_times[j].first <= kSimultaneityTol)
            ++j;
        double tau = all_times[j].first;
        std::vector<std::size_t> entered;
        for (std::size_t g = k; g <= j; ++g) entered.push_back(all_times[g].second);
        std::sort(entered.begin(), entered.end());
        entered.erase(std::unique(entered.begin(), entered.end()), entered.end());
        k = j + 1;
        if (tau <= kSimultaneityTol) continue;  // the t = 0 group is entry 0

        MemoryState state(n);
        for (std::size_t i = 0; i < n; ++i) state[i] = last_state(i, tau);
        if (state != traj.entries.back().state)
            traj.entries.push_back({traj.entries.size(), tau, state, std::move(entered)});
    }

    traj.truncated = truncated;
    if (truncated)
        traj.warning =
            "horizon truncation: at least one visit shorter than d remained unresolved at t_end; "
            "the trajectory may be missing qualifying entries";
    return traj;
}

RateBoundReport check_rate_bound(const MemoryTrajectory& traj, std::size_t species_count,
                                 double d) {
    if (!(d > 0)) throw PreconditionError("delay d must be positive");
    RateBoundReport report;
    report.bound = 2 * species_count;

    std::vector<double> times;
    for (const auto& e : traj.entries)
        if (e.step >= 1) times.push_back(e.time);

    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < times.size(); ++hi) {
        while (times[hi] - times[lo] >= d) ++lo;
        std::size_t count = hi - lo + 1;
        if (count > report.worst_count) {
            report.worst_count = count;
            report.window_start = times[lo];
        }
    }
    report.pass = report.worst_count <= report.bound;
    return report;
}

}  // namespace crnmem
