#include "crnmem/determinism.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crnmem/analysis.hpp"
#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                     37, 41, 43, 47, 53, 59, 61, 67, 71};

std::string state_str(const MemoryState& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += m[i] == kResidualState ? "inf" : std::to_string(m[i]);
    }
    return s + ")";
}

}  // namespace

DeltaResult extract_delta(const ReactionNetwork& net, const std::vector<MemoryMap>& maps,
                          double d, const std::vector<MemoryState>& states,
                          const DeltaOptions& opts) {
    const std::size_t n = net.species_count();
    if (maps.size() != n) throw PreconditionError("one memory map per species required");
    if (opts.samples_per_state < 2) throw PreconditionError("samples_per_state must be >= 2");
    auto field = derive_field(net);

    DeltaTable table;
    for (const auto& m : states) {
        if (m.size() != n) throw PreconditionError("memory state dimension mismatch");

        // sampling box: interval per species, shrunk away from the endpoints
        std::vector<std::pair<double, double>> box(n);
        for (std::size_t i = 0; i < n; ++i) {
            const MemoryInterval* iv = maps[i].find_state(m[i]);
            if (!iv || iv->empty())
                throw PreconditionError("state " + state_str(m) + " has an empty interval for species " +
                                        net.species[i].name);
            double lo = iv->lo.to_double(), hi = iv->hi.to_double();
            double w = hi - lo;
            box[i] = {lo + opts.endpoint_margin * w, hi - opts.endpoint_margin * w};
        }

        struct Observation {
            std::vector<double> x0;
            std::optional<MemoryState> successor;  // nullopt = none within horizon
            MemoryTrajectory trajectory;
        };
        std::vector<Observation> obs;
        for (std::size_t s = 0; s < opts.samples_per_state; ++s) {
            std::vector<double> x0(n);
            for (std::size_t i = 0; i < n; ++i) {
                // index 1 of the base-2 sequence is exactly 1/2; skip it so a
                // straddling interval never gets seeded on its own midpoint
                double u = halton(opts.seed * 131 + s + 2, kPrimes[i % std::size(kPrimes)]);
                x0[i] = box[i].first + u * (box[i].second - box[i].first);
            }
            auto sol = integrate(field, net.driven, x0, opts.horizon, opts.integrator);
            auto traj = extract_trajectory(sol, maps, d);
            Observation o;
            o.x0 = std::move(x0);
            if (traj.entries.size() >= 2) o.successor = traj.entries[1].state;
            o.trajectory = std::move(traj);
            obs.push_back(std::move(o));
        }

        for (std::size_t s = 1; s < obs.size(); ++s) {
            if (obs[s].successor != obs[0].successor) {
                DeltaConflict c;
                c.state = m;
                c.witness_a = obs[0].x0;
                c.witness_b = obs[s].x0;
                c.successor_a = obs[0].successor.value_or(MemoryState{});
                c.successor_b = obs[s].successor.value_or(MemoryState{});
                c.earliest_differing_step = 1;
                std::ostringstream note;
                note << "state " << state_str(m) << ": successors disagree";
                if (!obs[0].successor || !obs[s].successor)
                    note << " (one sample saw no transition within the horizon " << opts.horizon
                         << "; this can be a horizon artifact)";
                c.note = note.str();
                return {std::nullopt, std::move(c)};
            }
        }
        // first successors agree; a deeper divergence is still a conflict of
        // some later state, reported here with the earliest differing step
        for (std::size_t s = 1; s < obs.size(); ++s) {
            const auto& a = obs[0].trajectory.entries;
            const auto& b = obs[s].trajectory.entries;
            std::size_t upto = std::min(a.size(), b.size());
            for (std::size_t k = 0; k < upto; ++k) {
                if (a[k].state != b[k].state) {
                    DeltaConflict c;
                    c.state = a[k - 1].state;
                    c.witness_a = obs[0].x0;
                    c.witness_b = obs[s].x0;
                    c.successor_a = a[k].state;
                    c.successor_b = b[k].state;
                    c.earliest_differing_step = k;
                    c.note = "trajectories from " + state_str(m) + " diverge at step " +
                             std::to_string(k);
                    return {std::nullopt, std::move(c)};
                }
            }
        }

        MemoryState successor = obs[0].successor.value_or(m);  // terminal: delta(m) = m
        table.entries[m] = successor;
        DeltaEvidence ev;
        ev.samples = obs.size();
        for (std::size_t s = 0; s < std::min<std::size_t>(obs.size(), 4); ++s)
            ev.witnesses.push_back(obs[s].x0);
        table.evidence[m] = std::move(ev);
    }
    return {std::move(table), std::nullopt};
}

DeltaVerifyVerdict verify_delta(const DeltaTable& table, const MemoryTrajectory& traj) {
    for (std::size_t k = 0; k + 1 < traj.entries.size(); ++k) {
        auto it = table.entries.find(traj.entries[k].state);
        if (it == table.entries.end())
            return {false, k,
                    "state " + state_str(traj.entries[k].state) + " absent from the table"};
        if (it->second != traj.entries[k + 1].state)
            return {false, k + 1,
                    "trajectory step " + std::to_string(k + 1) + " is " +
                        state_str(traj.entries[k + 1].state) + " but delta gives " +
                        state_str(it->second)};
    }
    if (!traj.entries.empty()) {
        auto it = table.entries.find(traj.entries.back().state);
        if (it == table.entries.end())
            return {false, traj.entries.size() - 1,
                    "terminal state " + state_str(traj.entries.back().state) +
                        " absent from the table"};
    }
    return {true, std::nullopt, ""};
}

DeltaResult delta_from_trajectory(const MemoryTrajectory& traj) {
    DeltaTable table;
    for (std::size_t k = 0; k + 1 < traj.entries.size(); ++k) {
        const auto& m = traj.entries[k].state;
        const auto& succ = traj.entries[k + 1].state;
        auto it = table.entries.find(m);
        if (it != table.entries.end()) {
            if (it->second != succ) {
                DeltaConflict c;
                c.state = m;
                c.witness_a = traj.x0;
                c.witness_b = traj.x0;
                c.successor_a = it->second;
                c.successor_b = succ;
                c.earliest_differing_step = k + 1;
                c.note = "revisited state " + state_str(m) + " shows two successors";
                return {std::nullopt, std::move(c)};
            }
        } else {
            table.entries[m] = succ;
            table.evidence[m].samples += 1;
        }
    }
    if (!traj.entries.empty()) {
        const auto& last = traj.entries.back().state;
        if (!table.entries.contains(last)) {
            table.entries[last] = last;
            table.evidence[last].samples += 1;
        }
    }
    return {std::move(table), std::nullopt};
}

}  // namespace crnmem
