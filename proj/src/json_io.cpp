#include "crnmem/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

void dump_rec(const json& j, std::string& out, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(v, out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<MemoryMap> maps_from_json(const json& j, const ReactionNetwork& net) {
    if (!j.contains("species") || !j["species"].is_object())
        throw std::invalid_argument("memory map file needs a 'species' object");
    const json& spec = j["species"];
    std::vector<MemoryMap> maps;
    for (const auto& s : net.species) {
        if (!spec.contains(s.name))
            throw std::invalid_argument("memory map file lacks species '" + s.name + "'");
        const json& entry = spec[s.name];
        Rational c = Rational::parse(entry.at("c").get<std::string>());
        std::vector<MemoryInterval> states;
        for (const auto& st : entry.at("states")) {
            MemoryInterval iv;
            iv.id = st.at("id").get<std::uint32_t>();
            iv.lo = Rational::parse(st.at("lo").get<std::string>());
            iv.hi = Rational::parse(st.at("hi").get<std::string>());
            iv.lo_closed = st.value("lo_closed", iv.id == 0);
            states.push_back(iv);
        }
        maps.emplace_back(c, std::move(states));
    }
    return maps;
}

json maps_to_json(const std::vector<MemoryMap>& maps, const ReactionNetwork& net) {
    json spec = json::object();
    for (std::size_t i = 0; i < net.species.size(); ++i) {
        json states = json::array();
        for (const auto& st : maps[i].states()) {
            states.push_back({{"id", st.id},
                              {"lo", st.lo.str()},
                              {"hi", st.hi.str()},
                              {"lo_closed", st.lo_closed}});
        }
        spec[net.species[i].name] = {{"c", maps[i].c().str()}, {"states", states}};
    }
    return json{{"species", spec}};
}

Automaton automaton_from_json(const json& j) {
    Automaton aut;
    for (const auto& s : j.at("states")) aut.states.push_back(s.get<std::string>());
    for (const auto& s : j.at("start")) aut.start.push_back(s.get<std::string>());
    if (j.contains("accept"))
        for (const auto& s : j["accept"]) aut.accept.push_back(s.get<std::string>());
    for (const auto& t : j.at("transitions")) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("transitions must be [state, symbol, state] triples");
        std::string sym = t[1].get<std::string>();
        if (sym.size() != 1) throw std::invalid_argument("transition symbol must be 0 or 1");
        aut.transitions.emplace_back(t[0].get<std::string>(), sym[0], t[2].get<std::string>());
    }
    aut.validate();
    return aut;
}

json trajectory_to_json(const MemoryTrajectory& traj, const ReactionNetwork& net) {
    json entries = json::array();
    for (const auto& e : traj.entries) {
        json state = json::array();
        for (auto id : e.state) state.push_back(id);
        json entered = json::array();
        for (auto i : e.entered) entered.push_back(net.species[i].name);
        entries.push_back(
            {{"step", e.step}, {"time", e.time}, {"state", state}, {"entered", entered}});
    }
    json names = json::array();
    for (const auto& s : net.species) names.push_back(s.name);
    json x0 = json::array();
    for (double v : traj.x0) x0.push_back(v);
    json out{{"delay", traj.delay},
             {"species", names},
             {"x0", x0},
             {"entries", entries},
             {"truncated", traj.truncated}};
    if (!traj.warning.empty()) out["warning"] = traj.warning;
    return out;
}

std::string trajectory_to_csv(const MemoryTrajectory& traj, const ReactionNetwork& net) {
    std::ostringstream out;
    out << "step,time";
    for (const auto& s : net.species) out << "," << s.name;
    out << "\n";
    char buf[64];
    for (const auto& e : traj.entries) {
        std::snprintf(buf, sizeof buf, "%.17g", e.time);
        out << e.step << "," << buf;
        for (auto id : e.state) out << "," << id;
        out << "\n";
    }
    return out.str();
}

namespace {

json state_to_json(const MemoryState& m) {
    json a = json::array();
    for (auto id : m) a.push_back(id);
    return a;
}

MemoryState state_from_json(const json& a) {
    MemoryState m;
    for (const auto& v : a) m.push_back(v.get<std::uint32_t>());
    return m;
}

}  // namespace

json delta_table_to_json(const DeltaTable& table) {
    json states = json::array();
    for (const auto& [m, succ] : table.entries) {
        json entry{{"state", state_to_json(m)}, {"successor", state_to_json(succ)}};
        auto ev = table.evidence.find(m);
        if (ev != table.evidence.end()) {
            entry["samples"] = ev->second.samples;
            json wit = json::array();
            for (const auto& w : ev->second.witnesses) {
                json x = json::array();
                for (double v : w) x.push_back(v);
                wit.push_back(x);
            }
            entry["witnesses"] = wit;
        }
        states.push_back(entry);
    }
    return json{{"verdict", "sampled-deterministic"}, {"states", states}};
}

DeltaTable delta_table_from_json(const json& j) {
    DeltaTable table;
    for (const auto& entry : j.at("states")) {
        MemoryState m = state_from_json(entry.at("state"));
        table.entries[m] = state_from_json(entry.at("successor"));
        if (entry.contains("samples")) table.evidence[m].samples = entry["samples"];
    }
    return table;
}

json delta_conflict_to_json(const DeltaConflict& conflict) {
    json wa = json::array(), wb = json::array();
    for (double v : conflict.witness_a) wa.push_back(v);
    for (double v : conflict.witness_b) wb.push_back(v);
    json out{{"verdict", "conflict"},
             {"state", state_to_json(conflict.state)},
             {"witnesses",
              json::array({json{{"x0", wa}, {"successor", state_to_json(conflict.successor_a)}},
                           json{{"x0", wb}, {"successor", state_to_json(conflict.successor_b)}}})},
             {"note", conflict.note}};
    if (conflict.earliest_differing_step)
        out["earliest_differing_step"] = *conflict.earliest_differing_step;
    return out;
}

json waveforms_to_json(const ReactionNetwork& net) {
    json signals = json::object();
    for (const auto& d : net.driven) {
        json pts = json::array();
        for (const auto& p : d.points) pts.push_back(json::array({p.time, p.value}));
        signals[net.species[d.species].name] = pts;
    }
    return json{{"signals", signals}};
}

json tm_to_json(const MultiTapeTM& tm) {
    json states = json::array();
    for (std::size_t k = 0; k < tm.macro_states.size(); ++k) {
        json prog = json::array();
        for (const auto& ms : tm.macro_programs[k]) {
            json actions = json::array();
            for (const auto& a : ms.actions) {
                const char* w = a.write == TapeAction::Write::blank  ? "blank"
                                : a.write == TapeAction::Write::zero ? "0"
                                : a.write == TapeAction::Write::one  ? "1"
                                                                     : "copy";
                actions.push_back({{"write", w}, {"move", a.move}});
            }
            prog.push_back({{"actions", actions},
                            {"next", ms.next},
                            {"macro_boundary", ms.macro_boundary},
                            {"checkpoint", ms.checkpoint}});
        }
        states.push_back({{"state", state_to_json(tm.macro_states[k])},
                          {"halting", static_cast<bool>(tm.halting[k])},
                          {"target", state_to_json(tm.macro_target[k])},
                          {"program", prog}});
    }
    return json{{"tapes", tm.tape_count}, {"states", states}};
}

json trace_to_json(const FollowTrace& trace) {
    json cps = json::array();
    for (const auto& cp : trace.checkpoints) {
        json tapes = json::array();
        for (const auto& t : cp.tapes) tapes.push_back(t);
        cps.push_back({{"index", cp.index}, {"step", cp.step}, {"tapes", tapes}});
    }
    return json{
        {"checkpoints", cps}, {"halted", trace.halted}, {"hit_step_limit", trace.hit_step_limit}};
}

}  // namespace crnmem
