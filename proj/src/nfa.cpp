#include "crnmem/nfa.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

constexpr double kRampFraction = 0.01;  // trapezoid edge, fraction of the period

bool settled_id(std::uint32_t id) { return id == 0 || id == 1; }

void append_pulse(std::vector<Breakpoint>& pts, double t0, double t1, double ramp) {
    pts.push_back({t0, 0.0});
    pts.push_back({t0 + ramp, 1.0});
    pts.push_back({t1 - ramp, 1.0});
    pts.push_back({t1, 0.0});
}

MemoryMap rail_map() {
    // Figure-1 shaped regions: low / garbage / high with rational endpoints,
    // comfortably separated relative to restoration accuracy.
    std::vector<MemoryInterval> states;
    states.push_back({0, Rational(0, 1), Rational(1, 8), true});
    states.push_back({1, Rational(7, 8), Rational(9, 8), false});
    states.push_back({2, Rational(3, 8), Rational(5, 8), false});
    return MemoryMap(Rational(3, 2), std::move(states));
}

}  // namespace

void Automaton::validate() const {
    if (states.empty()) throw PreconditionError("automaton needs at least one state");
    std::set<std::string> seen;
    for (const auto& q : states) {
        if (!is_valid_identifier(q)) throw PreconditionError("bad state name: " + q);
        if (!seen.insert(q).second) throw PreconditionError("duplicate state name: " + q);
    }
    if (start.empty()) throw PreconditionError("automaton needs a nonempty start set");
    auto check_member = [&](const std::string& q, const char* what) {
        if (!seen.contains(q))
            throw PreconditionError(std::string(what) + " references unknown state " + q);
    };
    for (const auto& q : start) check_member(q, "start set");
    for (const auto& q : accept) check_member(q, "accept set");
    for (const auto& [q, a, qp] : transitions) {
        check_member(q, "transition");
        check_member(qp, "transition");
        if (a != '0' && a != '1') throw PreconditionError("alphabet is binary: saw symbol " +
                                                          std::string(1, a));
    }
}

std::size_t Automaton::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    throw PreconditionError("unknown automaton state: " + name);
}

std::vector<bool> Automaton::run(const std::string& word) const {
    std::vector<bool> cur(states.size(), false);
    for (const auto& q : start) cur[state_index(q)] = true;
    for (char a : word) {
        std::vector<bool> next(states.size(), false);
        for (const auto& [q, sym, qp] : transitions)
            if (sym == a && cur[state_index(q)]) next[state_index(qp)] = true;
        cur = std::move(next);
    }
    return cur;
}

std::vector<Breakpoint> encode_symbol_wave(const std::string& word, char symbol,
                                           double symbol_period) {
    if (word.empty()) throw ParseError("input word must be nonempty", 1, 1);
    for (char c : word)
        if (c != '0' && c != '1') throw ParseError("input word must be binary", 1, 1);
    double ramp = kRampFraction * symbol_period;
    std::vector<Breakpoint> pts;
    for (std::size_t m = 0; m < word.size(); ++m) {
        if (word[m] != symbol) continue;
        double t0 = static_cast<double>(m) * symbol_period;
        append_pulse(pts, t0, t0 + symbol_period / 2.0, ramp);
    }
    if (pts.empty()) pts.push_back({0.0, 0.0});
    return pts;
}

CompilationOutput compile(const Automaton& aut, double symbol_period, std::int64_t rate_k) {
    aut.validate();
    if (rate_k < 1) throw PreconditionError("rate must be a positive integer");
    if (symbol_period < 10.0 / static_cast<double>(rate_k))
        throw PreconditionError(
            "settling precondition violated: symbol_period must be at least 10/rate");

    const std::size_t n = aut.states.size();
    CompilationOutput out;
    out.symbol_period = symbol_period;
    out.recommended_delay = symbol_period / 2.0;  // one clock phase

    ReactionNetwork& net = out.network;
    auto add_species = [&](const std::string& name) {
        std::size_t id = net.species.size();
        net.species.push_back({id, name});
        return id;
    };
    std::vector<std::size_t> X(n), Xb(n), Y(n), Yb(n);
    for (std::size_t i = 0; i < n; ++i) {
        X[i] = add_species("X_" + aut.states[i]);
        Xb[i] = add_species("Xb_" + aut.states[i]);
        Y[i] = add_species("Y_" + aut.states[i]);
        Yb[i] = add_species("Yb_" + aut.states[i]);
    }
    std::size_t C_cmp = add_species("C_cmp");
    std::size_t C_com = add_species("C_com");
    std::size_t C_rst = add_species("C_rst");
    std::size_t S0 = add_species("S0");
    std::size_t S1 = add_species("S1");
    const std::size_t total = net.species.size();
    out.rail_species = X;

    auto reaction = [&](std::initializer_list<std::pair<std::size_t, std::uint32_t>> lhs,
                        std::initializer_list<std::pair<std::size_t, std::uint32_t>> rhs) {
        Reaction r;
        r.reactants.assign(total, 0);
        r.products.assign(total, 0);
        for (auto [i, k] : lhs) r.reactants[i] += k;
        for (auto [i, k] : rhs) r.products[i] += k;
        r.rate = rate_k;
        net.reactions.push_back(std::move(r));
    };

    // compute phase: transitions stage the successor rails
    for (const auto& [q, a, qp] : aut.transitions) {
        std::size_t i = aut.state_index(q), j = aut.state_index(qp);
        std::size_t Sa = a == '0' ? S0 : S1;
        reaction({{C_cmp, 1}, {Sa, 1}, {X[i], 1}, {Yb[j], 1}},
                 {{C_cmp, 1}, {Sa, 1}, {X[i], 1}, {Y[j], 1}});
    }
    // commit phase: copy staging onto the main rails, both polarities
    for (std::size_t i = 0; i < n; ++i) {
        reaction({{C_com, 1}, {Y[i], 1}, {Xb[i], 1}}, {{C_com, 1}, {Y[i], 1}, {X[i], 1}});
        reaction({{C_com, 1}, {Yb[i], 1}, {X[i], 1}}, {{C_com, 1}, {Yb[i], 1}, {Xb[i], 1}});
    }
    // reset tail: clear the staging rails for the next symbol
    for (std::size_t i = 0; i < n; ++i)
        reaction({{C_rst, 1}, {Y[i], 1}}, {{C_rst, 1}, {Yb[i], 1}});
    // bistable restoration keeps every rail railed between phases
    for (std::size_t i = 0; i < n; ++i) {
        reaction({{X[i], 1}, {Xb[i], 2}}, {{Xb[i], 3}});
        reaction({{Xb[i], 1}, {X[i], 2}}, {{X[i], 3}});
        reaction({{Y[i], 1}, {Yb[i], 2}}, {{Yb[i], 3}});
        reaction({{Yb[i], 1}, {Y[i], 2}}, {{Y[i], 3}});
    }

    // placeholder waveforms; set_input installs the real schedule
    for (std::size_t s : {C_cmp, C_com, C_rst, S0, S1})
        net.driven.push_back({s, {{0.0, 0.0}}});

    out.x0.assign(total, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.x0[Xb[i]] = 1.0;
        out.x0[Yb[i]] = 1.0;
    }
    for (const auto& q : aut.start) {
        std::size_t i = aut.state_index(q);
        out.x0[X[i]] = 1.0;
        out.x0[Xb[i]] = 0.0;
    }

    out.maps.assign(total, rail_map());
    net.validate();
    return out;
}

void CompilationOutput::set_input(const std::string& word) {
    if (word.empty()) throw ParseError("input word must be nonempty", 1, 1);
    for (char c : word)
        if (c != '0' && c != '1') throw ParseError("input word must be binary", 1, 1);
    double P = symbol_period;
    double ramp = kRampFraction * P;
    auto wave_for = [&](const std::string& name) -> DrivenSignal& {
        auto idx = network.find_species(name);
        for (auto& d : network.driven)
            if (idx && d.species == *idx) return d;
        throw std::logic_error("missing driven signal " + name);
    };

    std::vector<Breakpoint> cmp, com, rst;
    for (std::size_t m = 0; m < word.size(); ++m) {
        double t0 = static_cast<double>(m) * P;
        append_pulse(cmp, t0, t0 + P / 2.0, ramp);
        append_pulse(com, t0 + P / 2.0, t0 + 3.0 * P / 4.0, ramp);
        append_pulse(rst, t0 + 3.0 * P / 4.0, t0 + P, ramp);
    }
    wave_for("C_cmp").points = std::move(cmp);
    wave_for("C_com").points = std::move(com);
    wave_for("C_rst").points = std::move(rst);
    wave_for("S0").points = encode_symbol_wave(word, '0', P);
    wave_for("S1").points = encode_symbol_wave(word, '1', P);
}

std::vector<MemoryState> decode_rails(const MemoryTrajectory& traj,
                                      const std::vector<std::size_t>& rails) {
    std::vector<MemoryState> out;
    for (const auto& e : traj.entries) {
        MemoryState proj;
        proj.reserve(rails.size());
        bool committed = true;
        for (std::size_t r : rails) {
            if (r >= e.state.size()) throw PreconditionError("rail index out of range");
            proj.push_back(e.state[r]);
            committed = committed && settled_id(e.state[r]);
        }
        if (!committed) continue;  // a rail is mid-transition
        if (out.empty() || out.back() != proj) out.push_back(std::move(proj));
    }
    return out;
}

}  // namespace crnmem
