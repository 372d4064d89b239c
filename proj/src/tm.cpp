#include "crnmem/tm.hpp"

#include <algorithm>
#include <limits>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

constexpr char kBlank = ' ';

std::size_t word_len(std::uint64_t n) { return itoa_binary(n).size(); }

}  // namespace

std::string itoa_binary(std::uint64_t n) {
    if (n == 0) return "0";
    std::string s;
    while (n > 0) {
        s.push_back(n & 1 ? '1' : '0');
        n >>= 1;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::optional<std::uint64_t> itoa_parse(const std::string& word) {
    if (word.empty() || word.size() > 63) return std::nullopt;
    if (word != "0" && word[0] == '0') return std::nullopt;  // no leading zeros
    std::uint64_t v = 0;
    for (char c : word) {
        if (c != '0' && c != '1') return std::nullopt;
        v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

std::size_t MultiTapeTM::micro_state_count() const {
    std::size_t total = 0;
    for (const auto& p : macro_programs) total += p.size();
    return total;
}

MultiTapeTM generate_tm(const DeltaTable& delta) {
    if (delta.entries.empty()) throw PreconditionError("empty delta table");
    MultiTapeTM tm;
    tm.tape_count = delta.entries.begin()->first.size();

    for (const auto& [m, succ] : delta.entries) {
        if (m.size() != tm.tape_count || succ.size() != tm.tape_count)
            throw PreconditionError("delta table states have mixed dimensions");
        if (!delta.entries.contains(succ))
            throw PreconditionError("delta target lacks its own table entry");
        tm.macro_index.emplace(m, tm.macro_states.size());
        tm.macro_states.push_back(m);
    }

    for (const auto& m : tm.macro_states) {
        const MemoryState& succ = delta.entries.at(m);
        tm.macro_target.push_back(succ);
        tm.halting.push_back(succ == m);
        std::vector<MicroState> prog;
        if (succ != m) {
            std::size_t clear_len = 0, write_len = 0;
            std::vector<std::string> words(tm.tape_count);
            for (std::size_t i = 0; i < tm.tape_count; ++i) {
                clear_len = std::max(clear_len, word_len(m[i]));
                words[i] = itoa_binary(succ[i]);
                write_len = std::max(write_len, words[i].size());
            }
            auto uniform = [&](TapeAction a) {
                MicroState s;
                s.actions.assign(tm.tape_count, a);
                return s;
            };
            // wipe the old words, all heads moving right in lockstep
            for (std::size_t j = 0; j < clear_len; ++j)
                prog.push_back(uniform({TapeAction::Write::blank, +1}));
            for (std::size_t j = 0; j < clear_len; ++j)
                prog.push_back(uniform({TapeAction::Write::copy, -1}));
            // write the successor words
            for (std::size_t j = 0; j < write_len; ++j) {
                MicroState s;
                for (std::size_t i = 0; i < tm.tape_count; ++i) {
                    TapeAction a;
                    if (j < words[i].size())
                        a.write = words[i][j] == '1' ? TapeAction::Write::one
                                                     : TapeAction::Write::zero;
                    else
                        a.write = TapeAction::Write::blank;
                    a.move = +1;
                    s.actions.push_back(a);
                }
                prog.push_back(std::move(s));
            }
            // return the heads; the final step completes the macro cycle
            for (std::size_t j = 0; j < write_len; ++j)
                prog.push_back(uniform({TapeAction::Write::copy, -1}));
            prog.back().checkpoint = true;
            prog.back().macro_boundary = true;
            prog.back().next = tm.macro_index.at(succ);
            for (std::size_t j = 0; j + 1 < prog.size(); ++j) prog[j].next = j + 1;
        }
        tm.macro_programs.push_back(std::move(prog));
    }
    return tm;
}

FollowTrace run_tm(const MultiTapeTM& tm, const MemoryState& initial, std::uint64_t max_steps) {
    auto it = tm.macro_index.find(initial);
    if (it == tm.macro_index.end())
        throw PreconditionError("initial memory state has no delta entry");

    std::vector<std::string> tapes(tm.tape_count);
    std::vector<std::size_t> heads(tm.tape_count, 0);
    for (std::size_t i = 0; i < tm.tape_count; ++i) tapes[i] = itoa_binary(initial[i]);

    auto contents = [&]() {
        std::vector<std::string> out;
        out.reserve(tm.tape_count);
        for (const auto& t : tapes) {
            auto end = t.find_last_not_of(kBlank);
            out.push_back(end == std::string::npos ? "" : t.substr(0, end + 1));
        }
        return out;
    };

    FollowTrace trace;
    trace.checkpoints.push_back({0, 0, contents()});

    std::size_t macro = it->second;
    std::uint64_t step = 0;
    while (true) {
        if (tm.halting[macro]) {
            trace.halted = true;
            return trace;
        }
        const auto& prog = tm.macro_programs[macro];
        if (step + prog.size() > max_steps) {
            trace.hit_step_limit = true;  // budget exhausted mid-write
            return trace;
        }
        std::size_t pc = 0;
        while (true) {
            const MicroState& ms = prog[pc];
            for (std::size_t i = 0; i < tm.tape_count; ++i) {
                auto& tape = tapes[i];
                std::size_t h = heads[i];
                if (h >= tape.size()) tape.resize(h + 1, kBlank);
                switch (ms.actions[i].write) {
                    case TapeAction::Write::blank: tape[h] = kBlank; break;
                    case TapeAction::Write::zero: tape[h] = '0'; break;
                    case TapeAction::Write::one: tape[h] = '1'; break;
                    case TapeAction::Write::copy: break;
                }
                if (ms.actions[i].move > 0)
                    heads[i] = h + 1;
                else if (ms.actions[i].move < 0 && h > 0)
                    heads[i] = h - 1;
            }
            ++step;
            if (ms.checkpoint)
                trace.checkpoints.push_back({trace.checkpoints.size(), step, contents()});
            if (ms.macro_boundary) {
                macro = ms.next;
                break;
            }
            pc = ms.next;
        }
    }
}

FollowVerdict verify_realtime_follow(const FollowTrace& trace, const MemoryTrajectory& traj) {
    FollowVerdict verdict;
    if (trace.checkpoints.size() < traj.entries.size()) {
        verdict.message = "trace has fewer checkpoints than the trajectory has entries";
        return verdict;
    }
    double c = 0.0;
    for (std::size_t n = 0; n < traj.entries.size(); ++n) {
        const auto& cp = trace.checkpoints[n];
        const auto& entry = traj.entries[n];
        if (cp.tapes.size() != entry.state.size()) {
            verdict.first_mismatch = n;
            verdict.message = "tape count does not match species count";
            return verdict;
        }
        for (std::size_t i = 0; i < cp.tapes.size(); ++i) {
            auto decoded = itoa_parse(cp.tapes[i]);
            if (!decoded) {
                verdict.first_mismatch = n;
                verdict.message = "checkpoint " + std::to_string(n) + " tape " +
                                  std::to_string(i) + " holds an undecodable word '" +
                                  cp.tapes[i] + "'";
                return verdict;
            }
            if (*decoded != entry.state[i]) {
                verdict.first_mismatch = n;
                verdict.message = "checkpoint " + std::to_string(n) + " decodes tape " +
                                  std::to_string(i) + " to " + std::to_string(*decoded) +
                                  ", trajectory has " + std::to_string(entry.state[i]);
                return verdict;
            }
        }
        if (n >= 1) {
            if (!(entry.time > 0)) {
                verdict.first_mismatch = n;
                verdict.message = "trajectory entry with nonpositive time";
                return verdict;
            }
            c = std::max(c, static_cast<double>(cp.step) / entry.time);
        }
    }
    verdict.pass = true;
    verdict.c = c;
    return verdict;
}

}  // namespace crnmem
