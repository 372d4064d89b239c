#include "crnmem/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace crnmem {

namespace {

constexpr std::size_t kMaxSpecies = 64;

struct Cursor {
    std::string_view line;
    int line_no = 1;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool eol() {
        skip_ws();
        return pos >= line.size();
    }
    char peek() {
        skip_ws();
        return pos < line.size() ? line[pos] : '\0';
    }
    int column() const { return static_cast<int>(pos) + 1; }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_no, column()); }

    bool try_consume(char c) {
        skip_ws();
        if (pos < line.size() && line[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what) {
        if (!try_consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    std::optional<std::int64_t> try_integer() {
        skip_ws();
        if (pos >= line.size() || !std::isdigit(static_cast<unsigned char>(line[pos])))
            return std::nullopt;
        std::int64_t v = 0;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
            v = v * 10 + (line[pos] - '0');
            if (v > 1'000'000'000LL) fail("integer constant too large");
            ++pos;
        }
        return v;
    }

    std::optional<std::string> try_identifier() {
        skip_ws();
        if (pos >= line.size()) return std::nullopt;
        char c = line[pos];
        if (!std::isalpha(static_cast<unsigned char>(c))) return std::nullopt;
        std::size_t start = pos;
        while (pos < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_'))
            ++pos;
        return std::string(line.substr(start, pos - start));
    }

    double number(const std::string& what) {
        skip_ws();
        std::size_t start = pos;
        if (pos < line.size() && (line[pos] == '-' || line[pos] == '+')) ++pos;
        while (pos < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[pos])) || line[pos] == '.' ||
                line[pos] == 'e' || line[pos] == 'E' ||
                ((line[pos] == '-' || line[pos] == '+') && pos > start &&
                 (line[pos - 1] == 'e' || line[pos - 1] == 'E'))))
            ++pos;
        double v = 0.0;
        auto res = std::from_chars(line.data() + start, line.data() + pos, v);
        if (res.ec != std::errc() || res.ptr != line.data() + pos || pos == start) {
            pos = start;
            fail("expected a number " + what);
        }
        return v;
    }
};

struct Builder {
    ReactionNetwork net;
    std::map<std::string, std::size_t, std::less<>> index;

    std::size_t species(const std::string& name, Cursor& cur) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (net.species.size() >= kMaxSpecies) cur.fail("too many species (limit 64)");
        std::size_t id = net.species.size();
        net.species.push_back({id, name});
        index.emplace(name, id);
        return id;
    }
};

// side := "0" | term ("+" term)*, returns stoichiometry keyed by species index
std::map<std::size_t, std::uint32_t> parse_side(Cursor& cur, Builder& b) {
    std::map<std::size_t, std::uint32_t> stoich;
    if (cur.peek() == '0') {
        // look ahead: a bare zero side, not a malformed coefficient
        std::size_t save = cur.pos;
        cur.try_integer();
        cur.skip_ws();
        if (cur.pos >= cur.line.size() || cur.line[cur.pos] == '-' || cur.line[cur.pos] == ':' ||
            cur.line[cur.pos] == '#')
            return stoich;
        cur.pos = save;
    }
    while (true) {
        auto coeff = cur.try_integer();
        auto name = cur.try_identifier();
        if (!name) cur.fail("expected a species name");
        std::uint32_t k = coeff ? static_cast<std::uint32_t>(*coeff) : 1u;
        if (coeff && *coeff == 0) cur.fail("zero stoichiometric coefficient");
        stoich[b.species(*name, cur)] += k;
        if (!cur.try_consume('+')) break;
    }
    return stoich;
}

void parse_reaction_line(Cursor& cur, Builder& b) {
    auto lhs = parse_side(cur, b);
    cur.expect('-', "before '>'");
    if (!cur.try_consume('>')) cur.fail("expected '->'");
    auto rhs = parse_side(cur, b);
    cur.expect(':', "before the rate constant");
    cur.skip_ws();
    int rate_col = cur.column();
    auto rate = cur.try_integer();
    if (!rate) throw ParseError("expected a rate constant", cur.line_no, rate_col);
    if (*rate < 1) throw ParseError("rate must be a positive integer", cur.line_no, rate_col);
    if (!cur.eol()) cur.fail("trailing input after reaction");
    if (lhs.empty() && rhs.empty()) cur.fail("reaction with empty reactant and product sides");

    Reaction r;
    r.reactants.assign(kMaxSpecies, 0);
    r.products.assign(kMaxSpecies, 0);
    for (auto [i, k] : lhs) r.reactants[i] = k;
    for (auto [i, k] : rhs) r.products[i] = k;
    r.rate = *rate;
    b.net.reactions.push_back(std::move(r));
}

void parse_driven_line(Cursor& cur, Builder& b) {
    auto name = cur.try_identifier();
    if (!name) cur.fail("expected a species name after 'driven'");
    cur.expect(':', "after the driven species name");
    DrivenSignal sig;
    sig.species = b.species(*name, cur);
    while (!cur.eol()) {
        cur.expect('(', "to open a breakpoint");
        double t = cur.number("for the breakpoint time");
        cur.expect(',', "between breakpoint time and value");
        double v = cur.number("for the breakpoint value");
        cur.expect(')', "to close the breakpoint");
        if (t < 0) cur.fail("breakpoint time must be nonnegative");
        if (v < 0) cur.fail("breakpoint value must be nonnegative");
        if (!sig.points.empty() && t <= sig.points.back().time)
            cur.fail("breakpoint times must be strictly increasing");
        sig.points.push_back({t, v});
    }
    if (sig.points.empty()) cur.fail("driven directive needs at least one breakpoint");
    for (const auto& d : b.net.driven)
        if (d.species == sig.species) cur.fail("duplicate driven directive for '" + *name + "'");
    b.net.driven.push_back(std::move(sig));
}

}  // namespace

bool is_valid_identifier(std::string_view name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

double DrivenSignal::value_at(double t) const {
    if (points.empty()) return 0.0;
    if (t <= points.front().time) return points.front().value;
    if (t >= points.back().time) return points.back().value;
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double x, const Breakpoint& p) { return x < p.time; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    double w = (t - lo.time) / (hi.time - lo.time);
    return lo.value + w * (hi.value - lo.value);
}

double DrivenSignal::slope_at(double t) const {
    if (points.size() < 2 || t < points.front().time || t >= points.back().time) return 0.0;
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double x, const Breakpoint& p) { return x < p.time; });
    if (it == points.begin() || it == points.end()) return 0.0;
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    return (hi.value - lo.value) / (hi.time - lo.time);
}

std::optional<std::size_t> ReactionNetwork::find_species(std::string_view name) const {
    for (const auto& s : species)
        if (s.name == name) return s.index;
    return std::nullopt;
}

bool ReactionNetwork::is_driven(std::size_t species_index) const {
    return driven_signal(species_index) != nullptr;
}

const DrivenSignal* ReactionNetwork::driven_signal(std::size_t species_index) const {
    for (const auto& d : driven)
        if (d.species == species_index) return &d;
    return nullptr;
}

void ReactionNetwork::validate() const {
    std::size_t n = species.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (species[i].index != i) throw std::invalid_argument("species index out of order");
        if (!is_valid_identifier(species[i].name))
            throw std::invalid_argument("invalid species name: " + species[i].name);
        for (std::size_t j = i + 1; j < n; ++j)
            if (species[i].name == species[j].name)
                throw std::invalid_argument("duplicate species name: " + species[i].name);
    }
    for (const auto& r : reactions) {
        if (r.rate < 1) throw std::invalid_argument("rate must be a positive integer");
        if (r.reactants.size() < n || r.products.size() < n)
            throw std::invalid_argument("stoichiometry vector too short");
        bool any = false;
        for (std::size_t i = 0; i < r.reactants.size(); ++i) {
            if (i >= n && (r.reactants[i] || r.products[i]))
                throw std::invalid_argument("stoichiometry references unknown species");
            any = any || r.reactants[i] > 0 || r.products[i] > 0;
        }
        if (!any) throw std::invalid_argument("reaction with empty reactant and product sides");
    }
    for (const auto& d : driven) {
        if (d.species >= n) throw std::invalid_argument("driven species out of range");
        if (d.points.empty()) throw std::invalid_argument("driven signal without breakpoints");
        for (std::size_t k = 1; k < d.points.size(); ++k)
            if (d.points[k].time <= d.points[k - 1].time)
                throw std::invalid_argument("driven breakpoints must increase in time");
        for (const auto& p : d.points)
            if (p.time < 0 || p.value < 0)
                throw std::invalid_argument("driven breakpoints must be nonnegative");
        // forcing inputs may be catalysts or get consumed, never net-produced
        for (const auto& r : reactions)
            if (r.products[d.species] > r.reactants[d.species])
                throw std::invalid_argument("driven species '" + species[d.species].name +
                                            "' is net-produced by a reaction");
    }
}

ReactionNetwork parse_network(std::string_view text) {
    Builder b;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        Cursor cur{raw, line_no, 0};
        if (cur.eol()) {
            if (end == text.size()) break;
            continue;
        }

        // Reactions always contain "->"; anything else must be a directive.
        if (raw.find("->") == std::string_view::npos) {
            std::size_t save = cur.pos;
            auto word = cur.try_identifier();
            if (word && *word == "driven") {
                parse_driven_line(cur, b);
            } else if (word) {
                cur.pos = save;
                cur.fail("unknown directive '" + *word + "'");
            } else {
                cur.fail("expected a reaction or directive");
            }
        } else {
            parse_reaction_line(cur, b);
        }
        if (end == text.size()) break;
    }

    // shrink stoichiometry to the final species count
    std::size_t n = b.net.species.size();
    for (auto& r : b.net.reactions) {
        r.reactants.resize(n);
        r.products.resize(n);
    }
    b.net.validate();
    return std::move(b.net);
}

std::string to_text(const ReactionNetwork& net) {
    std::ostringstream out;
    auto side = [&](const std::vector<std::uint32_t>& stoich) {
        std::string s;
        for (std::size_t i = 0; i < stoich.size(); ++i) {
            if (stoich[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (stoich[i] > 1) s += std::to_string(stoich[i]);
            s += net.species[i].name;
        }
        return s.empty() ? std::string("0") : s;
    };
    for (const auto& r : net.reactions)
        out << side(r.reactants) << " -> " << side(r.products) << " : " << r.rate << "\n";
    char buf[64];
    for (const auto& d : net.driven) {
        out << "driven " << net.species[d.species].name << ":";
        for (const auto& p : d.points) {
            std::snprintf(buf, sizeof buf, " (%.17g,%.17g)", p.time, p.value);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace crnmem
