// crnmem: workbench for deterministic chemical reaction networks with
// interval memory. Subcommands cover simulation, memory trajectories,
// fixed-point/stability analysis, NFA compilation, determinism checking,
// and Turing-machine following.
//
// Exit codes: 0 ok/pass, 1 check failed, 2 parse error, 3 invalid
// initialization, 4 precondition violation, 5 nondeterminism detected.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "crnmem/analysis.hpp"
#include "crnmem/determinism.hpp"
#include "crnmem/errors.hpp"
#include "crnmem/integrate.hpp"
#include "crnmem/json_io.hpp"
#include "crnmem/memory.hpp"
#include "crnmem/network.hpp"
#include "crnmem/nfa.hpp"
#include "crnmem/tm.hpp"

namespace {

using namespace crnmem;

constexpr const char* kVersion = "crnmem 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitBadInit = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitNondet = 5;

struct Manifest {
    json inputs = json::object();
    json config = json::object();
    std::string command;
    std::uint64_t seed = 0;

    void add_input(const std::string& path, const std::string& bytes) {
        inputs[path] = fnv1a_digest(bytes);
    }
    void write(const std::string& base) const {
        json j{{"command", command},
               {"inputs", inputs},
               {"config", config},
               {"seed", seed},
               {"version", kVersion}};
        write_file(base + ".manifest.json", canonical_dump(j));
    }
};

std::vector<double> parse_x0(const std::string& arg, const ReactionNetwork& net) {
    std::vector<double> x0(net.species_count(), 0.0);
    if (arg.empty()) return x0;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("--x0 entries look like NAME=VALUE", 1, 1);
        std::string name = item.substr(0, eq);
        auto idx = net.find_species(name);
        if (!idx) throw ParseError("unknown species in --x0: " + name, 1, 1);
        x0[*idx] = std::stod(item.substr(eq + 1));
    }
    return x0;
}

std::vector<double> x0_from_file(const std::string& path, const ReactionNetwork& net) {
    json j = json::parse(read_file(path));
    std::vector<double> x0(net.species_count(), 0.0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto idx = net.find_species(it.key());
        if (!idx) throw ParseError("unknown species in x0 file: " + it.key(), 1, 1);
        x0[*idx] = it.value().get<double>();
    }
    return x0;
}

std::vector<std::pair<double, double>> parse_region(const std::string& arg, std::size_t n) {
    std::vector<std::pair<double, double>> region;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("--region ranges look like LO:HI", 1, 1);
        double lo = std::stod(item.substr(0, colon));
        double hi = std::stod(item.substr(colon + 1));
        region.emplace_back(std::max(lo, 0.0), hi);
    }
    if (region.size() == 1 && n > 1) region.assign(n, region[0]);
    if (region.size() != n) throw ParseError("--region needs one LO:HI range per species", 1, 1);
    return region;
}

std::vector<MemoryState> parse_states(const std::string& arg, std::size_t n) {
    std::vector<MemoryState> states;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ';')) {
        MemoryState m;
        std::stringstream is(item);
        std::string id;
        while (std::getline(is, id, ',')) m.push_back(static_cast<std::uint32_t>(std::stoul(id)));
        if (m.size() != n)
            throw ParseError("each --states tuple needs one id per species", 1, 1);
        states.push_back(std::move(m));
    }
    if (states.empty()) throw ParseError("--states must list at least one state", 1, 1);
    return states;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

struct CommonOpts {
    std::string crn_path;
    std::string x0_arg;
    std::string x0_file;
    double t_end = 20.0;
    IntegratorConfig cfg;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_x0 = true) {
    cmd->add_option("crn", o.crn_path, "reaction network file (.crn)")->required();
    if (with_x0) {
        cmd->add_option("--x0", o.x0_arg, "initial concentrations, NAME=VALUE[,NAME=VALUE...]");
        cmd->add_option("--x0-file", o.x0_file, "initial concentrations as a JSON object");
    }
    cmd->add_option("--t-end", o.t_end, "integration horizon in seconds");
    cmd->add_option("--rel-tol", o.cfg.rel_tol, "relative tolerance");
    cmd->add_option("--abs-tol", o.cfg.abs_tol, "absolute tolerance");
    cmd->add_option("--max-step", o.cfg.max_step, "maximum step size");
}

struct LoadedNetwork {
    ReactionNetwork net;
    std::vector<double> x0;
    std::string crn_bytes;
};

LoadedNetwork load_network(const CommonOpts& o, Manifest& manifest) {
    LoadedNetwork l;
    l.crn_bytes = read_file(o.crn_path);
    manifest.add_input(o.crn_path, l.crn_bytes);
    l.net = parse_network(l.crn_bytes);
    if (!o.x0_file.empty()) {
        manifest.add_input(o.x0_file, read_file(o.x0_file));
        l.x0 = x0_from_file(o.x0_file, l.net);
    } else {
        l.x0 = parse_x0(o.x0_arg, l.net);
    }
    return l;
}

std::vector<MemoryMap> load_maps(const std::string& path, const ReactionNetwork& net,
                                 Manifest& manifest) {
    std::string bytes = read_file(path);
    manifest.add_input(path, bytes);
    return maps_from_json(json::parse(bytes), net);
}

std::vector<std::string> species_names(const ReactionNetwork& net) {
    std::vector<std::string> names;
    for (const auto& s : net.species) names.push_back(s.name);
    return names;
}

int cmd_simulate(const CommonOpts& o, double stride, const std::string& out_base,
                 Manifest manifest) {
    auto l = load_network(o, manifest);
    manifest.config = {{"t_end", o.t_end},
                       {"stride", stride},
                       {"rel_tol", o.cfg.rel_tol},
                       {"abs_tol", o.cfg.abs_tol},
                       {"max_step", o.cfg.max_step}};
    auto sol = integrate(l.net, l.x0, o.t_end, o.cfg);
    std::ostringstream csv;
    write_csv(sol, species_names(l.net), csv, stride);
    write_file(out_base + ".csv", csv.str());
    manifest.write(out_base);
    return kExitOk;
}

int cmd_trajectory(const CommonOpts& o, const std::string& maps_path, double delay,
                   const std::string& project, const std::string& out_base, Manifest manifest) {
    auto l = load_network(o, manifest);
    auto maps = load_maps(maps_path, l.net, manifest);
    manifest.config = {{"t_end", o.t_end}, {"delay", delay}};
    auto sol = integrate(l.net, l.x0, o.t_end, o.cfg);
    auto traj = extract_trajectory(sol, maps, delay);
    json out = trajectory_to_json(traj, l.net);
    if (!project.empty()) {
        std::vector<std::size_t> rails;
        std::stringstream ss(project);
        std::string name;
        while (std::getline(ss, name, ',')) {
            auto idx = l.net.find_species(name);
            if (!idx) throw ParseError("unknown species in --project: " + name, 1, 1);
            rails.push_back(*idx);
        }
        json decoded = json::array();
        for (const auto& m : decode_rails(traj, rails)) {
            json s = json::array();
            for (auto id : m) s.push_back(id);
            decoded.push_back(s);
        }
        out["projected"] = {{"species", json::parse("[]")}, {"states", decoded}};
        for (std::size_t r : rails) out["projected"]["species"].push_back(l.net.species[r].name);
    }
    write_file(out_base + ".json", canonical_dump(out));
    write_file(out_base + ".csv", trajectory_to_csv(traj, l.net));
    manifest.write(out_base);
    return kExitOk;
}

int cmd_analyze(const CommonOpts& o, CLI::App* cmd, const std::string& out_base,
                Manifest manifest) {
    std::string region_arg, species_name;
    std::size_t seeds = 100;
    double realtime_alpha = 0.0, epsd_alpha = 0.0, eps = 0.0, dwin = 0.0, minpoly_v = 0.0;
    double t_max = 20.0, grid = 0.1;
    int max_degree = 3;
    std::int64_t max_coeff = 10;
    bool has_region = cmd->count("--region") > 0;
    bool has_realtime = cmd->count("--realtime") > 0;
    bool has_epsd = cmd->count("--epsd") > 0;
    bool has_minpoly = cmd->count("--minpoly") > 0;
    if (has_region) region_arg = cmd->get_option("--region")->as<std::string>();
    if (has_realtime) realtime_alpha = cmd->get_option("--realtime")->as<double>();
    if (has_epsd) epsd_alpha = cmd->get_option("--epsd")->as<double>();
    if (has_minpoly) minpoly_v = cmd->get_option("--minpoly")->as<double>();
    if (cmd->count("--species")) species_name = cmd->get_option("--species")->as<std::string>();
    if (cmd->count("--seeds")) seeds = cmd->get_option("--seeds")->as<std::size_t>();
    if (cmd->count("--eps")) eps = cmd->get_option("--eps")->as<double>();
    if (cmd->count("--d")) dwin = cmd->get_option("--d")->as<double>();
    if (cmd->count("--t-max")) t_max = cmd->get_option("--t-max")->as<double>();
    if (cmd->count("--grid")) grid = cmd->get_option("--grid")->as<double>();
    if (cmd->count("--max-degree")) max_degree = cmd->get_option("--max-degree")->as<int>();
    if (cmd->count("--max-coeff")) max_coeff = cmd->get_option("--max-coeff")->as<std::int64_t>();

    json report;
    int exit_code = kExitOk;

    if (has_minpoly) {
        manifest.config = {{"minpoly", minpoly_v}, {"max_degree", max_degree},
                           {"max_coeff", max_coeff}};
        auto p = minpoly_probe(minpoly_v, max_degree, max_coeff);
        report["minpoly"] = p ? json{{"found", true}, {"polynomial", p->str()},
                                     {"value", minpoly_v}}
                              : json{{"found", false}, {"value", minpoly_v}};
        write_file(out_base + ".json", canonical_dump(report));
        manifest.write(out_base);
        return exit_code;
    }

    auto l = load_network(o, manifest);
    auto field = derive_field(l.net);

    if (has_region) {
        manifest.config = {{"region", region_arg}, {"seeds", seeds}};
        FixedPointOptions opts;
        opts.seeds = seeds;
        auto reports = find_fixed_points(field, parse_region(region_arg, field.arity), opts);
        json arr = json::array();
        for (const auto& r : reports) {
            json pt = json::array();
            for (double v : r.point) pt.push_back(v);
            arr.push_back(
                {{"point", pt},
                 {"residual", r.residual},
                 {"spectral_abscissa", r.spectral_abscissa},
                 {"classification", r.classification == Stability::exp_stable ? "exp_stable"
                                    : r.classification == Stability::unstable ? "unstable"
                                                                              : "inconclusive"},
                 {"isolation", r.isolation == Isolation::isolated_certified
                                   ? "isolated_certified"
                                   : "not_certified"}});
        }
        report["fixed_points"] = arr;
    } else if (has_realtime || has_epsd) {
        if (species_name.empty()) throw ParseError("--species is required", 1, 1);
        auto idx = l.net.find_species(species_name);
        if (!idx) throw ParseError("unknown species: " + species_name, 1, 1);
        double horizon = std::max(o.t_end, has_realtime ? t_max : dwin * 2.0);
        auto sol = integrate(field, l.net.driven, l.x0, horizon, o.cfg);
        if (has_realtime) {
            manifest.config = {{"realtime", realtime_alpha}, {"t_max", t_max}, {"grid", grid}};
            auto v = check_realtime(sol, *idx, realtime_alpha, t_max, grid);
            json curve = json::array();
            for (const auto& p : v.margin_curve)
                curve.push_back(json::array({p[0], p[1], p[2]}));
            report["realtime"] = {{"alpha", v.alpha}, {"pass", v.pass}, {"curve", curve}};
            if (v.first_violation) report["realtime"]["first_violation"] = *v.first_violation;
            if (!v.warning.empty()) report["realtime"]["warning"] = v.warning;
            std::ostringstream csv;
            csv << "t,gap,budget\n";
            char buf[160];
            for (const auto& p : v.margin_curve) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
                csv << buf;
            }
            write_file(out_base + ".curve.csv", csv.str());
            if (!v.pass) exit_code = kExitCheckFailed;
        } else {
            manifest.config = {{"epsd_alpha", epsd_alpha}, {"eps", eps}, {"d", dwin}};
            auto r = check_epsd(sol, *idx, epsd_alpha, eps, dwin);
            report["epsd"] = {{"alpha", epsd_alpha}, {"pass", r.pass}};
            if (r.pass) report["epsd"]["witness_t0"] = r.witness_t0;
            if (!r.pass) exit_code = kExitCheckFailed;
        }
    } else {
        throw ParseError("analyze needs one of --region, --realtime, --epsd, --minpoly", 1, 1);
    }

    write_file(out_base + ".json", canonical_dump(report));
    manifest.write(out_base);
    return exit_code;
}

int cmd_compile_nfa(const std::string& nfa_path, double period, std::int64_t rate,
                    const std::string& word, const std::string& out_base, Manifest manifest) {
    std::string bytes = read_file(nfa_path);
    manifest.add_input(nfa_path, bytes);
    manifest.config = {{"period", period}, {"rate", rate}, {"input", word}};
    auto aut = automaton_from_json(json::parse(bytes));
    auto bundle = compile(aut, period, rate);
    bundle.set_input(word);

    write_file(out_base + ".crn", to_text(bundle.network));
    write_file(out_base + ".maps.json",
               canonical_dump(maps_to_json(bundle.maps, bundle.network)));
    write_file(out_base + ".waves.json", canonical_dump(waveforms_to_json(bundle.network)));
    json x0 = json::object();
    for (std::size_t i = 0; i < bundle.network.species.size(); ++i)
        x0[bundle.network.species[i].name] = bundle.x0[i];
    json meta{{"x0", x0},
              {"recommended_delay", bundle.recommended_delay},
              {"symbol_period", bundle.symbol_period}};
    write_file(out_base + ".x0.json", canonical_dump(meta["x0"]));
    write_file(out_base + ".meta.json", canonical_dump(meta));
    manifest.write(out_base);
    return kExitOk;
}

int cmd_determinism(const CommonOpts& o, const std::string& maps_path, double delay,
                    const std::string& states_arg, std::size_t samples, double horizon,
                    std::uint64_t seed, const std::string& out_base, Manifest manifest) {
    auto l = load_network(o, manifest);
    auto maps = load_maps(maps_path, l.net, manifest);
    manifest.config = {{"delay", delay},
                       {"states", states_arg},
                       {"samples", samples},
                       {"horizon", horizon}};
    DeltaOptions opts;
    opts.samples_per_state = samples;
    opts.horizon = horizon;
    opts.seed = seed;
    opts.integrator = o.cfg;
    auto result =
        extract_delta(l.net, maps, delay, parse_states(states_arg, l.net.species_count()), opts);
    if (result.conflict) {
        write_file(out_base + ".json", canonical_dump(delta_conflict_to_json(*result.conflict)));
        manifest.write(out_base);
        std::cerr << "nondeterminism detected: " << result.conflict->note << "\n";
        return kExitNondet;
    }
    write_file(out_base + ".json", canonical_dump(delta_table_to_json(*result.table)));
    manifest.write(out_base);
    return kExitOk;
}

int cmd_follow(const CommonOpts& o, const std::string& maps_path, double delay,
               std::uint64_t max_steps, std::size_t samples, std::uint64_t seed,
               const std::string& out_base, Manifest manifest) {
    auto l = load_network(o, manifest);
    auto maps = load_maps(maps_path, l.net, manifest);
    manifest.config = {{"delay", delay}, {"max_steps", max_steps}, {"t_end", o.t_end}};
    auto sol = integrate(l.net, l.x0, o.t_end, o.cfg);
    auto traj = extract_trajectory(sol, maps, delay);

    // delta source: box-sampled evidence for autonomous networks; the
    // observed trajectory for externally driven ones (re-initializing a
    // mid-phase box at t = 0 would decouple the state from its clock)
    DeltaResult dres;
    if (l.net.driven.empty()) {
        std::vector<MemoryState> states;
        for (const auto& e : traj.entries)
            if (std::find(states.begin(), states.end(), e.state) == states.end())
                states.push_back(e.state);
        DeltaOptions opts;
        opts.samples_per_state = samples;
        opts.horizon = o.t_end;
        opts.seed = seed;
        opts.integrator = o.cfg;
        dres = extract_delta(l.net, maps, delay, states, opts);
    } else {
        dres = delta_from_trajectory(traj);
    }
    if (dres.conflict) {
        write_file(out_base + ".json", canonical_dump(delta_conflict_to_json(*dres.conflict)));
        manifest.write(out_base);
        std::cerr << "nondeterminism detected: no single-valued delta\n";
        return kExitNondet;
    }

    auto check = verify_delta(*dres.table, traj);
    if (!check.pass) {
        write_file(out_base + ".json",
                   canonical_dump(json{{"pass", false}, {"message", check.message}}));
        manifest.write(out_base);
        return kExitCheckFailed;
    }

    auto tm = generate_tm(*dres.table);
    auto trace = run_tm(tm, traj.entries.front().state, max_steps);
    auto verdict = verify_realtime_follow(trace, traj);

    json out{{"pass", verdict.pass},
             {"c", verdict.c},
             {"delta", delta_table_to_json(*dres.table)},
             {"trace", trace_to_json(trace)},
             {"trajectory_entries", traj.entries.size()}};
    if (verdict.first_mismatch) out["first_mismatch"] = *verdict.first_mismatch;
    if (!verdict.message.empty()) out["message"] = verdict.message;
    write_file(out_base + ".json", canonical_dump(out));
    write_file(out_base + ".tm.json", canonical_dump(tm_to_json(tm)));
    manifest.write(out_base);
    return verdict.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for deterministic chemical reaction networks with interval memory"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for all sampling (default 0)");
    if (const char* threads = std::getenv("CRNMEM_THREADS")) {
        (void)threads;  // worker cap honored trivially: commands run single-threaded
    }

    // simulate
    CommonOpts sim_opts;
    double stride = 0.01;
    std::string sim_out;
    auto* sim = app.add_subcommand("simulate", "integrate and export dense samples as CSV");
    add_common(sim, sim_opts);
    sim->add_option("--stride", stride, "CSV sample spacing in seconds");
    sim->add_option("--out", sim_out, "output base path")->required();

    // trajectory
    CommonOpts traj_opts;
    std::string traj_maps, traj_project, traj_out;
    double traj_delay = 1.0;
    auto* traj = app.add_subcommand("trajectory", "extract the memory trajectory");
    add_common(traj, traj_opts);
    traj->add_option("--memory", traj_maps, "memory map JSON file")->required();
    traj->add_option("--delay", traj_delay, "qualifying delay d")->required();
    traj->add_option("--project", traj_project, "comma list of species for a committed view");
    traj->add_option("--out", traj_out, "output base path")->required();

    // analyze
    CommonOpts an_opts;
    std::string an_out;
    auto* an = app.add_subcommand("analyze", "fixed points, real-time, (eps,d), minpoly");
    add_common(an, an_opts);
    an->add_option("--region", "fixed-point search box, LO:HI[,LO:HI...]");
    an->add_option("--seeds", "number of Newton seeds");
    an->add_option("--realtime", "check |x(t)-|alpha|| < 2^-t for this alpha");
    an->add_option("--epsd", "check (eps,d)-computation of this alpha");
    an->add_option("--eps", "tube half-width for --epsd");
    an->add_option("--d", "window length for --epsd");
    an->add_option("--species", "designated species name");
    an->add_option("--t-max", "real-time check horizon (<= 25)");
    an->add_option("--grid", "real-time check grid step");
    an->add_option("--minpoly", "probe this value for an integer minimal polynomial");
    an->add_option("--max-degree", "minpoly degree cap");
    an->add_option("--max-coeff", "minpoly coefficient cap");
    an->add_option("--out", an_out, "output base path")->required();

    // compile-nfa
    std::string nfa_path, nfa_word, nfa_out;
    double nfa_period = 10.0;
    std::int64_t nfa_rate = 5;
    auto* nfa = app.add_subcommand("compile-nfa", "compile an automaton to a dual-rail bundle");
    nfa->add_option("nfa", nfa_path, "automaton JSON file")->required();
    nfa->add_option("--period", nfa_period, "symbol period in seconds")->required();
    nfa->add_option("--rate", nfa_rate, "reaction rate constant k")->required();
    nfa->add_option("--input", nfa_word, "binary input word")->required();
    nfa->add_option("--out", nfa_out, "output base path")->required();

    // determinism
    CommonOpts det_opts;
    std::string det_maps, det_states, det_out;
    double det_delay = 1.0, det_horizon = 40.0;
    std::size_t det_samples = 25;
    auto* det = app.add_subcommand("determinism", "sample a delta table or find a conflict");
    add_common(det, det_opts, /*with_x0=*/false);
    det->add_option("--memory", det_maps, "memory map JSON file")->required();
    det->add_option("--delay", det_delay, "qualifying delay d")->required();
    det->add_option("--states", det_states, "semicolon list of id tuples, e.g. \"0;1\"")
        ->required();
    det->add_option("--samples", det_samples, "samples per state (>= 2)");
    det->add_option("--horizon", det_horizon, "per-sample integration horizon");
    det->add_option("--out", det_out, "output base path")->required();

    // follow
    CommonOpts fol_opts;
    std::string fol_maps, fol_out;
    double fol_delay = 1.0;
    std::uint64_t fol_max_steps = 100000;
    std::size_t fol_samples = 25;
    auto* fol = app.add_subcommand("follow", "generate a TM and verify real-time following");
    add_common(fol, fol_opts);
    fol->add_option("--memory", fol_maps, "memory map JSON file")->required();
    fol->add_option("--delay", fol_delay, "qualifying delay d")->required();
    fol->add_option("--max-steps", fol_max_steps, "TM step budget");
    fol->add_option("--samples", fol_samples, "delta samples per state (autonomous networks)");
    fol->add_option("--out", fol_out, "output base path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    Manifest manifest;
    manifest.command = join_args(argc, argv);
    manifest.seed = seed;

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts, stride, sim_out, manifest);
        if (traj->parsed())
            return cmd_trajectory(traj_opts, traj_maps, traj_delay, traj_project, traj_out,
                                  manifest);
        if (an->parsed()) return cmd_analyze(an_opts, an, an_out, manifest);
        if (nfa->parsed())
            return cmd_compile_nfa(nfa_path, nfa_period, nfa_rate, nfa_word, nfa_out, manifest);
        if (det->parsed())
            return cmd_determinism(det_opts, det_maps, det_delay, det_states, det_samples,
                                   det_horizon, seed, det_out, manifest);
        if (fol->parsed())
            return cmd_follow(fol_opts, fol_maps, fol_delay, fol_max_steps, fol_samples, seed,
                              fol_out, manifest);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ResidualInitError& e) {
        std::cerr << "invalid initialization: " << e.what() << "\n";
        return kExitBadInit;
    } catch (const NondeterminismError& e) {
        std::cerr << "nondeterminism: " << e.what() << "\n";
        return kExitNondet;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violation: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
