#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "crnmem/errors.hpp"
#include "crnmem/memory.hpp"

using namespace crnmem;

namespace {

// {0: [0,1/2), 1: (3/4, 15/8)} over c = 2
MemoryMap sqrt2_map() {
    std::vector<MemoryInterval> states;
    states.push_back({0, Rational(0, 1), Rational(1, 2), true});
    states.push_back({1, Rational(3, 4), Rational(15, 8), false});
    return MemoryMap(Rational(2, 1), std::move(states));
}

Solution sqrt2_solution(double x0 = 0.0, double t_end = 20.0) {
    return integrate(parse_network("0 -> X : 2\n2X -> X : 1"), {x0}, t_end);
}

double leave0_time() { return std::atanh(0.5 / std::sqrt(2.0)) / std::sqrt(2.0); }
double enter1_time() { return std::atanh(0.75 / std::sqrt(2.0)) / std::sqrt(2.0); }

}  // namespace

TEST_CASE("inverse lookup over the exemplar map", "[memory]") {
    auto map = sqrt2_map();
    CHECK(map.classify(0.0) == 0);               // state-0 closure at 0
    CHECK(map.classify(1.0) == 1);               // interior point
    CHECK(map.classify(0.6) == kResidualState);  // residual gap
    CHECK(map.classify(0.5) == kResidualState);  // endpoints are residual
    CHECK(map.classify(0.75) == kResidualState);
    CHECK_THROWS_AS(map.classify(2.5), PreconditionError);
    CHECK_THROWS_AS(map.classify(-0.1), PreconditionError);
}

TEST_CASE("inverse lookup is a partition with the round-trip property", "[memory]") {
    auto map = sqrt2_map();
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> sample(0.0, 2.0);
    for (int k = 0; k < 10000; ++k) {
        double r = sample(rng);
        auto id = map.classify(r);
        if (id == kResidualState) {
            for (const auto& s : map.states()) {
                if (s.empty()) continue;
                bool inside = (s.lo_closed ? r >= 0.0 : s.lo.compare_double(r) > 0) &&
                              s.hi.compare_double(r) < 0;
                CHECK_FALSE(inside);
            }
        } else {
            const auto* s = map.find_state(id);
            REQUIRE(s != nullptr);
            bool inside = (s->lo_closed ? r >= 0.0 : s->lo.compare_double(r) > 0) &&
                          s->hi.compare_double(r) < 0;
            CHECK(inside);  // r in f(f_inv(r))
        }
    }
}

TEST_CASE("map validation rejects malformed partitions", "[memory]") {
    // missing state 0
    CHECK_THROWS(MemoryMap(Rational(1, 1), {{1, Rational(1, 4), Rational(1, 2), false}}));
    // overlap
    CHECK_THROWS(MemoryMap(Rational(2, 1), {{0, Rational(0, 1), Rational(1, 2), true},
                                            {1, Rational(1, 4), Rational(1, 1), false}}));
    // beyond c
    CHECK_THROWS(MemoryMap(Rational(1, 1), {{0, Rational(0, 1), Rational(3, 2), true}}));
    // duplicate ids
    CHECK_THROWS(MemoryMap(Rational(2, 1), {{0, Rational(0, 1), Rational(1, 4), true},
                                            {0, Rational(1, 2), Rational(1, 1), false}}));
    // empty interval states are legal but can never be entered
    auto map = MemoryMap(Rational(2, 1), {{0, Rational(0, 1), Rational(1, 4), true},
                                          {3, Rational(1, 2), Rational(1, 2), false},
                                          {1, Rational(1, 1), Rational(3, 2), false}});
    CHECK(map.classify(0.5) == kResidualState);
    // adjacent intervals sharing an endpoint are disjoint
    CHECK_NOTHROW(MemoryMap(Rational(1, 1), {{0, Rational(0, 1), Rational(1, 2), true},
                                             {1, Rational(1, 2), Rational(1, 1), false}}));
}

TEST_CASE("event extraction on the sqrt2 exemplar", "[memory]") {
    auto sol = sqrt2_solution();
    auto events = extract_events(sol, {sqrt2_map()});
    REQUIRE(events.size() == 3);
    CHECK(events[0].kind == TransitionEvent::Kind::enter);
    CHECK(events[0].state == 0);
    CHECK(events[0].time == 0.0);
    CHECK(events[0].synthetic);
    CHECK(events[1].kind == TransitionEvent::Kind::leave);
    CHECK(events[1].state == 0);
    CHECK(std::abs(events[1].time - leave0_time()) < 1e-8);
    CHECK(events[2].kind == TransitionEvent::Kind::enter);
    CHECK(events[2].state == 1);
    CHECK(std::abs(events[2].time - enter1_time()) < 1e-8);
}

TEST_CASE("residual initialization yields an enter with no leave", "[memory]") {
    auto sol = sqrt2_solution(0.6);
    auto events = extract_events(sol, {sqrt2_map()});
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == TransitionEvent::Kind::enter);
    CHECK(events[0].state == 1);
    CHECK_FALSE(events[0].synthetic);
}

TEST_CASE("constant species inside a state produce no transitions", "[memory]") {
    auto sol = integrate(parse_network("X -> X : 1"), {0.3}, 10.0);
    auto events = extract_events(sol, {sqrt2_map()});
    REQUIRE(events.size() == 1);  // only the synthetic initialization
    CHECK(events[0].synthetic);
}

TEST_CASE("coverage precondition: dynamics must stay within c", "[memory]") {
    auto sol = sqrt2_solution();
    std::vector<MemoryInterval> states;
    states.push_back({0, Rational(0, 1), Rational(1, 2), true});
    auto small = MemoryMap(Rational(1, 1), std::move(states));  // c = 1 < sqrt(2)
    CHECK_THROWS_AS(extract_events(sol, {small}), CoverageError);
}

TEST_CASE("state times and the infinity convention", "[memory]") {
    auto sol = sqrt2_solution();
    auto visits = collect_visits(extract_events(sol, {sqrt2_map()}));
    REQUIRE(visits.size() == 2);
    auto st0 = state_time(visits[0]);
    REQUIRE(st0.has_value());
    CHECK(*st0 == Catch::Approx(leave0_time()).margin(1e-8));
    CHECK_FALSE(state_time(visits[1]).has_value());  // never leaves: infinity-marked
    CHECK(sol.t_end() - visits[1].t_enter > 19.5);   // observed lower bound
}

TEST_CASE("entry times include the synthetic start and respect d", "[memory]") {
    auto sol = sqrt2_solution();
    auto visits = collect_visits(extract_events(sol, {sqrt2_map()}));

    bool truncated = false;
    auto t1 = entry_times(visits, 0, 1.0, sol.t_end(), &truncated);
    REQUIRE(t1.size() == 2);
    CHECK(t1[0] == 0.0);  // synthetic entry regardless of its 0.26 s duration
    CHECK(t1[1] == Catch::Approx(enter1_time()).margin(1e-8));
    CHECK_FALSE(truncated);

    // d = 30 with a 20 s horizon: the second visit is unresolved
    truncated = false;
    auto t30 = entry_times(visits, 0, 30.0, sol.t_end(), &truncated);
    REQUIRE(t30.size() == 1);
    CHECK(t30[0] == 0.0);
    CHECK(truncated);
}

TEST_CASE("next transition picks the least time strictly above", "[memory]") {
    std::vector<double> times{0.0, 0.41763};
    CHECK(next_transition(times, 0.0).value() == Catch::Approx(0.41763));
    CHECK_FALSE(next_transition({0.0}, 0.0).has_value());
    CHECK(next_transition({0.0, 1.0, 2.0}, 0.5).value() == 1.0);
}

TEST_CASE("sqrt2 trajectory has exactly two entries", "[memory]") {
    auto sol = sqrt2_solution();
    auto traj = extract_trajectory(sol, {sqrt2_map()}, 1.0);
    REQUIRE(traj.entries.size() == 2);
    CHECK(traj.entries[0].time == 0.0);
    CHECK(traj.entries[0].state == MemoryState{0});
    CHECK(std::abs(traj.entries[1].time - enter1_time()) < 1e-6);
    CHECK(traj.entries[1].state == MemoryState{1});
    CHECK_FALSE(traj.truncated);
}

TEST_CASE("constant networks give a single-entry trajectory", "[memory]") {
    auto sol = integrate(parse_network("X -> X : 1"), {0.3}, 10.0);
    auto traj = extract_trajectory(sol, {sqrt2_map()}, 1.0);
    REQUIRE(traj.entries.size() == 1);
    CHECK(traj.entries[0].state == MemoryState{0});
}

TEST_CASE("residual initialization is refused for trajectories", "[memory]") {
    auto sol = sqrt2_solution(0.6);
    CHECK_THROWS_AS(extract_trajectory(sol, {sqrt2_map()}, 1.0), ResidualInitError);
}

TEST_CASE("trajectory invariants: increasing times, distinct neighbors", "[memory]") {
    auto sol = sqrt2_solution();
    auto traj = extract_trajectory(sol, {sqrt2_map()}, 0.1);
    for (std::size_t k = 1; k < traj.entries.size(); ++k) {
        CHECK(traj.entries[k].time > traj.entries[k - 1].time);
        CHECK(traj.entries[k].state != traj.entries[k - 1].state);
    }
}

TEST_CASE("enter and leave alternate per species", "[memory]") {
    auto sol = sqrt2_solution();
    auto events = extract_events(sol, {sqrt2_map()});
    bool open = false;
    for (const auto& e : events) {
        if (e.kind == TransitionEvent::Kind::enter) {
            CHECK_FALSE(open);
            open = true;
        } else {
            CHECK(open);
            open = false;
        }
    }
}

TEST_CASE("rate bound passes on the exemplar and rejects a violation", "[memory]") {
    auto sol = sqrt2_solution();
    auto traj = extract_trajectory(sol, {sqrt2_map()}, 1.0);
    auto report = check_rate_bound(traj, 1, 1.0);
    CHECK(report.pass);
    CHECK(report.bound == 2);
    CHECK(report.worst_count == 1);  // one transition entry in any 1 s window

    // hand-built violation: three transitions of one species inside d = 1
    MemoryTrajectory bad;
    bad.delay = 1.0;
    bad.entries.push_back({0, 0.0, {0}});
    bad.entries.push_back({1, 0.1, {1}});
    bad.entries.push_back({2, 0.2, {2}});
    bad.entries.push_back({3, 0.3, {0}});
    auto verdict = check_rate_bound(bad, 1, 1.0);
    CHECK_FALSE(verdict.pass);
    CHECK(verdict.worst_count == 3);

    // single-entry trajectories always pass
    MemoryTrajectory single;
    single.entries.push_back({0, 0.0, {0}});
    CHECK(check_rate_bound(single, 1, 1.0).pass);
}

TEST_CASE("between a leave and the next enter the species is residual", "[memory]") {
    auto sol = sqrt2_solution();
    auto map = sqrt2_map();
    auto events = extract_events(sol, {map});
    REQUIRE(events.size() == 3);
    double t_leave = events[1].time, t_enter = events[2].time;
    for (double w : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double t = t_leave + w * (t_enter - t_leave);
        CHECK(map.classify(sol.eval_species(t, 0)) == kResidualState);
    }
}
