#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <sstream>

#include "crnmem/errors.hpp"
#include "crnmem/integrate.hpp"

using namespace crnmem;

namespace {

const char* kApproachOne = "0 -> X : 1\nX -> 0 : 1";   // f = 1 - x
const char* kSqrt2 = "0 -> X : 2\n2X -> X : 1";        // f = 2 - x^2
const char* kConstant = "X -> X : 1";                  // f = 0

double sqrt2_closed_form(double t) { return std::sqrt(2.0) * std::tanh(std::sqrt(2.0) * t); }

Solution solve(const char* text, double x0, double t_end, IntegratorConfig cfg = {}) {
    return integrate(parse_network(text), {x0}, t_end, cfg);
}

}  // namespace

TEST_CASE("exponential approach matches the closed form to 1e-8", "[integrator]") {
    auto sol = solve(kApproachOne, 0.0, 10.0);
    for (double t = 0.0; t <= 10.0; t += 0.01) {
        double exact = 1.0 - std::exp(-t);
        CHECK(std::abs(sol.eval_species(t, 0) - exact) < 1e-8);
    }
}

TEST_CASE("sqrt2 exemplar matches sqrt2*tanh(sqrt2 t) to 1e-8", "[integrator]") {
    auto sol = solve(kSqrt2, 0.0, 10.0);
    for (double t = 0.0; t <= 10.0; t += 0.01)
        CHECK(std::abs(sol.eval_species(t, 0) - sqrt2_closed_form(t)) < 1e-8);
}

TEST_CASE("no reactions means a constant solution", "[integrator]") {
    auto sol = solve(kConstant, 0.7, 5.0);
    for (double t = 0.0; t <= 5.0; t += 0.37) CHECK(sol.eval_species(t, 0) == 0.7);
}

TEST_CASE("finite-time blow-up is reported as unbounded", "[integrator]") {
    try {
        solve("2X -> 3X : 1", 2.0, 1.0);  // f = x^2 from x0 = 2 blows up at t = 0.5
        FAIL("expected a simulation error");
    } catch (const SimulationError& e) {
        CHECK(e.kind() == SimulationError::Kind::unbounded_trajectory);
        CHECK(e.time() < 0.51);
    }
}

TEST_CASE("states stay nonnegative on decaying dynamics", "[integrator]") {
    auto sol = solve("X -> 0 : 3", 1.0, 20.0);
    for (double t = 0.0; t <= 20.0; t += 0.01) CHECK(sol.eval_species(t, 0) >= 0.0);
}

TEST_CASE("tightening tolerance does not worsen accuracy", "[integrator]") {
    double prev_err = 1.0;
    for (double rtol : {1e-6, 1e-8, 1e-10}) {
        IntegratorConfig cfg;
        cfg.rel_tol = rtol;
        cfg.abs_tol = rtol * 1e-2;
        cfg.max_step = 10.0;  // let the controller pick the step scale
        auto sol = solve(kSqrt2, 0.0, 10.0, cfg);
        double err = 0.0;
        for (double t = 0.0; t <= 10.0; t += 0.05)
            err = std::max(err, std::abs(sol.eval_species(t, 0) - sqrt2_closed_form(t)));
        CHECK(err <= prev_err * 1.05 + 1e-15);
        prev_err = err;
    }
}

TEST_CASE("boundary crossing is localized to the closed-form time", "[integrator]") {
    auto sol = solve(kSqrt2, 0.0, 10.0);
    auto events = detect_events(sol, {{0.75}});
    REQUIRE(events.size() == 1);
    CHECK(events[0].direction == EventDirection::upward);
    double exact = std::atanh(0.75 / std::sqrt(2.0)) / std::sqrt(2.0);
    CHECK(std::abs(events[0].time - exact) < 1e-9);
}

TEST_CASE("constant solutions produce no events", "[integrator]") {
    auto sol = solve(kConstant, 0.7, 10.0);
    CHECK(detect_events(sol, {{0.5}}).empty());
    CHECK(detect_events(sol, {{0.8}}).empty());
}

TEST_CASE("sitting identically on a boundary is not a crossing", "[integrator]") {
    // logistic fixed point: x0 = 1 stays at 1 exactly
    auto sol = solve("X -> 2X : 1\n2X -> X : 1", 1.0, 10.0);
    CHECK(detect_events(sol, {{1.0}}).empty());
}

TEST_CASE("event count matches the closed form on an oscillation-free run", "[integrator]") {
    // 1 - e^{-t} crosses each level in (0,1) exactly once
    auto sol = solve(kApproachOne, 0.0, 30.0);
    for (double level : {0.1, 0.5, 0.9, 0.99}) {
        auto events = detect_events(sol, {{level}});
        REQUIRE(events.size() == 1);
        double exact = -std::log(1.0 - level);
        CHECK(std::abs(events[0].time - exact) < 1e-8);
    }
}

TEST_CASE("driven square pulse crosses a boundary twice", "[integrator]") {
    auto net = parse_network("C + X -> C + 2X : 1\ndriven C: (0,0) (1,1) (3,1) (4,0)");
    auto c_idx = net.find_species("C").value();
    auto sol = integrate(net, {0.0, 0.1}, 6.0);
    std::vector<std::vector<double>> bounds(2);
    bounds[c_idx] = {0.5};
    auto events = detect_events(sol, bounds);
    REQUIRE(events.size() == 2);
    CHECK(events[0].direction == EventDirection::upward);
    CHECK(events[0].time == Catch::Approx(0.5).margin(1e-9));
    CHECK(events[1].direction == EventDirection::downward);
    CHECK(events[1].time == Catch::Approx(3.5).margin(1e-9));
}

TEST_CASE("bound estimates follow the closed forms", "[integrator]") {
    auto sol = solve(kSqrt2, 0.0, 10.0);
    auto b = estimate_bounds(sol);
    CHECK(b.beta == Catch::Approx(std::sqrt(2.0)).epsilon(1e-4));
    CHECK(b.beta0 == Catch::Approx(2.0).epsilon(1e-4));

    auto flat = estimate_bounds(solve(kConstant, 0.7, 10.0));
    CHECK(flat.beta == Catch::Approx(0.7).epsilon(1e-6));
    CHECK(flat.beta0 < 1e-9);

    auto ramp = estimate_bounds(solve(kApproachOne, 0.0, 10.0));
    CHECK(ramp.beta == Catch::Approx(1.0).epsilon(1e-4));
    CHECK(ramp.beta0 == Catch::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sojourn time of a flat species is the elapsed time", "[integrator]") {
    auto sol = solve(kConstant, 0.7, 10.0);
    CHECK(sojourn_time(sol, 0, 0.0, 5.0) == Catch::Approx(5.0).epsilon(1e-10));
    CHECK(sojourn_time(sol, 0, 2.0, 2.0) == 0.0);
}

TEST_CASE("sojourn time matches an independent quadrature of the closed form", "[integrator]") {
    auto sol = solve(kApproachOne, 0.0, 10.0);
    // oracle: Simpson on sqrt(1 + e^{-2t}) with a fine fixed grid; the exact
    // antiderivative (substituting u = e^{-t}) gives 1.192722... as a cross
    // check on the oracle itself
    auto f = [](double t) { return std::sqrt(1.0 + std::exp(-2.0 * t)); };
    int n = 20000;
    double h = 1.0 / n, oracle = 0.0;
    for (int k = 0; k < n; ++k) {
        double a = k * h, b = a + h;
        oracle += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    double u1 = std::sqrt(2.0), u0 = std::sqrt(1.0 + std::exp(-2.0));
    double exact = (u1 - std::log((1.0 + u1) / 1.0)) - (u0 - std::log((1.0 + u0) / std::exp(-1.0)));
    CHECK(oracle == Catch::Approx(exact).margin(1e-10));
    CHECK(sojourn_time(sol, 0, 0.0, 1.0) == Catch::Approx(oracle).margin(1e-6));
}

TEST_CASE("sojourn rejects out-of-range intervals", "[integrator]") {
    auto sol = solve(kConstant, 0.7, 10.0);
    CHECK_THROWS_AS(sojourn_time(sol, 0, 5.0, 11.0), PreconditionError);
    CHECK_THROWS_AS(sojourn_time(sol, 0, -1.0, 5.0), PreconditionError);
}

TEST_CASE("csv export has a header and a final row at t_end", "[integrator]") {
    auto sol = solve(kSqrt2, 0.0, 10.0);
    std::ostringstream out;
    write_csv(sol, {"X"}, out, 0.5);
    std::string text = out.str();
    CHECK(text.rfind("t,X\n", 0) == 0);
    auto last = text.find_last_of('\n', text.size() - 2);
    std::string final_row = text.substr(last + 1);
    CHECK(final_row.rfind("10,", 0) == 0);
    double final_val = std::stod(final_row.substr(3));
    CHECK(final_val == Catch::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("empty networks integrate to an empty solution", "[integrator]") {
    auto sol = integrate(parse_network(""), {}, 5.0);
    CHECK(sol.dimension() == 0);
    std::ostringstream out;
    write_csv(sol, {}, out, 1.0);
    CHECK(out.str().rfind("t\n", 0) == 0);
}
