#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "crnmem/polynomial.hpp"

namespace crnmem {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.025;
    double event_time_tol = 1e-12;
    double negativity_clamp = 1e-12;
};

enum class EventDirection { upward, downward, grazing };

struct EventRecord {
    std::size_t species = 0;
    double boundary = 0.0;
    double time = 0.0;
    EventDirection direction = EventDirection::upward;
};

// Dense ODE solution on [0, t_end]. Accepted Dormand-Prince steps carry a
// fourth-order continuous extension; between-step derivatives come from the
// vector field itself evaluated at the interpolated state, so they are as
// accurate as the interpolant. Driven species are read off their waveforms
// exactly at any query time. Immutable after construction.
class Solution {
public:
    double t_end() const { return t_end_; }
    std::size_t dimension() const { return field_->arity; }
    std::size_t step_count() const { return steps_.size(); }
    double step_start(std::size_t k) const { return steps_[k].t0; }
    double step_width(std::size_t k) const { return steps_[k].h; }

    std::vector<double> eval(double t) const;
    double eval_species(double t, std::size_t species) const;
    std::vector<double> derivative(double t) const;
    double derivative_species(double t, std::size_t species) const;

    const std::vector<double>& initial_state() const { return x0_; }
    const IntegratorConfig& config() const { return cfg_; }
    const PolynomialField& field() const { return *field_; }
    const std::vector<DrivenSignal>& driven() const { return *driven_; }
    bool is_driven(std::size_t species) const;

private:
    friend Solution integrate(const PolynomialField&, const std::vector<DrivenSignal>&,
                              std::vector<double>, double, const IntegratorConfig&);

    struct Step {
        double t0 = 0.0;
        double h = 0.0;
        std::vector<double> y0, f0;
        // Continuous-extension coefficients, one vector per nesting level.
        std::vector<double> r1, r2, r3, r4, r5;
    };

    std::size_t locate(double t) const;
    double interp(const Step& s, double theta, std::size_t i) const;

    std::vector<Step> steps_;
    std::vector<double> y_end_, f_end_;
    double t_end_ = 0.0;
    std::vector<double> x0_;
    IntegratorConfig cfg_;
    std::shared_ptr<const PolynomialField> field_;
    std::shared_ptr<const std::vector<DrivenSignal>> driven_;
};

Solution integrate(const PolynomialField& field, const std::vector<DrivenSignal>& driven,
                   std::vector<double> x0, double t_end, const IntegratorConfig& cfg = {});
Solution integrate(const ReactionNetwork& net, std::vector<double> x0, double t_end,
                   const IntegratorConfig& cfg = {});

// Localizes every strict sign change of x_i(t) - b to cfg.event_time_tol by
// bisection on the dense output. Tangential touches classify as grazing and
// never as crossings; a species sitting identically on a boundary produces
// no events. Sorted by time, ties by species then boundary.
std::vector<EventRecord> detect_events(const Solution& sol,
                                       const std::vector<std::vector<double>>& boundaries);

struct Bounds {
    double beta = 0.0;   // sup over dense samples of concentrations
    double beta0 = 0.0;  // sup over dense samples of |x'|
};

Bounds estimate_bounds(const Solution& sol);

// Arc length of x_i over [t0, t1] by adaptive quadrature (rel. 1e-8).
double sojourn_time(const Solution& sol, std::size_t species, double t0, double t1);

void write_csv(const Solution& sol, const std::vector<std::string>& names, std::ostream& out,
               double stride);

}  // namespace crnmem
