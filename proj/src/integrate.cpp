#include "crnmem/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <set>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// b(5th) - b_hat(4th)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous-extension weights
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kBlowUpNorm = 1e12;
constexpr double kMinStep = 1e-14;

}  // namespace

bool Solution::is_driven(std::size_t species) const {
    for (const auto& d : *driven_)
        if (d.species == species) return true;
    return false;
}

std::size_t Solution::locate(double t) const {
    std::size_t lo = 0, hi = steps_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (steps_[mid].t0 <= t)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double Solution::interp(const Step& s, double theta, std::size_t i) const {
    double t1 = 1.0 - theta;
    return s.r1[i] + theta * (s.r2[i] + t1 * (s.r3[i] + theta * (s.r4[i] + t1 * s.r5[i])));
}

double Solution::eval_species(double t, std::size_t species) const {
    t = std::clamp(t, 0.0, t_end_);
    for (const auto& d : *driven_)
        if (d.species == species) return d.value_at(t);
    if (t >= t_end_ || steps_.empty()) return y_end_[species];
    const Step& s = steps_[locate(t)];
    double v = interp(s, (t - s.t0) / s.h, species);
    return v < 0.0 ? 0.0 : v;
}

std::vector<double> Solution::eval(double t) const {
    t = std::clamp(t, 0.0, t_end_);
    std::vector<double> out(dimension());
    if (t >= t_end_ || steps_.empty()) {
        out = y_end_;
    } else {
        const Step& s = steps_[locate(t)];
        double theta = (t - s.t0) / s.h;
        for (std::size_t i = 0; i < out.size(); ++i) {
            double v = interp(s, theta, i);
            out[i] = v < 0.0 ? 0.0 : v;
        }
    }
    for (const auto& d : *driven_) out[d.species] = d.value_at(t);
    return out;
}

std::vector<double> Solution::derivative(double t) const {
    std::vector<double> state = eval(t);
    std::vector<double> out = field_->eval(state);
    for (const auto& d : *driven_) out[d.species] = d.slope_at(t);
    return out;
}

double Solution::derivative_species(double t, std::size_t species) const {
    for (const auto& d : *driven_)
        if (d.species == species) return d.slope_at(t);
    std::vector<double> state = eval(t);
    return field_->components[species].eval(state);
}

Solution integrate(const PolynomialField& field, const std::vector<DrivenSignal>& driven,
                   std::vector<double> x0, double t_end, const IntegratorConfig& cfg) {
    const std::size_t n = field.arity;
    if (x0.size() != n) throw PreconditionError("initial state dimension mismatch");
    if (!(t_end > 0)) throw PreconditionError("t_end must be positive");
    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0) || !(cfg.max_step > 0) ||
        !(cfg.event_time_tol > 0) || !(cfg.negativity_clamp > 0))
        throw PreconditionError("integrator configuration values must be positive");
    for (double v : x0)
        if (v < 0) throw PreconditionError("initial concentrations must be nonnegative");

    std::vector<const DrivenSignal*> dix(n, nullptr);
    for (const auto& d : driven) {
        if (d.species >= n) throw PreconditionError("driven species out of range");
        dix[d.species] = &d;
        x0[d.species] = d.value_at(0.0);
    }

    Solution sol;
    sol.t_end_ = t_end;
    sol.x0_ = x0;
    sol.cfg_ = cfg;
    sol.field_ = std::make_shared<const PolynomialField>(field);
    sol.driven_ = std::make_shared<const std::vector<DrivenSignal>>(driven);

    if (n == 0) return sol;

    // step boundaries must land on waveform kinks
    std::set<double> breaks;
    for (const auto& d : driven)
        for (const auto& p : d.points)
            if (p.time > 0.0 && p.time < t_end) breaks.insert(p.time);

    auto eval_f = [&](double t, std::vector<double>& y, std::vector<double>& f) {
        for (std::size_t i = 0; i < n; ++i)
            if (dix[i]) y[i] = dix[i]->value_at(t);
        field.eval(y, f);
        for (std::size_t i = 0; i < n; ++i)
            if (dix[i]) f[i] = dix[i]->slope_at(t);
    };

    std::vector<double> y = x0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n),
                        y1(n), errv(n);
    double t = 0.0;
    eval_f(0.0, y, k1);

    double f0max = 0.0;
    for (double v : k1) f0max = std::max(f0max, std::abs(v));
    double h = std::min({cfg.max_step, t_end / 10.0, 0.01 / (1.0 + f0max)});
    h = std::max(h, 1e-10);

    // PI controller state (standard embedded-pair constants)
    constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
    constexpr double facc1 = 5.0, facc2 = 0.1;
    double facold = 1e-4;
    bool rejected = false;

    while (t < t_end) {
        auto bit = breaks.upper_bound(t);
        double limit = bit == breaks.end() ? t_end : std::min(*bit, t_end);
        bool clipped = h >= limit - t;
        double hs = clipped ? limit - t : h;
        if (!clipped && hs < kMinStep)
            throw SimulationError(SimulationError::Kind::step_underflow,
                                  "step size underflow during integration", t);

        auto stage = [&](std::vector<double>& k, double c, auto... aw) {
            const double* ks[] = {k1.data(), k2.data(), k3.data(), k4.data(), k5.data(),
                                  k6.data()};
            const double w[] = {aw...};
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < sizeof...(aw); ++j) acc += w[j] * ks[j][i];
                ytmp[i] = y[i] + hs * acc;
            }
            eval_f(t + c * hs, ytmp, k);
        };
        stage(k2, c2, a21);
        stage(k3, c3, a31, a32);
        stage(k4, c4, a41, a42, a43);
        stage(k5, c5, a51, a52, a53, a54);
        stage(k6, 1.0, a61, a62, a63, a64, a65);
        for (std::size_t i = 0; i < n; ++i)
            y1[i] = y[i] +
                    hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        double t1v = t + hs;
        eval_f(t1v, y1, k7);  // pins driven components of y1 to their waveforms
        for (std::size_t i = 0; i < n; ++i)
            errv[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);

        double err = 0.0;
        bool negative = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!dix[i] && y1[i] < -cfg.negativity_clamp) negative = true;
            double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            double q = errv[i] / sk;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (!std::isfinite(err) || negative) {
            h = hs / 2.0;
            rejected = true;
            continue;
        }

        double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            double norm = 0.0;
            bool reclamp = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!dix[i] && y1[i] < 0.0) {
                    y1[i] = 0.0;
                    reclamp = true;
                }
                norm = std::max(norm, std::abs(y1[i]));
            }
            if (norm > kBlowUpNorm)
                throw SimulationError(SimulationError::Kind::unbounded_trajectory,
                                      "state norm exceeded 1e12; trajectory appears unbounded",
                                      t1v);
            if (reclamp) eval_f(t1v, y1, k7);

            Solution::Step rec;
            rec.t0 = t;
            rec.h = hs;
            rec.y0 = y;
            rec.f0 = k1;
            rec.r1 = y;
            rec.r2.resize(n);
            rec.r3.resize(n);
            rec.r4.resize(n);
            rec.r5.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                double ydiff = y1[i] - y[i];
                double bspl = hs * k1[i] - ydiff;
                rec.r2[i] = ydiff;
                rec.r3[i] = bspl;
                rec.r4[i] = ydiff - hs * k7[i] - bspl;
                rec.r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                  d6 * k6[i] + d7 * k7[i]);
            }
            sol.steps_.push_back(std::move(rec));

            y = y1;
            k1 = k7;
            if (clipped) {
                t = limit;
                eval_f(t, y, k1);  // pick up the right-slope across the kink
            } else {
                t = t1v;
            }
            facold = std::max(err, 1e-4);
            double fac = std::clamp(fac11 / std::pow(facold, beta) / safe, facc2, facc1);
            double hnew = hs / fac;
            if (rejected) hnew = std::min(hnew, hs);
            rejected = false;
            h = std::min(hnew, cfg.max_step);
        } else {
            h = hs / std::min(facc1, fac11 / safe);
            rejected = true;
        }
    }

    sol.y_end_ = y;
    sol.f_end_ = k1;
    return sol;
}

Solution integrate(const ReactionNetwork& net, std::vector<double> x0, double t_end,
                   const IntegratorConfig& cfg) {
    return integrate(derive_field(net), net.driven, std::move(x0), t_end, cfg);
}

namespace {

int sign_of(double g) { return g > 0.0 ? 1 : (g < 0.0 ? -1 : 0); }

struct EventScan {
    const Solution& sol;
    std::size_t species;
    double boundary;
    double tol;
    std::vector<EventRecord>& out;

    double g(double t) const { return sol.eval_species(t, species) - boundary; }
    double gprime(double t) const { return sol.derivative_species(t, species); }

    void emit(double t, EventDirection dir) const { out.push_back({species, boundary, t, dir}); }

    // bracket with strict opposite signs at the ends
    void bisect(double ta, int sa, double tb) const {
        while (tb - ta > tol) {
            double tm = 0.5 * (ta + tb);
            if (tm <= ta || tm >= tb) break;
            int sm = sign_of(g(tm));
            if (sm == 0) {
                ta = tm;
                break;
            }
            if (sm == sa)
                ta = tm;
            else
                tb = tm;
        }
        emit(0.5 * (ta + tb), sa < 0 ? EventDirection::upward : EventDirection::downward);
    }

    // same strict sign at both ends: hunt for an interior extremum reaching
    // the boundary (a tangential touch or a pair of fast crossings)
    void refine(double ta, double tb, int s, int depth) const {
        if (depth <= 0 || tb - ta <= tol) return;
        double da = gprime(ta), db = gprime(tb);
        if (sign_of(da) == sign_of(db) || sign_of(da) == 0) return;
        double lo = ta, hi = tb;
        for (int it = 0; it < 80 && hi - lo > tol; ++it) {
            double tm = 0.5 * (lo + hi);
            if (sign_of(gprime(tm)) == sign_of(da))
                lo = tm;
            else
                hi = tm;
        }
        double text = 0.5 * (lo + hi);
        double ge = g(text);
        int se = sign_of(ge);
        if (se == 0) {
            emit(text, EventDirection::grazing);
        } else if (se != s) {
            bisect(ta, s, text);
            bisect(text, se, tb);
        } else {
            refine(ta, text, s, depth - 1);
            refine(text, tb, s, depth - 1);
        }
    }
};

}  // namespace

std::vector<EventRecord> detect_events(const Solution& sol,
                                       const std::vector<std::vector<double>>& boundaries) {
    if (boundaries.size() != sol.dimension())
        throw PreconditionError("boundaries list dimension mismatch");
    std::vector<EventRecord> events;
    constexpr int kSamplesPerStep = 32;

    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        for (double b : boundaries[i]) {
            if (!std::isfinite(b)) throw PreconditionError("boundaries must be finite");
            EventScan scan{sol, i, b, sol.config().event_time_tol, events};

            double g0 = scan.g(0.0);
            int s0 = sign_of(g0);
            double t_prev = 0.0;
            double t_strict = 0.0, g_strict = g0;
            int s_strict = s0;
            bool have_strict = s0 != 0;

            auto feed = [&](double tc) {
                if (tc <= t_prev) return;
                double gc = scan.g(tc);
                int sc = sign_of(gc);
                if (sc != 0) {
                    if (have_strict) {
                        if (sc != s_strict) {
                            scan.bisect(t_strict, s_strict, tc);
                        } else if (t_strict == t_prev) {
                            // interior touch is only plausible when an
                            // endpoint sits within a few segment-variations
                            // of the boundary
                            double var = std::abs(gc - g_strict);
                            if (std::min(std::abs(gc), std::abs(g_strict)) <=
                                4.0 * var + 1e-12)
                                scan.refine(t_strict, tc, sc, 4);
                        }
                    }
                    t_strict = tc;
                    s_strict = sc;
                    g_strict = gc;
                    have_strict = true;
                } else if (have_strict && t_prev == t_strict) {
                    scan.emit(tc, EventDirection::grazing);
                }
                t_prev = tc;
            };

            for (std::size_t k = 0; k < sol.step_count(); ++k) {
                double ts = sol.step_start(k);
                double h = sol.step_width(k);
                for (int j = 1; j <= kSamplesPerStep; ++j)
                    feed(ts + h * static_cast<double>(j) / kSamplesPerStep);
            }
            feed(sol.t_end());
        }
    }

    std::sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.species != b.species) return a.species < b.species;
        return a.boundary < b.boundary;
    });
    // a grazing mark abutting a resolved crossing of the same boundary is the
    // crossing's own touch point
    std::vector<EventRecord> cleaned;
    for (const auto& e : events) {
        if (!cleaned.empty()) {
            const auto& p = cleaned.back();
            if (p.species == e.species && p.boundary == e.boundary &&
                std::abs(p.time - e.time) <= 4.0 * sol.config().event_time_tol &&
                (p.direction == EventDirection::grazing ||
                 e.direction == EventDirection::grazing)) {
                if (p.direction == EventDirection::grazing &&
                    e.direction != EventDirection::grazing)
                    cleaned.back() = e;
                continue;
            }
        }
        cleaned.push_back(e);
    }
    return cleaned;
}

Bounds estimate_bounds(const Solution& sol) {
    constexpr int kSamples = 64;
    Bounds b;
    std::vector<double> state, deriv;
    auto probe = [&](double t) {
        state = sol.eval(t);
        deriv = sol.derivative(t);
        for (std::size_t i = 0; i < state.size(); ++i) {
            b.beta = std::max(b.beta, state[i]);
            b.beta0 = std::max(b.beta0, std::abs(deriv[i]));
        }
    };
    for (std::size_t k = 0; k < sol.step_count(); ++k) {
        double t0 = sol.step_start(k), h = sol.step_width(k);
        for (int j = 0; j < kSamples; ++j) probe(t0 + h * static_cast<double>(j) / kSamples);
    }
    probe(sol.t_end());
    b.beta *= 1.0 + 1e-6;
    b.beta0 *= 1.0 + 1e-6;
    return b;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double sojourn_time(const Solution& sol, std::size_t species, double t0, double t1) {
    if (!(0.0 <= t0 && t0 <= t1 && t1 <= sol.t_end() + 1e-12))
        throw PreconditionError("sojourn interval out of range");
    t1 = std::min(t1, sol.t_end());
    if (t1 <= t0) return 0.0;

    std::function<double(double)> integrand = [&](double t) {
        double d = sol.derivative_species(t, species);
        return std::sqrt(1.0 + d * d);
    };

    // rough pass fixes the absolute tolerance for the adaptive refinement
    double rough = 0.0;
    constexpr int kRough = 64;
    double prev = integrand(t0);
    for (int j = 1; j <= kRough; ++j) {
        double t = t0 + (t1 - t0) * static_cast<double>(j) / kRough;
        double cur = integrand(t);
        rough += 0.5 * (prev + cur) * (t1 - t0) / kRough;
        prev = cur;
    }
    double tol_total = 1e-8 * std::max(rough, 1e-6);

    // split at accepted-step boundaries: the interpolant switches there
    std::vector<double> cuts{t0};
    for (std::size_t k = 0; k < sol.step_count(); ++k) {
        double ts = sol.step_start(k);
        if (ts > t0 && ts < t1) cuts.push_back(ts);
    }
    cuts.push_back(t1);

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double seg_tol = tol_total * (cuts[k + 1] - cuts[k]) / (t1 - t0);
        total += quadrature(integrand, cuts[k], cuts[k + 1], std::max(seg_tol, 1e-16));
    }
    return total;
}

void write_csv(const Solution& sol, const std::vector<std::string>& names, std::ostream& out,
               double stride) {
    if (stride <= 0) throw PreconditionError("stride must be positive");
    out << "t";
    for (std::size_t i = 0; i < sol.dimension(); ++i)
        out << "," << (i < names.size() ? names[i] : "x" + std::to_string(i));
    out << "\n";
    char buf[64];
    auto row = [&](double t) {
        std::snprintf(buf, sizeof buf, "%.17g", t);
        out << buf;
        auto state = sol.eval(t);
        for (double v : state) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << "," << buf;
        }
        out << "\n";
    };
    double t = 0.0;
    for (; t <= sol.t_end() + 1e-15; t += stride) row(std::min(t, sol.t_end()));
    if (t - stride < sol.t_end()) row(sol.t_end());
}

}  // namespace crnmem
