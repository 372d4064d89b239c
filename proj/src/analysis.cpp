#include "crnmem/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "crnmem/errors.hpp"

namespace crnmem {

namespace {

constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                     37, 41, 43, 47, 53, 59, 61, 67, 71};

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double euclid_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Newton with the analytic Jacobian; returns the converged point or nullopt.
// After reaching the residual tolerance the iteration is polished while the
// correction keeps shrinking: roots of higher multiplicity stall plain
// Newton at sqrt(residual_tol) away from the root, far outside the 1e-9
// radius the isolation certificate works with.
std::optional<std::vector<double>> newton(const PolynomialField& field,
                                          const JacobianMatrix& jac, std::vector<double> x,
                                          double residual_tol) {
    const auto n = static_cast<Eigen::Index>(field.arity);
    Eigen::VectorXd fx(n);
    Eigen::MatrixXd J(n, n);
    std::vector<double> f(field.arity);

    auto newton_step = [&](double& step_norm) -> bool {
        field.eval(x, f);
        for (Eigen::Index i = 0; i < n; ++i) {
            fx(i) = f[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j)
                J(i, j) = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(x);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) return false;
        Eigen::VectorXd dx = lu.solve(fx);
        step_norm = dx.lpNorm<Eigen::Infinity>();
        if (!std::isfinite(step_norm) || step_norm > 1e8) return false;
        for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] -= dx(i);
        return true;
    };

    for (int iter = 0; iter < 200; ++iter) {
        field.eval(x, f);
        double res = 0.0;
        for (double v : f) res = std::max(res, std::abs(v));
        if (res < residual_tol) {
            double prev = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 80; ++k) {
                std::vector<double> keep = x;
                double step = 0.0;
                if (!newton_step(step) || step == 0.0 || step >= prev) {
                    x = keep;
                    break;
                }
                prev = step;
            }
            return x;
        }
        double step = 0.0;
        if (!newton_step(step)) return std::nullopt;
        if (step < 1e-16) {
            field.eval(x, f);
            double r2 = 0.0;
            for (double v : f) r2 = std::max(r2, std::abs(v));
            if (r2 < residual_tol) return x;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

double spectral_abscissa(const PolynomialField& field, const JacobianMatrix& jac,
                         const std::vector<double>& z) {
    const auto n = static_cast<Eigen::Index>(field.arity);
    Eigen::MatrixXd J(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            J(i, j) = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(z);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, /*computeEigenvectors=*/false);
    double a = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) a = std::max(a, es.eigenvalues()(k).real());
    return a;
}

}  // namespace

double halton(std::uint64_t index, std::uint32_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

std::vector<FixedPointReport> find_fixed_points(
    const PolynomialField& field, const std::vector<std::pair<double, double>>& region,
    const FixedPointOptions& opts) {
    const std::size_t n = field.arity;
    if (region.size() != n) throw PreconditionError("region box dimension mismatch");
    for (auto [lo, hi] : region)
        if (lo < 0 || hi < lo)
            throw PreconditionError("region must lie in the nonnegative orthant");

    auto jac = derive_jacobian(field);
    std::vector<std::vector<double>> found;

    std::vector<double> f(n);
    for (std::size_t s = 1; s <= opts.seeds; ++s) {
        std::vector<double> seed(n);
        for (std::size_t j = 0; j < n; ++j) {
            double u = halton(s, kPrimes[j % std::size(kPrimes)]);
            seed[j] = region[j].first + u * (region[j].second - region[j].first);
        }
        // a seed that is already fixed stands on its own (degenerate fields
        // have singular Jacobians everywhere)
        field.eval(seed, f);
        double res = 0.0;
        for (double v : f) res = std::max(res, std::abs(v));
        std::optional<std::vector<double>> z;
        if (res < opts.residual_tol)
            z = seed;
        else
            z = newton(field, jac, seed, opts.residual_tol);
        if (!z) continue;

        bool inside = true;
        for (std::size_t j = 0; j < n; ++j) {
            if ((*z)[j] < 0 && (*z)[j] > -1e-12) (*z)[j] = 0.0;
            if ((*z)[j] < region[j].first - 1e-9 || (*z)[j] > region[j].second + 1e-9)
                inside = false;
        }
        if (!inside) continue;

        bool dup = false;
        for (const auto& p : found)
            if (euclid_distance(p, *z) < opts.dedup_distance) dup = true;
        if (!dup) found.push_back(*z);
    }

    std::sort(found.begin(), found.end());

    std::vector<FixedPointReport> reports;
    for (auto& z : found) {
        FixedPointReport r;
        r.point = z;
        field.eval(z, f);
        for (double v : f) r.residual = std::max(r.residual, std::abs(v));
        r.spectral_abscissa = spectral_abscissa(field, jac, z);
        if (r.spectral_abscissa < -opts.stability_margin)
            r.classification = Stability::exp_stable;
        else if (r.spectral_abscissa > opts.stability_margin)
            r.classification = Stability::unstable;
        else
            r.classification = Stability::inconclusive;
        if (opts.certify)
            r.isolation = certify_isolation(field, z, opts.certify_delta, opts.certify_probes);
        reports.push_back(std::move(r));
    }
    return reports;
}

Isolation certify_isolation(const PolynomialField& field, const std::vector<double>& point,
                            double delta, std::size_t probes) {
    const std::size_t n = field.arity;
    if (point.size() != n) throw PreconditionError("point dimension mismatch");
    auto jac = derive_jacobian(field);

    std::vector<double> f(n);
    std::size_t accepted = 0;
    std::uint64_t index = 0;
    while (accepted < probes) {
        ++index;
        if (index > probes * 1000) break;  // degenerate ball geometry
        std::vector<double> seed(n);
        double dist2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double u = 2.0 * halton(index, kPrimes[j % std::size(kPrimes)]) - 1.0;
            seed[j] = point[j] + delta * u;
            dist2 += delta * u * delta * u;
        }
        if (dist2 > delta * delta) continue;
        ++accepted;
        for (double& v : seed) v = std::max(v, 0.0);

        field.eval(seed, f);
        double res = 0.0;
        for (double v : f) res = std::max(res, std::abs(v));
        std::optional<std::vector<double>> z;
        if (res < 1e-10)
            z = seed;
        else
            z = newton(field, jac, seed, 1e-12);
        if (!z) continue;

        if (euclid_distance(*z, point) <= 1e-9) continue;  // came home
        return Isolation::not_certified;  // another fixed point reachable from the ball
    }
    return Isolation::isolated_certified;
}

RealTimeVerdict check_realtime(const Solution& sol, std::size_t species, double alpha,
                               double t_max, double grid_step) {
    if (species >= sol.dimension()) throw PreconditionError("species index out of range");
    if (!(grid_step > 0)) throw PreconditionError("grid step must be positive");
    if (t_max > 25.0)
        throw PreconditionError("t_max capped at 25: 2^-t would fall below credible ODE error");
    for (double v : sol.initial_state())
        if (v != 0.0)
            throw PreconditionError("real-time convergence is defined from the all-zero state");
    if (t_max > sol.t_end() + 1e-12) throw PreconditionError("solution horizon shorter than t_max");

    RealTimeVerdict verdict;
    verdict.species = species;
    verdict.alpha = alpha;
    verdict.pass = true;
    if (sol.config().rel_tol > 1e-12)
        verdict.warning = "rel_tol above 1e-12; the check may probe integrator error";
    double budget_floor = 100.0 * (sol.config().abs_tol + sol.config().rel_tol);
    if (std::exp2(-t_max) < budget_floor) {
        if (!verdict.warning.empty()) verdict.warning += "; ";
        verdict.warning += "2^-t_max is below 100x the integrator tolerance";
    }

    double target = std::abs(alpha);
    for (double t = 1.0; t <= t_max + 1e-12; t += grid_step) {
        double tt = std::min(t, t_max);
        double gap = std::abs(sol.eval_species(tt, species) - target);
        double budget = std::exp2(-tt);
        verdict.margin_curve.push_back({tt, gap, budget});
        if (gap >= budget && verdict.pass) {
            verdict.pass = false;
            verdict.first_violation = tt;
        }
    }
    return verdict;
}

EpsdResult check_epsd(const Solution& sol, std::size_t species, double alpha, double eps,
                      double d) {
    if (!(eps > 0) || !(d > 0)) throw PreconditionError("eps and d must be positive");
    if (d > sol.t_end())
        throw PreconditionError("horizon too short to contain any window of length d");

    double step = d / 1000.0;
    std::size_t need = 1001;  // samples per window at this grid
    std::size_t run = 0;
    double run_start = 0.0;
    for (double t = 0.0;; t += step) {
        bool inside = t <= sol.t_end() + 1e-12 &&
                      std::abs(sol.eval_species(std::min(t, sol.t_end()), species) - alpha) < eps;
        if (inside) {
            if (run == 0) run_start = t;
            ++run;
            if (run >= need) return {true, run_start};
        } else {
            run = 0;
        }
        if (t > sol.t_end()) break;
    }
    return {false, 0.0};
}

double universal_d(double eps, double beta0) {
    if (!(eps > 0) || !(beta0 > 0)) throw PreconditionError("eps and beta0 must be positive");
    return eps / (2.0 * beta0);
}

UnambiguousVerdict check_unambiguous(const Solution& sol,
                                     const std::vector<AlphaAssignment>& assignments) {
    for (std::size_t a = 0; a < assignments.size(); ++a)
        for (std::size_t b = a + 1; b < assignments.size(); ++b) {
            if (assignments[a].species != assignments[b].species) continue;
            double lo_a = assignments[a].alpha - assignments[a].eps;
            double hi_a = assignments[a].alpha + assignments[a].eps;
            double lo_b = assignments[b].alpha - assignments[b].eps;
            double hi_b = assignments[b].alpha + assignments[b].eps;
            if (lo_a < hi_b && lo_b < hi_a) {
                std::ostringstream msg;
                msg << "tubes around " << assignments[a].alpha << " and " << assignments[b].alpha
                    << " overlap";
                return {false, msg.str()};
            }
        }
    for (const auto& a : assignments) {
        auto r = check_epsd(sol, a.species, a.alpha, a.eps, a.d);
        if (!r.pass) {
            std::ostringstream msg;
            msg << "alpha = " << a.alpha << " is not (eps,d)-computed";
            return {false, msg.str()};
        }
    }
    return {true, ""};
}

double dense_encode(std::uint64_t n) {
    double r = 0.0;
    double w = 0.5;
    while (n > 0) {
        if (n & 1) r += w;
        w *= 0.5;
        n >>= 1;
    }
    return r;
}

double IntPolynomial::eval(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + static_cast<double>(coeffs[k]);
    return v;
}

double IntPolynomial::derivative_eval(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
        v = v * x + static_cast<double>(coeffs[k]) * static_cast<double>(k);
    return v;
}

std::string IntPolynomial::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        std::int64_t a = coeffs[k];
        if (a == 0) continue;
        if (first) {
            if (a < 0) out << "-";
        } else {
            out << (a < 0 ? " - " : " + ");
        }
        first = false;
        std::int64_t mag = a < 0 ? -a : a;
        if (mag != 1 || k == 0) out << mag;
        if (k >= 1) {
            if (mag != 1) out << "*";
            out << "x";
            if (k >= 2) out << "^" << k;
        }
    }
    if (first) out << "0";
    return out.str();
}

std::optional<IntPolynomial> minpoly_probe(double value, int max_degree,
                                           std::int64_t max_coeff) {
    if (max_degree < 1 || max_degree > 4)
        throw PreconditionError("max_degree must be between 1 and 4");
    if (max_coeff < 1 || max_coeff > 20)
        throw PreconditionError("max_coeff must be between 1 and 20");

    std::vector<double> powers(static_cast<std::size_t>(max_degree) + 1, 1.0);
    for (int k = 1; k <= max_degree; ++k)
        powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * value;

    for (int deg = 1; deg <= max_degree; ++deg) {
        std::optional<IntPolynomial> best;
        double best_abs = 1e-6;
        std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1, -max_coeff);
        c[static_cast<std::size_t>(deg)] = 1;  // positive leading coefficient
        while (true) {
            double p = 0.0;
            for (int k = deg; k >= 0; --k)
                p += static_cast<double>(c[static_cast<std::size_t>(k)]) *
                     powers[static_cast<std::size_t>(k)];
            if (std::abs(p) < best_abs) {
                std::int64_t content = 0;
                for (auto a : c) content = std::gcd(content, a < 0 ? -a : a);
                if (content == 1) {
                    IntPolynomial cand{c};
                    if (std::abs(cand.derivative_eval(value)) > 1e-3) {
                        best = cand;
                        best_abs = std::abs(p);
                    }
                }
            }
            // odometer over coefficient vectors
            int k = 0;
            for (; k < deg; ++k) {
                if (c[static_cast<std::size_t>(k)] < max_coeff) {
                    ++c[static_cast<std::size_t>(k)];
                    break;
                }
                c[static_cast<std::size_t>(k)] = -max_coeff;
            }
            if (k == deg) {
                if (c[static_cast<std::size_t>(deg)] < max_coeff) {
                    ++c[static_cast<std::size_t>(deg)];
                    for (int j = 0; j < deg; ++j) c[static_cast<std::size_t>(j)] = -max_coeff;
                } else {
                    break;
                }
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

}  // namespace crnmem
