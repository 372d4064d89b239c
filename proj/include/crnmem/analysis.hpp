#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crnmem/integrate.hpp"
#include "crnmem/polynomial.hpp"

namespace crnmem {

enum class Stability { exp_stable, unstable, inconclusive };
enum class Isolation { isolated_certified, not_certified };

struct FixedPointReport {
    std::vector<double> point;
    double residual = 0.0;            // ||f(z)||_inf
    double spectral_abscissa = 0.0;   // max real part of the Jacobian spectrum
    Stability classification = Stability::inconclusive;
    Isolation isolation = Isolation::not_certified;
};

struct FixedPointOptions {
    std::size_t seeds = 100;
    double residual_tol = 1e-10;
    double dedup_distance = 1e-7;
    double stability_margin = 1e-6;
    bool certify = true;
    double certify_delta = 0.1;
    std::size_t certify_probes = 100;
};

// Newton iteration with the analytic Jacobian from a low-discrepancy seed
// grid over the region; converged points are deduplicated and classified by
// the Jacobian spectrum. Divergent seeds are dropped silently.
std::vector<FixedPointReport> find_fixed_points(
    const PolynomialField& field, const std::vector<std::pair<double, double>>& region,
    const FixedPointOptions& opts = {});

// Newton from `probes` seeds in the delta-ball around the point: certified
// iff every converged probe lands back on the point and nothing else in the
// ball is fixed.
Isolation certify_isolation(const PolynomialField& field, const std::vector<double>& point,
                            double delta, std::size_t probes);

struct RealTimeVerdict {
    std::size_t species = 0;
    double alpha = 0.0;
    bool pass = false;
    std::optional<double> first_violation;
    std::vector<std::array<double, 3>> margin_curve;  // (t, |x(t)-|alpha||, 2^-t)
    std::string warning;
};

// |x(t) - |alpha|| < 2^-t on a grid over [1, t_max]; the solution must start
// from the all-zero state.
RealTimeVerdict check_realtime(const Solution& sol, std::size_t species, double alpha,
                               double t_max, double grid_step);

struct EpsdResult {
    bool pass = false;
    double witness_t0 = 0.0;
};

// Earliest window (t0, t0+d) over which |x - alpha| < eps throughout.
EpsdResult check_epsd(const Solution& sol, std::size_t species, double alpha, double eps,
                      double d);

double universal_d(double eps, double beta0);

struct AlphaAssignment {
    std::size_t species = 0;
    double alpha = 0.0;
    double eps = 0.0;
    double d = 0.0;
};

struct UnambiguousVerdict {
    bool pass = false;
    std::string reason;
};

UnambiguousVerdict check_unambiguous(const Solution& sol,
                                     const std::vector<AlphaAssignment>& assignments);

// Reversed-binary fraction 0.b0 b1 b2..., bi = bit i of n.
double dense_encode(std::uint64_t n);

// Univariate integer polynomial, coeffs[k] multiplies x^k.
struct IntPolynomial {
    std::vector<std::int64_t> coeffs;

    double eval(double x) const;
    double derivative_eval(double x) const;
    std::string str() const;  // e.g. "x^2 - 2"
};

// Exhaustive scan over integer polynomials (positive leading coefficient,
// content 1) for the lowest-degree near-annihilator of the value.
std::optional<IntPolynomial> minpoly_probe(double value, int max_degree, std::int64_t max_coeff);

// Low-discrepancy sequence shared by the seeding code paths.
double halton(std::uint64_t index, std::uint32_t base);

}  // namespace crnmem
