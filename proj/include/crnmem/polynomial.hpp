#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crnmem/network.hpp"

namespace crnmem {

// Exponent vector, dense over the network's species (small by design).
using ExponentVec = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with exact integer coefficients, kept in a
// canonical ordered form (zero coefficients are never stored).
class SparsePolynomial {
public:
    SparsePolynomial() = default;
    explicit SparsePolynomial(std::size_t arity) : arity_(arity) {}

    std::size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<ExponentVec, std::int64_t>& terms() const { return terms_; }

    void add_term(const ExponentVec& exponents, std::int64_t coefficient);
    void add(const SparsePolynomial& other);

    double eval(std::span<const double> point) const;
    SparsePolynomial derivative(std::size_t variable) const;

    std::string str(const std::vector<std::string>& names) const;

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    std::size_t arity_ = 0;
    std::map<ExponentVec, std::int64_t> terms_;
};

// The mass-action vector field f_N: one polynomial per species, all with
// exact integer coefficients. Driven species carry the zero polynomial.
struct PolynomialField {
    std::size_t arity = 0;
    std::vector<SparsePolynomial> components;

    void eval(std::span<const double> state, std::span<double> out) const;
    std::vector<double> eval(std::span<const double> state) const;

    // Every negative-coefficient monomial of f_i must contain x_i. Mass
    // action cannot drain an absent species; holds for any derived field.
    bool has_kinetic_property() const;
};

using JacobianMatrix = std::vector<std::vector<SparsePolynomial>>;

PolynomialField derive_field(const ReactionNetwork& net);
JacobianMatrix derive_jacobian(const PolynomialField& field);

void eval_jacobian(const JacobianMatrix& jac, std::span<const double> state,
                   std::vector<std::vector<double>>& out);

}  // namespace crnmem
