#include "crnmem/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace crnmem {

void SparsePolynomial::add_term(const ExponentVec& exponents, std::int64_t coefficient) {
    if (exponents.size() != arity_) throw std::invalid_argument("exponent arity mismatch");
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.emplace(exponents, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) terms_.erase(it);
    }
}

void SparsePolynomial::add(const SparsePolynomial& other) {
    if (other.arity_ != arity_) throw std::invalid_argument("polynomial arity mismatch");
    for (const auto& [e, c] : other.terms_) add_term(e, c);
}

double SparsePolynomial::eval(std::span<const double> point) const {
    if (point.size() != arity_) throw std::invalid_argument("evaluation dimension mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = static_cast<double>(c);
        for (std::size_t j = 0; j < arity_; ++j) {
            switch (e[j]) {
                case 0: break;
                case 1: m *= point[j]; break;
                case 2: m *= point[j] * point[j]; break;
                default: {
                    double p = point[j];
                    for (std::uint32_t k = 0; k < e[j]; ++k) m *= p;
                }
            }
        }
        sum += m;
    }
    return sum;
}

SparsePolynomial SparsePolynomial::derivative(std::size_t variable) const {
    if (variable >= arity_) throw std::invalid_argument("derivative variable out of range");
    SparsePolynomial out(arity_);
    for (const auto& [e, c] : terms_) {
        if (e[variable] == 0) continue;
        ExponentVec d = e;
        d[variable] -= 1;
        out.add_term(d, c * static_cast<std::int64_t>(e[variable]));
    }
    return out;
}

std::string SparsePolynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::int64_t a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = false;
        std::ostringstream vars;
        for (std::size_t j = 0; j < arity_; ++j) {
            if (e[j] == 0) continue;
            if (has_vars) vars << "*";
            vars << (j < names.size() ? names[j] : "x" + std::to_string(j));
            if (e[j] > 1) vars << "^" << e[j];
            has_vars = true;
        }
        if (!has_vars) {
            out << a;
        } else {
            if (a != 1) out << a << "*";
            out << vars.str();
        }
    }
    return out.str();
}

void PolynomialField::eval(std::span<const double> state, std::span<double> out) const {
    if (state.size() != arity || out.size() != arity)
        throw std::invalid_argument("field evaluation dimension mismatch");
    for (std::size_t i = 0; i < arity; ++i) out[i] = components[i].eval(state);
}

std::vector<double> PolynomialField::eval(std::span<const double> state) const {
    std::vector<double> out(arity, 0.0);
    eval(state, out);
    return out;
}

bool PolynomialField::has_kinetic_property() const {
    for (std::size_t i = 0; i < components.size(); ++i)
        for (const auto& [e, c] : components[i].terms())
            if (c < 0 && e[i] == 0) return false;
    return true;
}

PolynomialField derive_field(const ReactionNetwork& net) {
    net.validate();
    std::size_t n = net.species_count();
    PolynomialField field;
    field.arity = n;
    field.components.assign(n, SparsePolynomial(n));

    for (const auto& r : net.reactions) {
        ExponentVec exps(n, 0);
        for (std::size_t j = 0; j < n; ++j) exps[j] = r.reactants[j];
        for (std::size_t i = 0; i < n; ++i) {
            if (net.is_driven(i)) continue;  // dynamics prescribed, not derived
            std::int64_t net_change = static_cast<std::int64_t>(r.products[i]) -
                                      static_cast<std::int64_t>(r.reactants[i]);
            if (net_change == 0) continue;
            field.components[i].add_term(exps, r.rate * net_change);
        }
    }
    return field;
}

JacobianMatrix derive_jacobian(const PolynomialField& field) {
    JacobianMatrix jac(field.arity);
    for (std::size_t i = 0; i < field.arity; ++i) {
        jac[i].reserve(field.arity);
        for (std::size_t j = 0; j < field.arity; ++j)
            jac[i].push_back(field.components[i].derivative(j));
    }
    return jac;
}

void eval_jacobian(const JacobianMatrix& jac, std::span<const double> state,
                   std::vector<std::vector<double>>& out) {
    out.assign(jac.size(), std::vector<double>(jac.size(), 0.0));
    for (std::size_t i = 0; i < jac.size(); ++i)
        for (std::size_t j = 0; j < jac.size(); ++j) out[i][j] = jac[i][j].eval(state);
}

}  // namespace crnmem
