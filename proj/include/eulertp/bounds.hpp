#pragma once

// Closed-form right-hand sides of the translated Poisson and modular
// descent bounds.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rational.hpp"

namespace eulertp {

/// Inputs to the exchangeable-pair bound: linearity constant, target
/// variance and Var S, kept exact until the final square root.
struct BoundInputs {
    Rational lambda_stein;
    Rational sigma2;
    Rational var_s;

    void validate() const {
        if (!(lambda_stein > 0 && lambda_stein < 1)) throw std::invalid_argument("BoundInputs: lambda must lie in (0,1)");
        if (!(sigma2 > 0)) throw std::invalid_argument("BoundInputs: sigma2 must be > 0");
        if (var_s < 0) throw std::invalid_argument("BoundInputs: var_s must be >= 0");
    }
};

/// sqrt(Var S) / (lambda sigma^2) + 2 / sigma^2.
inline double generic_tp_bound(const BoundInputs& in) {
    in.validate();
    const double lambda_sigma2 = to_double(in.lambda_stein * in.sigma2);
    return std::sqrt(to_double(in.var_s)) / lambda_sigma2 + to_double(Rational(2) / in.sigma2);
}

/// 23(n+1) / (180 n^2).
inline Rational var_s_formula(int n) {
    if (n < 6) throw std::invalid_argument("var_s_formula: n must be >= 6");
    return Rational(BigInt(23) * (n + 1), BigInt(180) * n * n);
}

/// The pair inputs for the descent statistic: lambda = 2/n, sigma^2 = (n+1)/12.
inline BoundInputs descent_bound_inputs(int n) {
    if (n < 6) throw std::invalid_argument("descent_bound_inputs: n must be >= 6");
    return BoundInputs{Rational(2, n), Rational(n + 1, 12), var_s_formula(n)};
}

/// sqrt(23/5) / sqrt(n+1) + 24 / (n+1).
inline double descent_tp_bound(int n) {
    if (n < 6) throw std::invalid_argument("descent_tp_bound: n must be >= 6");
    const double m = n + 1.0;
    return std::sqrt(23.0 / 5.0) / std::sqrt(m) + 24.0 / m;
}

/// ((b-1)/b) exp(-((n+1)/12) (1 - cos(2 pi / b))).
inline double modular_poisson_term(int n, int b) {
    if (b < 2) throw std::invalid_argument("modular_poisson_term: b must be >= 2");
    return static_cast<double>(b - 1) / b * std::exp(-(n + 1.0) / 12.0 * (1.0 - std::cos(2.0 * std::numbers::pi / b)));
}

inline double main_bound(int n, int b) {
    if (n < 6) throw std::invalid_argument("main_bound: n must be >= 6");
    if (b < 2) throw std::invalid_argument("main_bound: b must be >= 2");
    return descent_tp_bound(n) + modular_poisson_term(n, b);
}

}  // namespace eulertp
