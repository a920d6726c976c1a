#pragma once

// Poisson and translated Poisson laws, and their residues modulo b.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rational.hpp"

namespace eulertp {

/// Finite window of a distribution on the integers. weights[i] is the mass
/// at support_offset + i; tail_mass_bound certifies the mass outside.
struct RealDistributionOnIntegers {
    long support_offset = 0;
    std::vector<double> weights;
    double tail_mass_bound = 0.0;

    long support_begin() const noexcept { return support_offset; }
    long support_end() const noexcept { return support_offset + static_cast<long>(weights.size()); }

    double mass_at(long x) const noexcept {
        if (x < support_begin() || x >= support_end()) return 0.0;
        return weights[static_cast<std::size_t>(x - support_offset)];
    }

    double window_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            m += weights[i] * static_cast<double>(support_offset + static_cast<long>(i));
        return m;
    }

    double variance() const {
        const double m = mean();
        double v = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double d = static_cast<double>(support_offset + static_cast<long>(i)) - m;
            v += weights[i] * d * d;
        }
        return v;
    }

    bool is_normalized(double tol = 1e-12) const {
        if (tail_mass_bound < 0.0) return false;
        if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); })) return false;
        const double total = window_mass() + tail_mass_bound;
        return total >= 1.0 - tol && total <= 1.0 + tol;
    }
};

namespace detail {

// log(n!) - log(sqrt(2 pi n) (n/e)^n) for n = 0..15, evaluated in 50 digits.
inline const std::array<double, 16>& stirling_error_table() {
    static const std::array<double, 16> table = [] {
        using Wide = boost::multiprecision::cpp_bin_float_50;
        std::array<double, 16> t{};
        const Wide half_log_two_pi = log(2 * boost::math::constants::pi<Wide>()) / 2;
        Wide log_fact = 0;
        for (int n = 1; n < 16; ++n) {
            const Wide wn = n;
            log_fact += log(wn);
            const Wide e = log_fact - (wn + Wide(0.5)) * log(wn) + wn - half_log_two_pi;
            t[static_cast<std::size_t>(n)] = e.convert_to<double>();
        }
        return t;
    }();
    return table;
}

inline double stirling_error(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n < 16.0) return stirling_error_table()[static_cast<std::size_t>(n)];
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x/m) + m - x without cancellation when x is close to m.
inline double deviance_term(double x, double m) {
    if (std::abs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

}  // namespace detail

/// e^{-lambda} lambda^j / j!, evaluated in log space with a saddle-point
/// split of log(j!) so large lambda keeps full relative precision.
inline double poisson_pmf(double lambda, long j) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_pmf: lambda must be > 0");
    if (j < 0) throw std::invalid_argument("poisson_pmf: j must be >= 0");
    if (j == 0) return std::exp(-lambda);
    const double x = static_cast<double>(j);
    return std::exp(-detail::stirling_error(x) - detail::deviance_term(x, lambda)) /
           std::sqrt(2.0 * std::numbers::pi * x);
}

/// Chernoff bound e^{-lambda} (e lambda / m)^m on P[X >= m] (m > lambda)
/// or on P[X <= m] (m < lambda).
inline double poisson_chernoff_tail(double lambda, long m) {
    if (m <= 0) return std::exp(-lambda);
    return std::exp(-detail::deviance_term(static_cast<double>(m), lambda));
}

/// Window centred on lambda with half-width max(50, 12 sqrt(lambda)).
inline RealDistributionOnIntegers poisson_window(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_window: lambda must be > 0");
    const double half_width = std::max(50.0, 12.0 * std::sqrt(lambda));
    const long lo = std::max(0L, static_cast<long>(std::ceil(lambda - half_width)));
    const long hi = static_cast<long>(std::floor(lambda + half_width));

    RealDistributionOnIntegers d;
    d.support_offset = lo;
    d.weights.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long j = lo; j <= hi; ++j) d.weights.push_back(poisson_pmf(lambda, j));
    d.tail_mass_bound = poisson_chernoff_tail(lambda, hi + 1) + (lo > 0 ? poisson_chernoff_tail(lambda, lo - 1) : 0.0);
    return d;
}

/// Parameters of TP(mu, sigma2): Y - shift ~ Po(poisson_rate), with
/// shift + gamma = mu - sigma2 and gamma the fractional part.
struct TranslatedPoissonParams {
    Rational mu;
    Rational sigma2;
    Rational gamma;
    long shift = 0;
    Rational poisson_rate;

    double rate() const { return to_double(poisson_rate); }
};

inline TranslatedPoissonParams translate_params(const Rational& mu, const Rational& sigma2) {
    if (sigma2 <= 0) throw std::invalid_argument("translate_params: sigma2 must be > 0");
    const Rational offset = mu - sigma2;
    TranslatedPoissonParams p;
    p.mu = mu;
    p.sigma2 = sigma2;
    p.gamma = fractional_part(offset);
    p.shift = floor(offset).convert_to<long>();
    p.poisson_rate = sigma2 + p.gamma;
    return p;
}

inline double tp_pmf(const TranslatedPoissonParams& params, long m) {
    if (m < params.shift) return 0.0;
    return poisson_pmf(params.rate(), m - params.shift);
}

inline RealDistributionOnIntegers tp_window(const TranslatedPoissonParams& params) {
    RealDistributionOnIntegers d = poisson_window(params.rate());
    d.support_offset += params.shift;
    return d;
}

enum class ModMethod { direct_sum, fourier };

/// P[X == k (mod b)] for X ~ Po(lambda).
///
/// direct_sum adds pmf values over the certified window (tail < 1e-14).
/// fourier evaluates (1/b) sum_j E exp(2 pi i j (X - k) / b) with conjugate
/// characters j and b - j folded into a single real term.
inline double poisson_mod_probability(double lambda, int b, int k, ModMethod method) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_mod_probability: lambda must be > 0");
    if (b < 2) throw std::invalid_argument("poisson_mod_probability: b must be >= 2");
    if (k < 0 || k >= b) throw std::invalid_argument("poisson_mod_probability: k must lie in 0..b-1");

    if (method == ModMethod::direct_sum) {
        const RealDistributionOnIntegers w = poisson_window(lambda);
        if (!(w.tail_mass_bound < 1e-14)) throw std::runtime_error("poisson_mod_probability: window tail too heavy");
        double sum = 0.0;
        long first = w.support_begin() + ((k - w.support_begin()) % b + b) % b;
        for (long m = first; m < w.support_end(); m += b) sum += w.mass_at(m);
        return sum;
    }

    const double two_pi = 2.0 * std::numbers::pi;
    double sum = 1.0;  // j = 0
    for (int j = 1; 2 * j <= b; ++j) {
        const double theta = two_pi * j / b;
        const double modulus = std::exp(lambda * (std::cos(theta) - 1.0));
        const double phase = lambda * std::sin(theta) - theta * k;
        // j and b - j coincide when 2j == b
        sum += (2 * j == b ? 1.0 : 2.0) * modulus * std::cos(phase);
    }
    return sum / b;
}

struct PoissonModBounds {
    double tight = 0.0;  // (1/b) sum_{j=1}^{b-1} exp(-lambda (1 - cos(2 pi j / b)))
    double loose = 0.0;  // ((b-1)/b) exp(-lambda (1 - cos(2 pi / b)))
};

inline PoissonModBounds poisson_mod_bounds(double lambda, int b) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_mod_bounds: lambda must be > 0");
    if (b < 2) throw std::invalid_argument("poisson_mod_bounds: b must be >= 2");
    const double two_pi = 2.0 * std::numbers::pi;
    const double cos_first = std::cos(two_pi / b);
    const double largest = std::exp(-lambda * (1.0 - cos_first));
    // Terms are scaled by the largest one, so each is <= 1 and the rounded
    // sum stays <= b - 1; this keeps tight <= loose after rounding.
    double scaled = 0.0;
    for (int j = 1; j < b; ++j) {
        const int folded = std::min(j, b - j);
        scaled += std::exp(-lambda * std::max(0.0, cos_first - std::cos(two_pi * folded / b)));
    }
    PoissonModBounds out;
    out.tight = largest * scaled / b;
    out.loose = largest * (b - 1) / b;
    return out;
}

inline double tp_mod_probability(const TranslatedPoissonParams& params, int b, int k) {
    if (b < 2) throw std::invalid_argument("tp_mod_probability: b must be >= 2");
    if (k < 0 || k >= b) throw std::invalid_argument("tp_mod_probability: k must lie in 0..b-1");
    const long residue = ((static_cast<long>(k) - params.shift) % b + b) % b;
    return poisson_mod_probability(params.rate(), b, static_cast<int>(residue), ModMethod::fourier);
}

}  // namespace eulertp
