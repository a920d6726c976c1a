#pragma once

// Total variation distance between distributions on the integers.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bounds.hpp"
#include "eulerian_core.hpp"
#include "poisson_tp.hpp"
#include "rational.hpp"

namespace eulertp {

struct TvResult {
    double value = 0.0;
    double truncation_error = 0.0;  // certified additive uncertainty
};

inline RealDistributionOnIntegers to_real(const ExactIntegerDistribution& d) {
    RealDistributionOnIntegers out;
    out.support_offset = d.support_offset;
    out.weights.reserve(d.weights.size());
    for (const Rational& w : d.weights) out.weights.push_back(to_double(w));
    return out;
}

/// (1/2) sum |p(x) - q(x)| over the union of the two windows.
inline TvResult tv_distance(const RealDistributionOnIntegers& p, const RealDistributionOnIntegers& q) {
    if (!p.is_normalized() || !q.is_normalized()) throw std::invalid_argument("tv_distance: inputs must be normalized");
    const long lo = std::min(p.support_begin(), q.support_begin());
    const long hi = std::max(p.support_end(), q.support_end());
    double sum = 0.0;
    for (long x = lo; x < hi; ++x) sum += std::abs(p.mass_at(x) - q.mass_at(x));
    return TvResult{std::min(1.0, 0.5 * sum), 0.5 * (p.tail_mass_bound + q.tail_mass_bound)};
}

/// max_A |P(A) - Q(A)|, attained at A = {x : p(x) > q(x)}.
inline double tv_distance_max_form(const RealDistributionOnIntegers& p, const RealDistributionOnIntegers& q) {
    const long lo = std::min(p.support_begin(), q.support_begin());
    const long hi = std::max(p.support_end(), q.support_end());
    double pa = 0.0, qa = 0.0;
    for (long x = lo; x < hi; ++x) {
        const double px = p.mass_at(x), qx = q.mass_at(x);
        if (px > qx) {
            pa += px;
            qa += qx;
        }
    }
    return pa - qa;
}

inline TranslatedPoissonParams descent_tp_params(int n) {
    if (n < 1) throw std::invalid_argument("descent_tp_params: n must be >= 1");
    return translate_params(Rational(n - 1, 2), Rational(n + 1, 12));
}

/// TV between the exact law of the descent count and TP((n-1)/2, (n+1)/12).
inline TvResult tv_descents_vs_tp(const EulerianTable& table, int n) {
    if (n < 2) throw std::invalid_argument("tv_descents_vs_tp: n must be >= 2");
    const auto descents = to_real(descent_distribution(table, n));
    const auto tp = tp_window(descent_tp_params(n));
    return tv_distance(descents, tp);
}

inline TvResult tv_descents_vs_tp(int n) {
    if (n < 2) throw std::invalid_argument("tv_descents_vs_tp: n must be >= 2");
    return tv_descents_vs_tp(EulerianTable(n), n);
}

}  // namespace eulertp
