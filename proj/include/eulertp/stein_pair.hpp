#pragma once

// The move-to-end exchangeable pair (W, W') for the descent statistic of
// the inverse permutation, with exhaustive and Monte Carlo checks of its
// moment identities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace eulertp {

/// Bijection of {1..n} in one-line notation: value(i) = pi(i), 1-based.
class Permutation {
public:
    explicit Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
        const int n = size();
        if (n < 1) throw std::invalid_argument("Permutation: empty mapping");
        positions_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 1; i <= n; ++i) {
            const int v = mapping_[static_cast<std::size_t>(i - 1)];
            if (v < 1 || v > n || positions_[static_cast<std::size_t>(v)] != 0)
                throw std::invalid_argument("Permutation: entries must be a permutation of 1..n");
            positions_[static_cast<std::size_t>(v)] = i;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
        std::iota(m.begin(), m.end(), 1);
        return Permutation(std::move(m));
    }

    static Permutation reversal(int n) {
        std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
        std::iota(m.rbegin(), m.rend(), 1);
        return Permutation(std::move(m));
    }

    int size() const noexcept { return static_cast<int>(mapping_.size()); }
    int value(int i) const { return mapping_.at(static_cast<std::size_t>(i - 1)); }
    /// Position of value v, i.e. pi^{-1}(v).
    int position(int v) const { return positions_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& mapping() const noexcept { return mapping_; }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.mapping_ == b.mapping_; }

private:
    std::vector<int> mapping_;
    std::vector<int> positions_;  // index 0 unused
};

namespace detail {

// Statistics read off a position array pos[v] = pi^{-1}(v), v = 1..n.
inline int inverse_descents(const int* pos, int n) {
    int w = 0;
    for (int v = 1; v < n; ++v) w += pos[v] > pos[v + 1];
    return w;
}

inline bool indicator(const int* pos, int n, int i) {
    if (i == 1) return pos[1] < pos[2];
    return i < n && pos[i - 1] < pos[i] && pos[i] < pos[i + 1];
}

// Positions after moving the entry at position `from` to the end.
inline void move_to_end_positions(const int* pos, int n, int from, int* out) {
    for (int v = 1; v <= n; ++v) {
        const int p = pos[v];
        out[v] = p == from ? n : (p > from ? p - 1 : p);
    }
}

}  // namespace detail

/// W(pi): number of i in 1..n-1 with i+1 placed before i.
inline int descents_of_inverse(const Permutation& pi) {
    int w = 0;
    for (int v = 1; v < pi.size(); ++v) w += pi.position(v) > pi.position(v + 1);
    return w;
}

/// Removes the entry at position `index` (1-based) and appends it.
inline Permutation move_random_to_end(const Permutation& pi, int index) {
    if (index < 1 || index > pi.size()) throw std::invalid_argument("move_random_to_end: index must lie in 1..n");
    std::vector<int> m = pi.mapping();
    std::rotate(m.begin() + (index - 1), m.begin() + index, m.end());
    return Permutation(std::move(m));
}

/// X_1 = [1 before 2]; X_i = [i-1, i, i+1 in order] for 2 <= i <= n-1.
inline std::vector<std::uint8_t> x_indicators(const Permutation& pi) {
    const int n = pi.size();
    if (n < 2) throw std::invalid_argument("x_indicators: n must be >= 2");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n - 1));
    bits[0] = pi.position(1) < pi.position(2);
    for (int i = 2; i <= n - 1; ++i)
        bits[static_cast<std::size_t>(i - 1)] = pi.position(i - 1) < pi.position(i) && pi.position(i) < pi.position(i + 1);
    return bits;
}

/// P[W' = W + 1 | pi] = (X_1 + ... + X_{n-1}) / n.
inline Rational s_given_pi(const Permutation& pi) {
    const auto bits = x_indicators(pi);
    const int ones = std::accumulate(bits.begin(), bits.end(), 0);
    return Rational(ones, pi.size());
}

/// Exact moments of the pair, computed by enumerating all n! permutations
/// and all n move positions.
struct PairMomentReport {
    int n = 0;
    // Grouped second-moment terms; present only for n >= 6.
    std::optional<Rational> t1, t2, t3, t4, t5;
    Rational mean_s;
    Rational second_moment_s;            // E[S(pi)^2]
    Rational var_s_conditional_on_pi;    // Var P[W' = W+1 | pi]
    Rational var_s_conditional_on_w;     // Var P[W' = W+1 | W]
    Rational lambda_check;               // lambda inferred from E[W' - mu | W]
    bool linear = false;                 // E[W' - mu | W] = (1 - lambda)(W - mu) holds with one lambda
    bool exchangeable = false;           // joint law of (W, W') symmetric
    bool step_range_ok = false;          // W' - W in {-1, 0, 1}
    bool up_step_matches_indicators = false;  // #{I : W' = W+1} == sum X_i for every pi
    // indicator_moments[i-1][j-1] = E[X_i X_j]; diagonal holds E[X_i].
    std::vector<std::vector<Rational>> indicator_moments;
    std::vector<std::vector<Rational>> joint_w;  // P[W = a, W' = b]

    const Rational& indicator_moment(int i, int j) const {
        return indicator_moments.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
    }
};

namespace detail {

struct PairTally {
    int n = 0;
    std::uint64_t perms = 0;
    std::uint64_t sum_x = 0;
    std::uint64_t sum_x2 = 0;
    std::vector<std::uint64_t> co;     // (n-1)^2, co-occurrence of X_i = X_j = 1
    std::vector<std::uint64_t> count_w;
    std::vector<std::uint64_t> up_w;   // over (pi, I) with W(pi) = w: W' = w + 1
    std::vector<std::int64_t> sum_wprime_w;
    std::vector<std::uint64_t> joint;  // n x n
    bool step_range_ok = true;
    bool up_matches = true;

    explicit PairTally(int n_)
        : n(n_),
          co(static_cast<std::size_t>((n_ - 1) * (n_ - 1)), 0),
          count_w(static_cast<std::size_t>(n_), 0),
          up_w(static_cast<std::size_t>(n_), 0),
          sum_wprime_w(static_cast<std::size_t>(n_), 0),
          joint(static_cast<std::size_t>(n_ * n_), 0) {}

    void merge(const PairTally& o) {
        perms += o.perms;
        sum_x += o.sum_x;
        sum_x2 += o.sum_x2;
        for (std::size_t i = 0; i < co.size(); ++i) co[i] += o.co[i];
        for (std::size_t i = 0; i < count_w.size(); ++i) {
            count_w[i] += o.count_w[i];
            up_w[i] += o.up_w[i];
            sum_wprime_w[i] += o.sum_wprime_w[i];
        }
        for (std::size_t i = 0; i < joint.size(); ++i) joint[i] += o.joint[i];
        step_range_ok = step_range_ok && o.step_range_ok;
        up_matches = up_matches && o.up_matches;
    }
};

// All permutations whose first entry is `first`.
inline PairTally tally_block(int n, int first) {
    PairTally t(n);
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
        if (v != first) rest.push_back(v);
    std::vector<int> pos(static_cast<std::size_t>(n) + 1), moved(static_cast<std::size_t>(n) + 1);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
    do {
        pos[static_cast<std::size_t>(first)] = 1;
        for (int i = 0; i < n - 1; ++i) pos[static_cast<std::size_t>(rest[static_cast<std::size_t>(i)])] = i + 2;

        const int w = inverse_descents(pos.data(), n);
        int ones = 0;
        for (int i = 1; i <= n - 1; ++i) {
            x[static_cast<std::size_t>(i)] = indicator(pos.data(), n, i);
            ones += x[static_cast<std::size_t>(i)];
        }
        for (int i = 1; i <= n - 1; ++i) {
            if (!x[static_cast<std::size_t>(i)]) continue;
            for (int j = 1; j <= n - 1; ++j)
                if (x[static_cast<std::size_t>(j)]) ++t.co[static_cast<std::size_t>((i - 1) * (n - 1) + (j - 1))];
        }

        int ups = 0;
        for (int from = 1; from <= n; ++from) {
            move_to_end_positions(pos.data(), n, from, moved.data());
            const int wp = inverse_descents(moved.data(), n);
            const int step = wp - w;
            if (step < -1 || step > 1) t.step_range_ok = false;
            ups += step == 1;
            t.sum_wprime_w[static_cast<std::size_t>(w)] += wp;
            ++t.joint[static_cast<std::size_t>(w * n + wp)];
        }
        if (ups != ones) t.up_matches = false;

        ++t.perms;
        ++t.count_w[static_cast<std::size_t>(w)];
        t.up_w[static_cast<std::size_t>(w)] += static_cast<std::uint64_t>(ups);
        t.sum_x += static_cast<std::uint64_t>(ones);
        t.sum_x2 += static_cast<std::uint64_t>(ones * ones);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return t;
}

}  // namespace detail

inline PairMomentReport pair_oracle(int n) {
    if (n < 2) throw std::invalid_argument("pair_oracle: n must be >= 2");
    if (n > 9) throw std::invalid_argument("pair_oracle: n must be <= 9");

    // one block per leading entry
    std::vector<std::future<detail::PairTally>> blocks;
    for (int first = 1; first <= n; ++first)
        blocks.push_back(std::async(std::launch::async, detail::tally_block, n, first));
    detail::PairTally t(n);
    for (auto& b : blocks) t.merge(b.get());

    const BigInt perms = t.perms;
    const Rational mu(n - 1, 2);

    PairMomentReport r;
    r.n = n;
    r.step_range_ok = t.step_range_ok;
    r.up_step_matches_indicators = t.up_matches;
    r.mean_s = Rational(BigInt(t.sum_x), perms * n);
    r.second_moment_s = Rational(BigInt(t.sum_x2), perms * n * n);
    r.var_s_conditional_on_pi = r.second_moment_s - r.mean_s * r.mean_s;

    Rational es_w2 = 0;
    for (int w = 0; w < n; ++w) {
        const auto cw = t.count_w[static_cast<std::size_t>(w)];
        if (cw == 0) continue;
        const Rational s_w(BigInt(t.up_w[static_cast<std::size_t>(w)]), BigInt(cw) * n);
        es_w2 += Rational(BigInt(cw), perms) * s_w * s_w;
    }
    r.var_s_conditional_on_w = es_w2 - r.mean_s * r.mean_s;

    std::optional<Rational> lambda;
    bool linear = true;
    for (int w = 0; w < n; ++w) {
        const auto cw = t.count_w[static_cast<std::size_t>(w)];
        if (cw == 0) continue;
        const Rational drift = Rational(BigInt(t.sum_wprime_w[static_cast<std::size_t>(w)]), BigInt(cw) * n) - mu;
        const Rational centred = Rational(w) - mu;
        if (centred == 0) {
            linear = linear && drift == 0;
            continue;
        }
        const Rational lam = 1 - drift / centred;
        if (!lambda) lambda = lam;
        linear = linear && *lambda == lam;
    }
    r.lambda_check = lambda.value_or(Rational(0));
    r.linear = linear && lambda.has_value();

    r.joint_w.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    const BigInt pairs = perms * n;
    bool symmetric = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto ab = t.joint[static_cast<std::size_t>(a * n + b)];
            symmetric = symmetric && ab == t.joint[static_cast<std::size_t>(b * n + a)];
            r.joint_w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = Rational(BigInt(ab), pairs);
        }
    r.exchangeable = symmetric;

    const int m = n - 1;
    r.indicator_moments.assign(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            r.indicator_moments[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rational(BigInt(t.co[static_cast<std::size_t>(i * m + j)]), perms);

    if (n >= 6) {
        const auto e = [&](int i, int j) { return r.indicator_moment(i, j); };
        Rational t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0;
        for (int i = 1; i <= n - 1; ++i) t1 += e(i, i);
        for (int j = 2; j <= n - 1; ++j) t2 += 2 * e(1, j);
        for (int i = 2; i <= n - 2; ++i) t3 += 2 * e(i, i + 1);
        for (int i = 2; i <= n - 3; ++i) t4 += 2 * e(i, i + 2);
        for (int i = 2; i <= n - 4; ++i)
            for (int j = i + 3; j <= n - 1; ++j) t5 += 2 * e(i, j);
        r.t1 = t1;
        r.t2 = t2;
        r.t3 = t3;
        r.t4 = t4;
        r.t5 = t5;
    }
    return r;
}

/// One draw of the chain: W(pi), W(pi') and the indicator sum behind S(pi).
struct ChainSample {
    int w = 0;
    int w_prime = 0;
    int indicator_sum = 0;
    double s = 0.0;  // indicator_sum / n

    friend bool operator==(const ChainSample&, const ChainSample&) = default;
};

/// Generator for stream `stream` of `seed`. Parallel samplers take
/// consecutive stream indices of one seed.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform integer in [0, bound) by rejection; identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline std::vector<ChainSample> sample_chain(int n, long steps, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_chain: n must be >= 2");
    if (steps < 1) throw std::invalid_argument("sample_chain: steps must be >= 1");
    auto rng = make_stream(seed);
    std::vector<ChainSample> out;
    out.reserve(static_cast<std::size_t>(steps));

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<int> pos(static_cast<std::size_t>(n) + 1), moved(static_cast<std::size_t>(n) + 1);
    for (long s = 0; s < steps; ++s) {
        std::iota(perm.begin(), perm.end(), 1);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
        for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i + 1;
        const int from = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))) + 1;

        ChainSample c;
        c.w = detail::inverse_descents(pos.data(), n);
        detail::move_to_end_positions(pos.data(), n, from, moved.data());
        c.w_prime = detail::inverse_descents(moved.data(), n);
        for (int i = 1; i <= n - 1; ++i) c.indicator_sum += detail::indicator(pos.data(), n, i);
        c.s = static_cast<double>(c.indicator_sum) / n;
        out.push_back(c);
    }
    return out;
}

/// Sample mean and variance of S with their standard errors.
struct ChainSummary {
    long count = 0;
    double mean_s = 0.0;
    double var_s = 0.0;
    double se_mean = 0.0;
    double se_var = 0.0;
    double mean_step = 0.0;  // average of W' - W
};

inline ChainSummary summarize(const std::vector<ChainSample>& samples) {
    ChainSummary out;
    out.count = static_cast<long>(samples.size());
    if (samples.empty()) return out;
    const double count = static_cast<double>(samples.size());
    double sum = 0.0, step = 0.0;
    for (const auto& c : samples) {
        sum += c.s;
        step += c.w_prime - c.w;
    }
    out.mean_s = sum / count;
    out.mean_step = step / count;
    double m2 = 0.0, m4 = 0.0;
    for (const auto& c : samples) {
        const double d = c.s - out.mean_s;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= count;
    m4 /= count;
    out.var_s = count > 1 ? m2 * count / (count - 1) : 0.0;
    out.se_mean = std::sqrt(m2 / count);
    out.se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / count);
    return out;
}

}  // namespace eulertp
