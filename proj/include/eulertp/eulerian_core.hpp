#pragma once

// Exact Eulerian numbers, the law of the descent count of a uniform
// permutation, and its residues modulo b.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace eulertp {

/// Distribution on the integers with exact rational weights.
/// weights[i] is the mass at support_offset + i.
struct ExactIntegerDistribution {
    long support_offset = 0;
    std::vector<Rational> weights;

    Rational mass_at(long x) const {
        const long i = x - support_offset;
        if (i < 0 || i >= static_cast<long>(weights.size())) return 0;
        return weights[static_cast<std::size_t>(i)];
    }

    Rational total_mass() const {
        return std::accumulate(weights.begin(), weights.end(), Rational(0));
    }

    Rational mean() const {
        Rational m = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            m += weights[i] * (support_offset + static_cast<long>(i));
        return m;
    }

    Rational variance() const {
        const Rational m = mean();
        Rational v = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const Rational d = Rational(support_offset + static_cast<long>(i)) - m;
            v += weights[i] * d * d;
        }
        return v;
    }

    bool is_normalized() const {
        return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w >= 0; }) &&
               total_mass() == 1;
    }

    friend bool operator==(const ExactIntegerDistribution&, const ExactIntegerDistribution&) = default;
};

/// Triangle of Eulerian numbers A(n, k) for 1 <= n <= n_max.
class EulerianTable {
public:
    explicit EulerianTable(int n_max) : n_max_(n_max) {
        if (n_max < 1) throw std::invalid_argument("eulerian_triangle: n_max must be >= 1");
        rows_.reserve(static_cast<std::size_t>(n_max));
        rows_.push_back({BigInt(1)});
        for (int n = 2; n <= n_max; ++n) {
            const auto& prev = rows_.back();
            std::vector<BigInt> row(static_cast<std::size_t>(n));
            // A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)
            for (int k = 0; k < n; ++k) {
                BigInt a = 0;
                if (k < n - 1) a += (k + 1) * prev[static_cast<std::size_t>(k)];
                if (k > 0) a += (n - k) * prev[static_cast<std::size_t>(k - 1)];
                row[static_cast<std::size_t>(k)] = std::move(a);
            }
            rows_.push_back(std::move(row));
        }
    }

    int n_max() const noexcept { return n_max_; }

    const std::vector<BigInt>& row(int n) const {
        if (n < 1 || n > n_max_) throw std::out_of_range("EulerianTable: row " + std::to_string(n) + " not stored");
        return rows_[static_cast<std::size_t>(n - 1)];
    }

    /// A(n,k); zero outside 0 <= k <= n-1.
    BigInt at(int n, int k) const {
        const auto& r = row(n);
        if (k < 0 || k >= n) return 0;
        return r[static_cast<std::size_t>(k)];
    }

private:
    int n_max_;
    std::vector<std::vector<BigInt>> rows_;
};

inline EulerianTable eulerian_triangle(int n_max) { return EulerianTable(n_max); }

inline ExactIntegerDistribution descent_distribution(const EulerianTable& table, int n) {
    if (n < 1) throw std::invalid_argument("descent_distribution: n must be >= 1");
    const BigInt nfact = factorial(n);
    ExactIntegerDistribution d;
    d.weights.reserve(static_cast<std::size_t>(n));
    for (const BigInt& a : table.row(n)) d.weights.push_back(Rational(a, nfact));
    return d;
}

inline ExactIntegerDistribution descent_distribution(int n) {
    if (n < 1) throw std::invalid_argument("descent_distribution: n must be >= 1");
    return descent_distribution(EulerianTable(n), n);
}

inline void check_residue(int b, int k) {
    if (b < 2) throw std::invalid_argument("modulus b must be >= 2");
    if (k < 0 || k >= b) throw std::invalid_argument("residue k must lie in 0..b-1");
}

/// (1/n!) * sum over r == k (mod b) of A(n, r). Classes that miss 0..n-1 give 0.
inline Rational modular_descent_probability(const EulerianTable& table, int n, int b, int k) {
    if (n < 1) throw std::invalid_argument("modular_descent_probability: n must be >= 1");
    check_residue(b, k);
    BigInt sum = 0;
    const auto& r = table.row(n);
    for (int i = k; i < n; i += b) sum += r[static_cast<std::size_t>(i)];
    return Rational(sum, factorial(n));
}

inline Rational modular_descent_probability(int n, int b, int k) {
    if (n < 1) throw std::invalid_argument("modular_descent_probability: n must be >= 1");
    return modular_descent_probability(EulerianTable(n), n, b, k);
}

/// Bernoulli numbers B_0..B_m with B_1 = -1/2.
struct BernoulliSequence {
    std::vector<Rational> values;

    const Rational& operator[](std::size_t i) const { return values.at(i); }
    std::size_t size() const noexcept { return values.size(); }
};

/// Solves sum_{j=0}^{m} C(m+1, j) B_j = 0 for B_m, m = 1..max_index.
inline BernoulliSequence bernoulli_numbers(int max_index) {
    if (max_index < 0) throw std::invalid_argument("bernoulli_numbers: negative index");
    BernoulliSequence seq;
    seq.values.reserve(static_cast<std::size_t>(max_index) + 1);
    seq.values.emplace_back(1);
    for (int m = 1; m <= max_index; ++m) {
        if (m > 1 && m % 2 == 1) {
            seq.values.emplace_back(0);
            continue;
        }
        Rational acc = 0;
        for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * seq.values[static_cast<std::size_t>(j)];
        seq.values.push_back(-acc / Rational(m + 1));
    }
    return seq;
}

/// Probability of an even descent count through the Bernoulli closed form
/// (1/2) (1 + 2^{n+1} (2^{n+1} - 1) B_{n+1} / (n+1)!).
inline Rational bernoulli_even_probability(const BernoulliSequence& bernoulli, int n) {
    if (n < 1) throw std::invalid_argument("bernoulli_even_probability: n must be >= 1");
    if (bernoulli.size() < static_cast<std::size_t>(n) + 2)
        throw std::invalid_argument("bernoulli_even_probability: sequence too short");
    const BigInt p = BigInt(1) << (n + 1);
    const Rational term = Rational(p * (p - 1)) * bernoulli[static_cast<std::size_t>(n + 1)] / Rational(factorial(n + 1));
    return (1 + term) / 2;
}

inline Rational bernoulli_even_probability(int n) {
    if (n < 1) throw std::invalid_argument("bernoulli_even_probability: n must be >= 1");
    return bernoulli_even_probability(bernoulli_numbers(n + 1), n);
}

/// Exhaustive count of descents pi(i) > pi(i+1) over all n! permutations.
/// Independent of the recurrence; used as a test oracle.
inline ExactIntegerDistribution brute_force_descent_distribution(int n) {
    if (n < 1) throw std::invalid_argument("brute_force_descent_distribution: n must be >= 1");
    if (n > 10) throw std::invalid_argument("brute_force_descent_distribution: n must be <= 10");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<unsigned long> counts(static_cast<std::size_t>(n), 0);
    unsigned long total = 0;
    do {
        int d = 0;
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) d += perm[i] > perm[i + 1];
        ++counts[static_cast<std::size_t>(d)];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));

    ExactIntegerDistribution d;
    for (unsigned long c : counts) d.weights.push_back(Rational(BigInt(c), BigInt(total)));
    return d;
}

}  // namespace eulertp
