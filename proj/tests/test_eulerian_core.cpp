#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eulertp/eulerian_core.hpp"

using namespace eulertp;

namespace {
std::vector<BigInt> big(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }
}  // namespace

TEST_CASE("eulerian_triangle rows", "[eulerian]") {
    const EulerianTable t(8);
    CHECK(t.row(1) == big({1}));
    CHECK(t.row(3) == big({1, 4, 1}));
    CHECK(t.row(4) == big({1, 11, 11, 1}));
    CHECK(t.row(5) == big({1, 26, 66, 26, 1}));
    CHECK(t.at(4, 4) == 0);
    CHECK(t.at(4, -1) == 0);
    CHECK(EulerianTable(1).row(1) == big({1}));
    CHECK_THROWS_AS(EulerianTable(0), std::invalid_argument);
    CHECK_THROWS_AS(t.row(9), std::out_of_range);
}

TEST_CASE("triangle invariants hold up to n = 120", "[eulerian][property]") {
    const EulerianTable t(120);
    for (int n = 1; n <= 120; ++n) {
        const auto& r = t.row(n);
        BigInt sum = 0;
        for (const auto& a : r) sum += a;
        REQUIRE(sum == factorial(n));
        REQUIRE(r.front() == 1);
        REQUIRE(r.back() == 1);
        for (int k = 0; k < n; ++k) REQUIRE(t.at(n, k) == t.at(n, n - 1 - k));
    }
}

TEST_CASE("descent_distribution exact values and moments", "[eulerian]") {
    const auto d3 = descent_distribution(3);
    CHECK(d3.weights == std::vector<Rational>{Rational(1, 6), Rational(2, 3), Rational(1, 6)});
    const auto d1 = descent_distribution(1);
    CHECK(d1.weights == std::vector<Rational>{Rational(1)});
    CHECK(descent_distribution(4).weights ==
          std::vector<Rational>{Rational(1, 24), Rational(11, 24), Rational(11, 24), Rational(1, 24)});
    CHECK_THROWS_AS(descent_distribution(0), std::invalid_argument);

    const EulerianTable t(200);
    for (int n = 1; n <= 200; ++n) {
        const auto d = descent_distribution(t, n);
        REQUIRE(d.is_normalized());
        REQUIRE(d.mean() == Rational(n - 1, 2));
        // (n+1)/12 needs n >= 2; a single symbol has no spread
        REQUIRE(d.variance() == (n == 1 ? Rational(0) : Rational(n + 1, 12)));
    }
}

TEST_CASE("brute force enumeration agrees with the recurrence", "[eulerian][oracle]") {
    CHECK(brute_force_descent_distribution(1).weights == std::vector<Rational>{Rational(1)});
    CHECK(brute_force_descent_distribution(3).weights ==
          std::vector<Rational>{Rational(1, 6), Rational(2, 3), Rational(1, 6)});
    for (int n = 1; n <= 8; ++n) CHECK(brute_force_descent_distribution(n) == descent_distribution(n));
    CHECK_THROWS_AS(brute_force_descent_distribution(11), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_descent_distribution(0), std::invalid_argument);
}

TEST_CASE("modular_descent_probability", "[eulerian]") {
    CHECK(modular_descent_probability(3, 2, 0) == Rational(1, 3));
    CHECK(modular_descent_probability(3, 2, 1) == Rational(2, 3));
    CHECK(modular_descent_probability(2, 3, 2) == 0);
    CHECK_THROWS_AS(modular_descent_probability(3, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(modular_descent_probability(3, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(modular_descent_probability(3, 2, -1), std::invalid_argument);

    const EulerianTable t(40);
    for (int n = 1; n <= 40; ++n)
        for (int b : {2, 3, 5, 7, 12, 41, 100}) {
            Rational total = 0;
            for (int k = 0; k < b; ++k) total += modular_descent_probability(t, n, b, k);
            REQUIRE(total == 1);
        }
}

TEST_CASE("even descent counts coincide for even n", "[eulerian]") {
    // A(n,k) = A(n,n-1-k) pairs even and odd k when n - 1 is odd
    const EulerianTable t(30);
    for (int n = 2; n <= 30; n += 2) CHECK(modular_descent_probability(t, n, 2, 0) == Rational(1, 2));
}

TEST_CASE("bernoulli numbers", "[eulerian][bernoulli]") {
    const auto b = bernoulli_numbers(12);
    CHECK(b[0] == 1);
    CHECK(b[1] == Rational(-1, 2));
    CHECK(b[2] == Rational(1, 6));
    CHECK(b[4] == Rational(-1, 30));
    CHECK(b[6] == Rational(1, 42));
    CHECK(b[12] == Rational(-691, 2730));
    for (int j = 1; 2 * j + 1 <= 12; ++j) CHECK(b[static_cast<std::size_t>(2 * j + 1)] == 0);
}

TEST_CASE("bernoulli closed form equals the modular sum", "[eulerian][bernoulli]") {
    CHECK(bernoulli_even_probability(3) == Rational(1, 3));
    CHECK(bernoulli_even_probability(1) == 1);
    CHECK(bernoulli_even_probability(10) == modular_descent_probability(10, 2, 0));
    const auto seq = bernoulli_numbers(51);
    const EulerianTable t(50);
    for (int n = 1; n <= 50; ++n) REQUIRE(bernoulli_even_probability(seq, n) == modular_descent_probability(t, n, 2, 0));
    CHECK_THROWS_AS(bernoulli_even_probability(bernoulli_numbers(3), 3), std::invalid_argument);
}

TEST_CASE("even-count deviation decays at rate 2/pi per step", "[eulerian]") {
    // nonzero only for odd n, so the per-step rate is the square root of
    // the ratio across two steps
    const EulerianTable t(40);
    const double target = 2.0 / 3.14159265358979323846;
    auto dev = [&](int n) -> Rational { return abs(modular_descent_probability(t, n, 2, 0) - Rational(1, 2)); };
    for (int n = 21; n <= 37; n += 2) {
        REQUIRE(dev(n) > 0);
        CHECK(std::abs(std::sqrt(to_double(dev(n + 2) / dev(n))) - target) <= 0.02);
    }
}
