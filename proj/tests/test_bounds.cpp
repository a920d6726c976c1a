#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eulertp/bounds.hpp"

using namespace eulertp;
using Catch::Approx;

TEST_CASE("generic_tp_bound", "[bounds]") {
    CHECK(generic_tp_bound({Rational(1, 3), Rational(5, 2), Rational(0)}) == Approx(2.0 / 2.5).epsilon(1e-15));
    CHECK(generic_tp_bound({Rational(1, 2), Rational(2), Rational(1)}) == Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(generic_tp_bound({Rational(1), Rational(2), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(generic_tp_bound({Rational(0), Rational(2), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(generic_tp_bound({Rational(1, 2), Rational(0), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(generic_tp_bound({Rational(1, 2), Rational(2), Rational(-1)}), std::invalid_argument);
}

TEST_CASE("the descent inputs reduce to the closed form", "[bounds]") {
    for (int n = 6; n <= 1000; ++n) {
        const double generic = generic_tp_bound(descent_bound_inputs(n));
        REQUIRE(std::abs(generic - descent_tp_bound(n)) <= 1e-12 * descent_tp_bound(n));
    }
}

TEST_CASE("descent_tp_bound", "[bounds]") {
    CHECK(descent_tp_bound(11) == Approx(2.6191391873668903).epsilon(1e-14));
    CHECK(descent_tp_bound(6) == Approx(4.2392149119492061).epsilon(1e-14));
    CHECK(descent_tp_bound(6) == Approx(std::sqrt(23.0 / 5.0) / std::sqrt(7.0) + 24.0 / 7.0));
    CHECK_THROWS_AS(descent_tp_bound(5), std::invalid_argument);
    double prev = descent_tp_bound(6);
    for (int n = 7; n <= 1000; ++n) {
        const double cur = descent_tp_bound(n);
        REQUIRE(cur < prev);
        prev = cur;
    }
    CHECK(descent_tp_bound(1'000'000) < 0.003);
}

TEST_CASE("main_bound", "[bounds]") {
    CHECK(main_bound(119, 2) == Approx(0.39578900310508899).epsilon(1e-14));
    for (int n : {6, 20, 77})
        CHECK(modular_poisson_term(n, 2) == Approx(0.5 * std::exp(-(n + 1) / 6.0)).epsilon(1e-14));
    for (int b = 2; b <= 10'000; b *= 3) {
        CHECK(main_bound(30, b) >= descent_tp_bound(30));
        CHECK(main_bound(30, b) < descent_tp_bound(30) + 1.0);
    }
    CHECK(modular_poisson_term(30, 1'000'000) == Approx(1.0).margin(2e-6));
    for (int b : {2, 3, 5, 12}) {
        double prev = main_bound(6, b);
        for (int n = 7; n <= 1000; ++n) {
            const double cur = main_bound(n, b);
            REQUIRE(cur < prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(main_bound(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(main_bound(6, 1), std::invalid_argument);
}

TEST_CASE("var_s_formula", "[bounds]") {
    CHECK(var_s_formula(6) == Rational(161, 6480));
    CHECK(var_s_formula(9) == Rational(23, 1458));
    CHECK(var_s_formula(7) == Rational(46, 2205));
    CHECK_THROWS_AS(var_s_formula(5), std::invalid_argument);
}
