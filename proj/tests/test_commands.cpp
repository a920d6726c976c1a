#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "eulertp/commands.hpp"

using namespace eulertp;

namespace {
std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}
}  // namespace

TEST_CASE("modulus lists", "[cli]") {
    const auto m = cli::parse_moduli("2,3,n,12");
    REQUIRE(m.size() == 4);
    CHECK(m[2].per_n);
    CHECK(m[2].resolve(17) == 17);
    CHECK(m[3].resolve(17) == 12);
    CHECK_THROWS_AS(cli::parse_moduli("2,x"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_moduli("1"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_moduli("2,,3"), std::invalid_argument);
    CHECK(cli::parse_int_list("50,100,200") == std::vector<int>{50, 100, 200});
    CHECK_THROWS_AS(cli::parse_int_list("5e"), std::invalid_argument);
}

TEST_CASE("verify-main rows", "[cli]") {
    const auto report = cli::verify_main(6, 60, cli::parse_moduli("2,3,5,12,n"));
    CHECK(report.all_pass());
    // residues per n: 2 + 3 + 5 + 12 + n
    std::size_t expected = 0;
    for (int n = 6; n <= 60; ++n) expected += 22 + static_cast<std::size_t>(n);
    CHECK(report.rows.size() == expected);

    const auto& first = report.rows.front();
    CHECK(first.parameters == std::vector<std::pair<std::string, long>>{{"n", 6}, {"b", 2}, {"k", 0}});
    const Rational p = modular_descent_probability(6, 2, 0);
    CHECK(first.lhs_exact == to_string(abs(p - Rational(1, 2))));

    // b = 12 > n = 6: residues 6..11 are empty classes
    for (const auto& r : report.rows)
        if (r.parameters[0].second == 6 && r.parameters[1].second == 12 && r.parameters[2].second >= 6)
            CHECK(r.lhs_exact == "1/12");

    for (const auto& r : report.rows) CHECK(r.pass == (r.margin >= -1e-12));
    CHECK_THROWS_AS(cli::verify_main(5, 10, cli::parse_moduli("2")), std::invalid_argument);
}

TEST_CASE("verify-main CSV layout", "[cli]") {
    const auto t = cli::verify_main(6, 6, cli::parse_moduli("2")).to_table();
    const std::string out = csv(t);
    CHECK(out.rfind("n,b,k,lhs,rhs,margin,pass\n6,2,0,", 0) == 0);
    const auto j = to_json(t);
    CHECK(j["rows"][0]["lhs_exact"] == to_string(abs(modular_descent_probability(6, 2, 0) - Rational(1, 2))));
    CHECK(j["rows"][1]["pass"] == true);
}

TEST_CASE("verify-tp rows", "[cli]") {
    const auto report = cli::verify_tp({6, 50, 100, 200});
    REQUIRE(report.rows.size() == 4);
    CHECK(report.all_pass());
    CHECK(report.rows[0].rhs > 1.0);
    for (std::size_t i = 1; i < 4; ++i) CHECK(report.rows[i].margin > 0.0);
    CHECK(csv(report.to_table()).rfind("n,lhs,rhs,margin,pass\n", 0) == 0);
    CHECK_THROWS_AS(cli::verify_tp({5}), std::invalid_argument);
}

TEST_CASE("oracle command", "[cli]") {
    const auto r6 = cli::cmd_oracle(6);
    CHECK(r6.pass);
    CHECK(csv(r6.table).find("var_s,161/6480,") != std::string::npos);
    const auto r4 = cli::cmd_oracle(4);
    CHECK(r4.pass);
    const std::string out = csv(r4.table);
    CHECK(out.find("t1,") == std::string::npos);
    CHECK(out.find("exchangeable,true") != std::string::npos);
    CHECK(out.find("lambda,1/2,") != std::string::npos);
    CHECK_THROWS_AS(cli::cmd_oracle(10), std::invalid_argument);
}

TEST_CASE("data commands", "[cli]") {
    const auto tri = cli::cmd_triangle(4);
    CHECK(csv(tri.table) == "n,k,value\n1,0,1\n2,0,1\n2,1,1\n3,0,1\n3,1,4\n3,2,1\n4,0,1\n4,1,11\n4,2,11\n4,3,1\n");
    const auto mod = cli::cmd_modular(3, 2);
    CHECK(csv(mod.table) == "n,b,k,probability,decimal\n3,2,0,1/3,0.33333333333333331\n3,2,1,2/3,0.66666666666666663\n");
    const auto sim = cli::cmd_simulate(6, 10, 5);
    CHECK(sim.table.rows.size() == 10);
    CHECK(csv(sim.table) == csv(cli::cmd_simulate(6, 10, 5).table));
    CHECK_THROWS_AS(cli::cmd_modular(3, 2, 2), std::invalid_argument);
}
