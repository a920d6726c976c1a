#pragma once

// Verification sweeps and data dumps behind the eulertp command line.
// Each command returns a Table plus a pass/fail flag; rendering and exit
// codes are left to the caller.

#include <algorithm>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "distance.hpp"
#include "eulerian_core.hpp"
#include "poisson_tp.hpp"
#include "report.hpp"
#include "stein_pair.hpp"

namespace eulertp::cli {

struct CommandResult {
    Table table;
    bool pass = true;
};

/// Modulus list entry; `per_n` stands for b = n in each row.
struct Modulus {
    int value = 0;
    bool per_n = false;

    int resolve(int n) const { return per_n ? n : value; }
};

inline std::vector<Modulus> parse_moduli(const std::string& list) {
    std::vector<Modulus> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t end = std::min(list.find(',', start), list.size());
        const std::string tok = list.substr(start, end - start);
        if (tok == "n") {
            out.push_back({0, true});
        } else {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad modulus '" + tok + "'");
            }
            if (used != tok.size()) throw std::invalid_argument("bad modulus '" + tok + "'");
            if (v < 2) throw std::invalid_argument("modulus must be >= 2");
            out.push_back({v, false});
        }
        start = end + 1;
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string& list) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t end = std::min(list.find(',', start), list.size());
        const std::string tok = list.substr(start, end - start);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

inline CommandResult cmd_triangle(int n) {
    const EulerianTable table(n);
    CommandResult r;
    r.table.columns = {{"n"}, {"k"}, {"value"}};
    for (int m = 1; m <= n; ++m)
        for (int k = 0; k < m; ++k) r.table.rows.push_back({Cell{long{m}}, Cell{long{k}}, Cell{table.at(m, k).str()}});
    return r;
}

/// All residues when k is negative.
inline CommandResult cmd_modular(int n, int b, int k = -1) {
    if (n < 1) throw std::invalid_argument("modular: n must be >= 1");
    if (b < 2) throw std::invalid_argument("modular: b must be >= 2");
    if (k >= b) throw std::invalid_argument("modular: k must lie in 0..b-1");
    const EulerianTable table(n);
    CommandResult r;
    r.table.columns = {{"n"}, {"b"}, {"k"}, {"probability"}, {"decimal"}};
    const int first = k < 0 ? 0 : k;
    const int last = k < 0 ? b - 1 : k;
    for (int j = first; j <= last; ++j) {
        const Rational p = modular_descent_probability(table, n, b, j);
        r.table.rows.push_back({Cell{long{n}}, Cell{long{b}}, Cell{long{j}}, Cell{to_string(p)}, Cell{to_double(p)}});
    }
    return r;
}

inline CommandResult cmd_poisson_mod(double lambda, int b, int k, ModMethod method) {
    CommandResult r;
    const double p = poisson_mod_probability(lambda, b, k, method);
    const auto bounds = poisson_mod_bounds(lambda, b);
    r.table.columns = {{"lambda"}, {"b"}, {"k"}, {"method"}, {"probability"}, {"deviation"}, {"tight"}, {"loose"}};
    r.table.rows.push_back({Cell{lambda}, Cell{long{b}}, Cell{long{k}},
                            Cell{std::string(method == ModMethod::fourier ? "fourier" : "sum")}, Cell{p},
                            Cell{std::abs(p - 1.0 / b)}, Cell{bounds.tight}, Cell{bounds.loose}});
    return r;
}

/// |P[descents == k mod b] - 1/b| against the closed-form bound, for every
/// n in [n_min, n_max], every listed b and every residue k.
inline BoundReport verify_main(int n_min, int n_max, const std::vector<Modulus>& moduli) {
    if (n_min < 6) throw std::invalid_argument("verify-main: n-min must be >= 6");
    if (n_max < n_min) throw std::invalid_argument("verify-main: n-max must be >= n-min");
    if (moduli.empty()) throw std::invalid_argument("verify-main: empty modulus list");
    const EulerianTable table(n_max);

    auto rows_for = [&](int n) {
        std::vector<BoundRow> rows;
        for (const auto& m : moduli) {
            const int b = m.resolve(n);
            const double rhs = main_bound(n, b);
            for (int k = 0; k < b; ++k) {
                const Rational dev = abs(modular_descent_probability(table, n, b, k) - Rational(1, b));
                rows.push_back(make_bound_row({{"n", n}, {"b", b}, {"k", k}}, to_double(dev), rhs, to_string(dev)));
            }
        }
        return rows;
    };

    std::vector<std::future<std::vector<BoundRow>>> jobs;
    for (int n = n_min; n <= n_max; ++n) jobs.push_back(std::async(std::launch::async, rows_for, n));
    BoundReport report;
    for (auto& j : jobs)
        for (auto& row : j.get()) report.rows.push_back(std::move(row));
    return report;
}

/// TV(L(W), TP((n-1)/2, (n+1)/12)) against sqrt(23/5)/sqrt(n+1) + 24/(n+1).
inline BoundReport verify_tp(const std::vector<int>& ns) {
    if (ns.empty()) throw std::invalid_argument("verify-tp: empty n list");
    for (int n : ns)
        if (n < 6) throw std::invalid_argument("verify-tp: every n must be >= 6");
    const EulerianTable table(*std::max_element(ns.begin(), ns.end()));

    std::vector<std::future<BoundRow>> jobs;
    for (int n : ns)
        jobs.push_back(std::async(std::launch::async, [&table, n] {
            const TvResult tv = tv_descents_vs_tp(table, n);
            return make_bound_row({{"n", n}}, tv.value, descent_tp_bound(n));
        }));
    BoundReport report;
    for (auto& j : jobs) report.rows.push_back(j.get());
    return report;
}

/// Exact pair moments next to the closed forms they should reproduce.
inline CommandResult cmd_oracle(int n) {
    if (n < 2 || n > 9) throw std::invalid_argument("oracle: n must lie in 2..9");
    const PairMomentReport rep = pair_oracle(n);
    CommandResult r;
    r.table.columns = {{"quantity"}, {"exact"}, {"decimal"}, {"expected"}, {"status"}};

    auto add = [&](const std::string& name, const Rational& value, const std::optional<Rational>& expected) {
        std::string status = "REPORTED";
        if (expected) {
            status = value == *expected ? "MATCH" : "MISMATCH";
            if (value != *expected) r.pass = false;
        }
        r.table.rows.push_back({Cell{name}, Cell{to_string(value)}, Cell{to_double(value)},
                                Cell{expected ? to_string(*expected) : std::string()}, Cell{status}});
    };
    auto add_flag = [&](const std::string& name, bool ok) {
        if (!ok) r.pass = false;
        r.table.rows.push_back({Cell{name}, Cell{std::string(ok ? "true" : "false")}, Cell{ok ? 1.0 : 0.0},
                                Cell{std::string("true")}, Cell{std::string(ok ? "MATCH" : "MISMATCH")}});
    };

    const std::optional<Rational> none;
    if (n >= 6) {
        add("t1", *rep.t1, Rational(n + 1, 6));
        add("t2", *rep.t2, Rational(2, 6) + Rational(2, 24) + Rational(2 * (n - 4), 12));
        add("t3", *rep.t3, Rational(2 * (n - 3), 24));
        add("t4", *rep.t4, Rational(2 * (n - 4), 120));
        add("t5", *rep.t5, Rational((n - 4) * (n - 5), 36));
        add("t_sum_over_n2", (*rep.t1 + *rep.t2 + *rep.t3 + *rep.t4 + *rep.t5) / (n * n), rep.second_moment_s);
    }
    add("mean_s", rep.mean_s, Rational(n + 1, 6 * n));
    add("second_moment_s", rep.second_moment_s, none);
    add("var_s", rep.var_s_conditional_on_pi, n >= 6 ? std::optional<Rational>(var_s_formula(n)) : none);
    add("var_s_given_w", rep.var_s_conditional_on_w, none);
    add("lambda", rep.lambda_check, Rational(2, n));
    add_flag("linear", rep.linear);
    add_flag("var_s_given_w_le_var_s", rep.var_s_conditional_on_w <= rep.var_s_conditional_on_pi);
    add_flag("exchangeable", rep.exchangeable);
    add_flag("step_range_ok", rep.step_range_ok);
    add_flag("up_step_matches_indicators", rep.up_step_matches_indicators);
    return r;
}

inline CommandResult cmd_simulate(int n, long steps, std::uint64_t seed) {
    const auto samples = sample_chain(n, steps, seed);
    const auto s = summarize(samples);
    CommandResult r;
    r.table.add_metadata("mean_s", format_double(s.mean_s));
    r.table.add_metadata("se_mean_s", format_double(s.se_mean));
    r.table.add_metadata("var_s", format_double(s.var_s));
    r.table.add_metadata("se_var_s", format_double(s.se_var));
    r.table.columns = {{"i"}, {"w"}, {"w_prime"}, {"s"}};
    r.table.rows.reserve(samples.size());
    long i = 0;
    for (const auto& c : samples)
        r.table.rows.push_back({Cell{i++}, Cell{long{c.w}}, Cell{long{c.w_prime}}, Cell{c.s}});
    return r;
}

inline CommandResult from_report(const BoundReport& report) {
    CommandResult r;
    r.table = report.to_table();
    r.pass = report.all_pass();
    return r;
}

}  // namespace eulertp::cli
