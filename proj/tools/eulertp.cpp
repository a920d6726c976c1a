#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eulertp/commands.hpp"

namespace {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace eulertp;

    CLI::App app{"Exact Eulerian residue probabilities and translated Poisson bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(tool_version));

    std::string format = "csv";
    std::string out_path;
    bool no_timestamp = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp from the metadata");

    int n = 0, b = 0, k = -1, n_min = 0, n_max = 0;
    long steps = 0;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    std::string method = "fourier", b_list, n_list;

    auto* triangle = app.add_subcommand("triangle", "Eulerian numbers A(m,k) for m <= n");
    triangle->add_option("--n", n)->required();

    auto* modular = app.add_subcommand("modular", "Exact P[descents == k mod b]");
    modular->add_option("--n", n)->required();
    modular->add_option("--b", b)->required();
    modular->add_option("--k", k, "Residue (all residues when omitted)");

    auto* poisson = app.add_subcommand("poisson-mod", "P[Po(lambda) == k mod b] with its bounds");
    poisson->add_option("--lambda", lambda)->required();
    poisson->add_option("--b", b)->required();
    poisson->add_option("--k", k)->required();
    poisson->add_option("--method", method)->check(CLI::IsMember({"sum", "fourier"}));

    auto* verify_main = app.add_subcommand("verify-main", "Modular deviation against the closed-form bound");
    verify_main->add_option("--n-min", n_min)->required();
    verify_main->add_option("--n-max", n_max)->required();
    verify_main->add_option("--b", b_list, "Comma-separated moduli; 'n' means b = n")->required();

    auto* verify_tp = app.add_subcommand("verify-tp", "TV to translated Poisson against its bound");
    verify_tp->add_option("--n", n_list, "Comma-separated n values")->required();

    auto* oracle = app.add_subcommand("oracle", "Exhaustive exchangeable-pair moments");
    oracle->add_option("--n", n)->required();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo draws of (W, W', S)");
    simulate->add_option("--n", n)->required();
    simulate->add_option("--steps", steps)->required();
    simulate->add_option("--seed", seed)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage_error;
    }

    cli::CommandResult result;
    try {
        if (*triangle) {
            result = cli::cmd_triangle(n);
        } else if (*modular) {
            result = cli::cmd_modular(n, b, k);
        } else if (*poisson) {
            result = cli::cmd_poisson_mod(lambda, b, k, method == "sum" ? ModMethod::direct_sum : ModMethod::fourier);
        } else if (*verify_main) {
            result = cli::from_report(cli::verify_main(n_min, n_max, cli::parse_moduli(b_list)));
        } else if (*verify_tp) {
            result = cli::from_report(cli::verify_tp(cli::parse_int_list(n_list)));
        } else if (*oracle) {
            result = cli::cmd_oracle(n);
        } else if (*simulate) {
            result = cli::cmd_simulate(n, steps, seed);
            result.table.metadata.insert(result.table.metadata.begin(), {"seed", std::to_string(seed)});
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    }

    std::ostringstream cmdline;
    for (int i = 0; i < argc; ++i) cmdline << (i ? " " : "") << argv[i];
    auto& meta = result.table.metadata;
    meta.insert(meta.begin(), {"command", cmdline.str()});
    meta.insert(meta.begin(), {"tool_version", tool_version});
    if (!no_timestamp) meta.emplace_back("timestamp", utc_timestamp());

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return usage_error;
        }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    if (format == "json")
        write_json(os, result.table);
    else
        write_csv(os, result.table);

    return result.pass ? ok : verification_failed;
}
