#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "arithdyn/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = arithdyn::cli;
    CLI::App app{"S-integrality of orbits of rational maps on P^1 over Q"};
    app.require_subcommand(1);

    cli::CommandConfig cfg;
    std::string window, output;
    std::size_t n = 0;
    bool no_timestamp = false;

    const std::pair<const char*, const char*> commands[] = {
        {"analyze", "critical points, exceptional points, powering test"},
        {"orbit", "orbit of --point for --n steps"},
        {"pairs", "integral pairs (m, n) in a window"},
        {"divisor", "divisor tower G_k, B_k up to depth --n"},
        {"certify", "preperiodic / wandering certificate for --point"},
        {"powering", "powering classification and tau analysis"},
        {"exceptional", "exceptional points and S enlargement"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--map", cfg.map_spec, "map expression or num=...;den=...")->required();
        sub->add_option("--u", cfg.u, "first base point");
        sub->add_option("--w", cfg.w, "second base point");
        sub->add_option("--point", cfg.point, "point");
        sub->add_option("--S", cfg.S, "comma separated primes");
        sub->add_option("--window", window, "MxN");
        sub->add_option("--n", n, "depth, orbit length or iteration budget");
        sub->add_flag("--functorial", cfg.functorial, "test via D_k where valid");
        sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
        sub->add_option("--digit-budget", cfg.limits.digit_budget, "max digits per orbit coordinate");
        sub->add_option("--degree-cap", cfg.limits.degree_cap, "max degree of iterated forms");
        sub->add_option("--output", output, "output file (default stdout)");
        sub->callback([&cfg, name = std::string(name)] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--n")) cfg.n = n;
    }
    cfg.timestamp = !no_timestamp;

    cfg.window_spec = window;
    const cli::RunResult res = cli::run(cfg);

    if (output.empty()) {
        std::cout << res.document;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return 1;
        }
        out << res.document;
    }
    return res.status;
}
