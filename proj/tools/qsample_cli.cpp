// qsample: bounds, QRNG rate curves, figure data and property suites.
//
//   qsample bound --m 10000 --n 10000 --epsilon 1e-6 --w 0.05
//   qsample rate-curve --grid 1000:1000000:50 --format json
//   qsample verify --suite ideal-state --trials 5000 --seed 7

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsample/report.hpp"

namespace {

using qsample::RunConfig;

template <typename T, typename Slot>
void optional_flag(CLI::App* app, const std::string& name, Slot& slot, const std::string& help) {
    app->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

void add_epsilon(CLI::App* app, RunConfig& cfg) {
    optional_flag<double>(app, "--epsilon", cfg.epsilon, "smoothing parameter epsilon");
    optional_flag<double>(app, "--beta", cfg.beta, "exponent beta in (0,1/2)");
}

void add_output(CLI::App* app, RunConfig& cfg) {
    app->add_option("--out", cfg.out, "write output here instead of stdout");
    app->add_option("--format", cfg.format, "csv or json")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, qsample::OutputFormat>{{"csv", qsample::OutputFormat::csv},
                                                         {"json", qsample::OutputFormat::json}}));
    app->add_option("--seed", cfg.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Sampling-based min-entropy bounds and QRNG rates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qsample::kVersion);

    auto* bound = app.add_subcommand("bound", "min-entropy bound for one parameter set");
    optional_flag<std::string>(bound, "--m", cfg.m, "number of sampled qubits");
    optional_flag<std::string>(bound, "--n", cfg.n, "number of remaining qubits");
    add_epsilon(bound, cfg);
    optional_flag<double>(bound, "--epsilon-hat", cfg.epsilon_hat, "failure scale (default: epsilon)");
    optional_flag<double>(bound, "--c", cfg.c, "basis overlap in [1/2,1]");
    optional_flag<double>(bound, "--w", cfg.w, "observed relative weight");
    optional_flag<unsigned>(bound, "--a", cfg.a, "reference symbol 0 or 1");
    add_output(bound, cfg);

    auto* rate = app.add_subcommand("rate-curve", "QRNG output rate against total block size");
    optional_flag<std::string>(rate, "--grid", cfg.grid, "N values: comma list or start:stop:count");
    optional_flag<std::string>(rate, "--N", cfg.N, "alias for --grid");
    optional_flag<double>(rate, "--m-fraction", cfg.m_fraction, "test size as a fraction of n");
    optional_flag<double>(rate, "--w", cfg.w, "observed error rate");
    add_epsilon(rate, cfg);
    rate->add_option("--formula", cfg.formula, "paper or two-log")
        ->check(CLI::IsMember({"paper", "two-log"}));
    add_output(rate, cfg);

    auto* fig1 = app.add_subcommand("fig1", "Shannon and min-entropy of a biased coin");
    optional_flag<std::string>(fig1, "--grid", cfg.grid, "p values: comma list or start:stop:count");
    add_output(fig1, cfg);

    auto* verify = app.add_subcommand("verify", "run randomized property suites");
    verify->add_option("--suite", cfg.suites, "superposition, superposition-branch, ideal-state, uncertainty, sampling-bound (default: all)");
    verify->add_option("--trials", cfg.trials, "instances per suite");
    verify->add_option("--inject-bound-offset", cfg.inject_bound_offset, "test hook: raise the ideal-state bound by this many bits");
    add_output(verify, cfg);

    auto* sampling = app.add_subcommand("sampling", "exact, Monte Carlo and analytic failure probability");
    optional_flag<std::string>(sampling, "--N", cfg.N, "string lengths");
    optional_flag<std::string>(sampling, "--m", cfg.m, "sample sizes k");
    optional_flag<std::string>(sampling, "--delta", cfg.delta, "tolerances");
    sampling->add_option("--trials", cfg.trials, "Monte Carlo subsets per weight class");
    add_output(sampling, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "qsample: " << e.what() << '\n';
        return qsample::kExitUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    qsample::CommandResult result;
    try {
        result = qsample::run_command(cfg);
    } catch (const std::exception& e) {
        std::cerr << "qsample: " << e.what() << '\n';
        return qsample::kExitUsage;
    }
    for (const auto& line : result.diagnostics) std::cerr << line << '\n';

    const std::string text = qsample::render(result.table, cfg);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!(file << text)) {
            std::cerr << "qsample: cannot write " << cfg.out << '\n';
            return qsample::kExitUsage;
        }
    }
    return result.exit_code;
}
