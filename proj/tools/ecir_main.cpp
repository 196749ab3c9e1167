// Command-line front end: bond pricing under the extended CIR model via the
// Malliavin series, with Monte-Carlo and Riccati cross-checks.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "ecir/cli_runner.hpp"
#include "ecir/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* c = cmd->add_option("--config", args.config_path, "configuration file");
    if (needs_config) c->required();
    cmd->add_option("--out", args.out_path, "output path (default stdout)");
    cmd->add_option("--format", args.format, "output format (csv)");
    cmd->add_option("--seed", args.seed, "Monte-Carlo seed override")
        ->each([&args](const std::string&) { args.seed_set = true; });
}

ecir::RunConfig load(const CommonArgs& args) {
    ecir::RunConfig cfg = ecir::parse_config_file(args.config_path);
    if (args.seed_set) cfg.mc.seed = args.seed;
    if (!args.out_path.empty()) cfg.out_path = args.out_path;
    if (args.format != "csv") throw ecir::ConfigError("--format: only 'csv' is supported");
    return cfg;
}

int dispatch(const ecir::RunConfig& cfg, int (*runner)(const ecir::RunConfig&, std::ostream&,
                                                       std::ostream&)) {
    std::unique_ptr<std::ofstream> file;
    std::ostream* out = &std::cout;
    if (!cfg.out_path.empty()) {
        file = std::make_unique<std::ofstream>(cfg.out_path);
        if (!*file) throw ecir::ConfigError("cannot open output file '" + cfg.out_path + "'");
        out = file.get();
    }
    return runner(cfg, *out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero-coupon bond pricing under the extended CIR model"};
    app.require_subcommand(1);

    CommonArgs price_args, compare_args, exp_args, oracle_args;
    int dump_n = 2;

    auto* price = app.add_subcommand("price", "series price for one configuration");
    add_common(price, price_args);
    auto* compare = app.add_subcommand("compare", "series vs Monte-Carlo vs Riccati");
    add_common(compare, compare_args);
    auto* exp = app.add_subcommand("experiment-s4",
                                   "error-vs-terms table for the three volatility presets");
    add_common(exp, exp_args);
    auto* oracle = app.add_subcommand("oracle-check",
                                      "symbolic oracle vs recurrence engine sweep");
    add_common(oracle, oracle_args);
    auto* dump = app.add_subcommand("dump-terms", "print the symbolic derivative expansion");
    dump->add_option("n", dump_n, "number of doubled derivatives (1..4)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (price->parsed()) return dispatch(load(price_args), ecir::run_price);
        if (compare->parsed()) return dispatch(load(compare_args), ecir::run_compare);
        if (exp->parsed()) return dispatch(load(exp_args), ecir::run_experiment_s4);
        if (oracle->parsed()) return dispatch(load(oracle_args), ecir::run_oracle_check);
        if (dump->parsed()) return ecir::run_dump_terms(dump_n, std::cout);
    } catch (const ecir::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const ecir::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
