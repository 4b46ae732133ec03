#include <CLI11.hpp>
#include <iostream>

#include "uqsl3/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Uq(L(sl3)) integrability-object verification"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<std::string> suites;
    int cutoff = 0, sites = 0;
    long seed = -1;

    CLI::App* verify = app.add_subcommand("verify", "run verification suites from a config");
    verify->add_option("config", config_path, "TOML config file")->required();
    verify->add_option("--suite", suites, "suite selection (repeatable)");
    verify->add_option("--out", out_path, "JSON report path");
    verify->add_option("--cutoff", cutoff, "override Fock cutoff D");
    verify->add_option("--sites", sites, "override chain length n");
    verify->add_option("--seed", seed, "override RNG seed");

    CLI::App* probe = app.add_subcommand("probe-convergence", "cutoff sweep table");
    probe->add_option("config", config_path, "TOML config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        uqsl3::RunConfig cfg = uqsl3::load_config(config_path);
        if (!suites.empty()) cfg.suites = suites;
        if (cutoff > 0) cfg.params.cutoff = cutoff;
        if (sites > 0) cfg.n = sites;
        if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
        if (!out_path.empty()) cfg.output_path = out_path;
        cfg.validate();

        if (probe->parsed()) {
            uqsl3::probe_convergence(cfg, std::cout);
            return 0;
        }

        auto reports = uqsl3::run_verify(cfg);
        uqsl3::print_summary(reports, std::cout);
        if (!cfg.output_path.empty()) uqsl3::emit_report(reports, cfg.output_path);
        return uqsl3::exit_status(reports);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
