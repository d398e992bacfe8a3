#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "varstring/errors.hpp"
#include "varstring/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wave energy on a string with a moving damped end"};
    app.fallthrough();
    app.require_subcommand(1);

    varstring::RunOptions opt;
    app.add_option("--config", opt.configPath, "scenario bundle (JSON)")->required();
    app.add_option("--out", opt.outDir, "output directory")->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads for coefficient quadrature")
        ->envname("VARSTRING_THREADS")
        ->check(CLI::PositiveNumber);

    CLI::App* simulate =
        app.add_subcommand("simulate", "write energy/moore CSV time series");
    CLI::App* verify =
        app.add_subcommand("verify", "run the invariant checks, emit a JSON report");
    verify->add_flag("--fault-injection", opt.faultInjection,
                     "perturb spectral coefficients by 1% to prove the checks bite");
    CLI::App* window =
        app.add_subcommand("window", "write the critical damping window table");
    CLI::App* moore = app.add_subcommand("moore", "export the stretched coordinate table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return varstring::run_simulate(opt);
        if (verify->parsed()) return varstring::run_verify(opt);
        if (window->parsed()) return varstring::run_window(opt);
        if (moore->parsed()) return varstring::run_moore_export(opt);
    } catch (const varstring::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
