// Command-line front end: simulate, rates, sweep, validate, figure.
//
// Exit status: 0 success, 1 validation failure, 2 usage or configuration error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "purcell/core/config.hpp"
#include "purcell/experiments/figures.hpp"
#include "purcell/experiments/output.hpp"
#include "purcell/experiments/runner.hpp"
#include "purcell/experiments/validate.hpp"

namespace ex = purcell::experiments;
using nlohmann::json;

namespace {

constexpr int kUsageError = 2;

json read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw purcell::core::ConfigError("", "cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw purcell::core::ConfigError("", "malformed config file " + path + ": " + e.what());
    }
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw purcell::core::ConfigError("--values", "not a number: " + item);
        out.push_back(v);
    }
    return out;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void list_files(const std::vector<ex::fs::path>& files) {
    for (const auto& f : files) std::cout << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doppler cooling of emitters in free space and lossy cavities"};
    app.require_subcommand(1);

    std::string config, out_dir, axis, values, name, figure;
    bool paired = false;
    unsigned workers = 0;
    int draws = 10000;

    auto* simulate = app.add_subcommand("simulate", "integrate one configuration and write CSV + manifest");
    simulate->add_option("--config", config, "configuration file (JSON)")->required();
    simulate->add_option("--out", out_dir, "output directory (default $PURCELL_OUT_DIR or ./out)");
    simulate->add_option("--name", name, "artifact name (default: config file stem)");

    auto* rates = app.add_subcommand("rates", "print the analytic rates of a configuration");
    rates->add_option("--config", config, "configuration file (JSON)")->required();

    auto* sweep = app.add_subcommand("sweep", "run a configuration over one parameter axis");
    sweep->add_option("--config", config, "base configuration file (JSON)")->required();
    sweep->add_option("--axis", axis, "dotted key (params.delta_a) or 'cooperativity'")->required();
    sweep->add_option("--values", values, "comma-separated axis values")->required();
    sweep->add_flag("--paired", paired, "also run the free-space twin of every point");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

    auto* validate = app.add_subcommand("validate", "run the oracle and property checks");
    validate->add_option("--draws", draws, "random parameter draws for the property checks");

    auto* fig = app.add_subcommand("figure", "compute a built-in figure and write its artifacts");
    fig->add_option("name", figure, "fig2, fig3a, fig3b, fig4ab, fig4cd, fig5 or fig7")->required();
    fig->add_option("--out", out_dir, "output directory");
    fig->add_option("--workers", workers, "worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*simulate) {
            ex::RunSpec spec{name.empty() ? stem(config) : name, read_config(config)};
            list_files(ex::run_simulation(spec, ex::output_dir(out_dir)));
        } else if (*rates) {
            const auto cfg = purcell::core::parse_config(read_config(config));
            std::cout << ex::rates_report(cfg).dump(2) << "\n";
        } else if (*sweep) {
            ex::SweepSpec spec;
            spec.base = {stem(config), read_config(config)};
            spec.axis = axis;
            spec.values = parse_values(values);
            spec.paired = paired;
            spec.workers = workers;
            list_files(ex::write_sweep(spec, ex::output_dir(out_dir)));
        } else if (*validate) {
            ex::ValidateOptions opt;
            opt.random_draws = draws;
            const auto report = ex::run_validate(opt);
            ex::print_report(report, std::cout);
            return report.all_pass() ? 0 : 1;
        } else if (*fig) {
            const auto names = ex::figure_names();
            if (std::find(names.begin(), names.end(), figure) == names.end()) {
                std::cerr << "error: unknown figure '" << figure << "'\n";
                return kUsageError;
            }
            list_files(ex::run_figure(figure, ex::output_dir(out_dir), workers));
        }
    } catch (const purcell::core::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
