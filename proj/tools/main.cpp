#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evsim/griddemo.hpp"
#include "evsim/report.hpp"
#include "evsim/runner.hpp"
#include "evsim/scenario.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::int64_t seed = -1;       // -1 keeps the config value
    int replications = 0;         // 0 keeps the config value
    std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "Scenario config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-s,--seed", opts.seed, "Override the config seed");
    cmd->add_option("-r,--replications", opts.replications, "Override the replication count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--out", opts.output_dir, "Override the output directory");
}

evsim::ScenarioConfig load_with_overrides(const CommonOpts& opts) {
    evsim::ScenarioConfig cfg = evsim::load_config(opts.config_path);
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.replications > 0) cfg.replications = opts.replications;
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EV fast-charging network simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    CLI::App* run = app.add_subcommand("run", "Simulate one scenario and write artifacts");
    add_common(run, run_opts);

    CommonOpts sweep_opts;
    std::vector<double> multipliers;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Run a demand sweep over penetration multipliers");
    add_common(sweep, sweep_opts);
    sweep->add_option("-m,--multipliers", multipliers, "Demand multipliers")
        ->required()
        ->delimiter(',');

    evsim::MmcParams mmc;
    long arrivals = 1000000;
    std::int64_t validate_seed = 42;
    CLI::App* validate =
        app.add_subcommand("validate", "Compare the simulator against M/M/c closed forms");
    validate->add_option("--lambda", mmc.lambda, "Arrivals per minute")->required();
    validate->add_option("--mu", mmc.mu, "Service rate per server per minute")->required();
    validate->add_option("--servers", mmc.servers, "Server count")->required();
    validate->add_option("--arrivals", arrivals, "Arrivals to simulate");
    validate->add_option("--seed", validate_seed, "Random seed");

    evsim::GridDemoParams demo;
    std::string demo_out = "demo.json";
    std::string demo_scheme = "none";
    std::string demo_mode = "step";
    double demo_alpha = -1.0;  // negative means the scheme default
    CLI::App* gen = app.add_subcommand("gen-demo", "Generate a synthetic grid scenario");
    gen->add_option("--out", demo_out, "Output config path");
    gen->add_option("--grid", demo.grid, "Zones per side")->check(CLI::PositiveNumber);
    gen->add_option("--zone-size", demo.zone_size_mi, "Zone edge length, miles");
    gen->add_option("--stations", demo.stations, "Station count")->check(CLI::PositiveNumber);
    gen->add_option("--chargers-min", demo.chargers_min, "Min chargers per station");
    gen->add_option("--chargers-max", demo.chargers_max, "Max chargers per station");
    gen->add_option("--base-rate", demo.base_rate_per_hour, "OD rate scale, trips/hour");
    gen->add_option("--core-boost", demo.core_boost, "Pull of the two demand poles");
    gen->add_option("--target-ratio", demo.target_ratio,
                    "Rescale demand to this demand:supply ratio");
    gen->add_option("--seed", demo.seed, "Generator seed");
    gen->add_option("--scheme", demo_scheme, "Pricing scheme for the scenario")
        ->check(CLI::IsMember({"none", "linear", "quadratic", "exponential"}));
    gen->add_option("--mode", demo_mode, "Pricing mode")
        ->check(CLI::IsMember({"step", "continuous"}));
    gen->add_option("--alpha", demo_alpha, "Pricing alpha (scheme default when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return evsim::cmd_run(load_with_overrides(run_opts), std::cout);
        if (*sweep) {
            return evsim::cmd_sweep(load_with_overrides(sweep_opts), multipliers, std::cout);
        }
        if (*validate) {
            if (validate_seed < 0) throw evsim::ConfigError("validate: seed must be >= 0");
            return evsim::cmd_validate(mmc, arrivals,
                                       static_cast<std::uint64_t>(validate_seed), std::cout);
        }
        if (*gen) {
            demo.pricing.kind = demo_scheme == "linear"      ? evsim::PriceScheme::Linear
                                : demo_scheme == "quadratic" ? evsim::PriceScheme::Quadratic
                                : demo_scheme == "exponential"
                                    ? evsim::PriceScheme::Exponential
                                    : evsim::PriceScheme::None;
            demo.pricing.mode = demo_mode == "continuous" ? evsim::PriceMode::Continuous
                                                          : evsim::PriceMode::Step;
            if (demo_alpha >= 0.0) {
                demo.pricing.alpha = demo_alpha;
            } else {
                switch (demo.pricing.kind) {
                    case evsim::PriceScheme::None: demo.pricing.alpha = 0.0; break;
                    case evsim::PriceScheme::Linear: demo.pricing.alpha = 1.0; break;
                    case evsim::PriceScheme::Quadratic: demo.pricing.alpha = 0.625; break;
                    case evsim::PriceScheme::Exponential: demo.pricing.alpha = 1.4; break;
                }
            }
            const evsim::ScenarioConfig cfg = evsim::make_grid_demo(demo);
            evsim::write_text_file(demo_out, evsim::to_json_string(cfg));
            long chargers = 0;
            for (const auto& s : cfg.stations) chargers += s.chargers;
            std::cout << "wrote " << demo_out << ": " << cfg.zones.size() << " zones, "
                      << cfg.stations.size() << " stations, " << chargers << " chargers, "
                      << cfg.od_rates.size() << " OD rates\n";
            return 0;
        }
    } catch (const evsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
