// Command-line driver for the local-statistics laboratory.
//
//   locstat <experiment> [--config cfg.json] [--seed N] [--trials N]
//           [--threads N] [--out DIR] [--format csv,json,svg]
//
// Experiments: dos, wegner, minami, poisson, independence, decorrelate,
// green, oracle-check.  Without --config each experiment runs a built-in
// default setup in the localized 1d regime.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "locstat/experiments.hpp"
#include "locstat/kernels/sturm.hpp"

namespace {

using locstat::ExperimentConfig;

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig c;
    c.disorder_strength = 4.0;
    c.energy = 0.0;
    c.energy_prime = 1.0;
    if (experiment == "dos") {
        c.sides = {2048};
        c.trials = 200;
        c.dos_bin = 0.25;
        c.subcubes = false;
    } else if (experiment == "wegner") {
        c.sides = {2048};
        c.ell = 64;
        c.trials = 500;
        c.wegner_lengths = {0.5, 1.0, 2.0, 4.0};
        c.window_a = {{-0.5, 0.5}};
        c.window_b = {{-0.5, 0.5}};
    } else if (experiment == "minami") {
        c.sides = {512, 1024, 2048};
        c.ell = 64;
        c.trials = 2000;
        c.window_a = {{-0.5, 0.5}};
        c.window_b = {{-0.5, 0.5}};
    } else if (experiment == "poisson") {
        c.sides = {2048};
        c.ell = 64;
        c.trials = 1000;
        c.window_a = {{-5.0, 5.0}};
        c.window_b = {{-5.0, 5.0}};
        c.collect_points = true;
    } else if (experiment == "independence") {
        c.sides = {2048};
        c.ell = 64;
        c.trials = 2000;
        c.window_a = {{-2.0, 2.0}};
        c.window_b = {{-2.0, 2.0}};
    } else if (experiment == "decorrelate") {
        c.sides = {512, 1024, 2048};
        c.ell = 64;
        c.trials = 2000;
        c.window_a = {{-2.0, 2.0}};
        c.window_b = {{-2.0, 2.0}};
    } else if (experiment == "green") {
        c.sides = {128};
        c.trials = 500;
        c.subcubes = false;
    }
    return c;
}

std::vector<std::string> split_formats(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local eigenvalue statistics laboratory for random operators"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", format = "csv,json";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;
    int threads = 1;

    const std::vector<std::pair<std::string, std::string>> experiments = {
        {"dos", "density of states at the configured energies"},
        {"wegner", "expected per-block count versus window length"},
        {"minami", "two-level probabilities along the size ladder"},
        {"poisson", "count and gap statistics against the Poisson null"},
        {"independence", "joint statistics at two energies"},
        {"decorrelate", "joint small-window occupation sums along the ladder"},
        {"green", "fractional-moment decay of resolvent entries"}};
    std::vector<CLI::App*> subs;
    for (const auto& [name, blurb] : experiments) subs.push_back(app.add_subcommand(name, blurb));
    CLI::App* oracle = app.add_subcommand("oracle-check", "counting engine vs dense oracle");
    long oracle_instances = 500;
    long oracle_max_size = 200;
    oracle->add_option("--instances", oracle_instances, "random instances to test");
    oracle->add_option("--max-size", oracle_max_size, "largest matrix size");

    for (CLI::App* sub : subs) {
        sub->add_option("--config", config_path, "experiment config JSON");
        sub->add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--trials", trials, "override trial count");
        sub->add_option("--threads", threads, "worker threads");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "comma list of csv,json,svg");
    }
    oracle->add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "oracle-check") {
            const auto outcome = locstat::run_oracle_check(seed_set ? seed : 20240101ULL,
                                                           oracle_instances, oracle_max_size);
            const auto& t = outcome.report.tests.front();
            std::printf("%s %s: mismatches=%ld backend=%s\n",
                        t.passed() ? "PASS" : "FAIL", t.name.c_str(),
                        static_cast<long>(t.statistic),
                        t.details["kernel_backend"].get<std::string>().c_str());
            return t.passed() ? 0 : 1;
        }

        ExperimentConfig cfg = default_config(name);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                std::fprintf(stderr, "cannot read config %s\n", config_path.c_str());
                return 2;
            }
            nlohmann::json j;
            f >> j;
            cfg = ExperimentConfig::from_json(j);
        }
        if (seed_set) cfg.master_seed = seed;
        if (trials > 0) cfg.trials = trials;
        cfg.threads = threads;
        cfg.out_dir = out_dir;
        cfg.formats = split_formats(format);
        cfg.validate();

        const auto outcome = locstat::run_experiment(name, cfg);
        const auto written = locstat::emit_report(outcome.report, cfg, outcome.levels,
                                                  outcome.figures, out_dir, cfg.formats);
        std::printf("experiment=%s backend=%s hash=%s\n", name.c_str(),
                    locstat::kernels::backend_name(locstat::kernels::active_backend()).c_str(),
                    outcome.report.config_hash.c_str());
        for (const auto& t : outcome.report.tests) {
            std::printf("%s %s statistic=%.6g", t.verdict == "pass" ? "PASS" : t.verdict == "fail" ? "FAIL" : "----",
                        t.name.c_str(), t.statistic);
            if (t.p_value) std::printf(" p=%.4g", *t.p_value);
            if (t.bound_ratio) std::printf(" ratio=%.4g", *t.bound_ratio);
            std::printf("\n");
        }
        for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
        return outcome.report.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
