#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace locstat::stats {

struct TestThresholds {
    double r2_min = 0.99;
    double ks_max = 0.05;
    double cf_gap_max = 0.05;
    double significance = 0.01;
    double wegner_ratio_lo = 0.8;
    double wegner_ratio_hi = 1.2;
    double confidence = 0.95;

    nlohmann::json to_json() const;
    static TestThresholds from_json(const nlohmann::json& j);
};

// Outcome of one statistical check, serialized into the aggregate report.
struct TestReport {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> bound_ratio;
    std::optional<std::pair<double, double>> ci;
    long sample_size = 0;
    std::string verdict = "undefined";  // pass | fail | undefined
    double significance = 0.01;
    nlohmann::json details = nlohmann::json::object();
    // provenance, filled by the harness
    std::string config_hash;
    std::uint64_t seed = 0;

    bool passed() const { return verdict == "pass"; }
    nlohmann::json to_json() const;
    static TestReport from_json(const nlohmann::json& j);
};

// Characteristic function of Poisson(lambda): exp((e^{it} - 1) lambda).
std::complex<double> theoretical_poisson_cf(double t, double lambda);

// Chi-squared goodness of fit of integer counts against Poisson(lambda);
// adjacent bins pooled until every expected count reaches 5.
TestReport poisson_test(std::span<const long> counts, double lambda, const TestThresholds& cfg = {});

// One-sample KS of gaps against Exponential(lambda).
TestReport poisson_test(std::span<const double> gaps, double lambda, const TestThresholds& cfg = {});

struct CfGrid {
    double t_min = -3.0;
    double t_max = 3.0;
    double step = 0.5;
    std::vector<double> points() const;
};

struct CfFactorization {
    std::vector<double> grid;
    std::vector<std::complex<double>> joint;      // row-major over grid x grid
    std::vector<std::complex<double>> marginal1;  // over grid
    std::vector<std::complex<double>> marginal2;
    double gap = 0.0;  // max |joint - marginal1*marginal2| over the grid
    std::optional<std::pair<double, double>> gap_bootstrap_ci;
    // max |joint - product of theoretical Poisson CFs| when intensities given
    std::optional<double> theory_gap;
};

CfFactorization empirical_cf_factorization(
    std::span<const long> n1, std::span<const long> n2, const CfGrid& grid,
    std::optional<std::pair<double, double>> theory_lambdas = std::nullopt, int bootstrap_resamples = 0,
    std::uint64_t bootstrap_seed = 0);

// Pearson chi-squared independence test on the pooled contingency table.
TestReport contingency_independence_test(std::span<const long> n1, std::span<const long> n2,
                                         const TestThresholds& cfg = {});

// Combined verdict: correlation CI covers 0, contingency p above the
// significance level, CF factorization gap below threshold.
TestReport independence_test(std::span<const long> n1, std::span<const long> n2,
                             const TestThresholds& cfg = {}, const CfGrid& grid = {});

// Expected per-block count versus window length; no-intercept regression
// since a zero-length window counts nothing.
TestReport wegner_check(std::span<const double> lengths,
                        const std::vector<std::vector<double>>& per_trial_mean_per_block,
                        long n_blocks, double n_hat, const TestThresholds& cfg = {});

struct LadderLevel {
    long side = 0;
    long n_blocks = 0;
    std::vector<double> per_trial_sum;  // sum over blocks of 1{count >= 2}
};

// Sum over blocks of P(two or more eigenvalues in the window), across sizes;
// passes when the sums do not increase along the ladder beyond CI overlap.
TestReport minami_check(std::span<const LadderLevel> levels, double window_length,
                        const TestThresholds& cfg = {});

struct DecorrelationLevel {
    long side = 0;
    long n_blocks = 0;
    std::vector<double> both_ge1_per_trial;   // sum over blocks of 1{A>=1 and B>=1}
    std::vector<double> union_ge2_per_trial;  // sum over blocks of 1{A or B union >= 2}
    long inclusion_violations = 0;            // exact event inclusion, must stay 0
};

TestReport decorrelation_check(std::span<const DecorrelationLevel> levels,
                               const TestThresholds& cfg = {});

}  // namespace locstat::stats
