#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "locstat/ensemble.hpp"
#include "locstat/stats/tests.hpp"

namespace locstat {

inline constexpr const char* kVersion = "0.1.0";

struct Report {
    nlohmann::json config_echo;
    std::string config_hash;
    std::uint64_t master_seed = 0;
    std::string version = kVersion;
    std::vector<stats::TestReport> tests;
    nlohmann::json extras = nlohmann::json::object();

    bool all_passed() const;
    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

// CSV schema (one row per trial and ladder level):
//   trial,seed,L,ell,n_L,V,E,Eprime,eta_E_A,eta_Eprime_B,zeta_E_A,
//   zeta_Eprime_B,subcube_counts,excluded
// subcube_counts is a quoted "a:...;b:..." list of the per-block counts.
std::string trials_csv(const ExperimentConfig& config, const std::vector<EnsembleLevel>& levels);

// Writes report.json (always), trials.csv when "csv" is requested, and the
// figures registered in `figures` when "svg" is requested.  Returns the
// paths written.
struct FigurePayload {
    std::string filename;
    std::string svg;
};

std::vector<std::string> emit_report(const Report& report, const ExperimentConfig& config,
                                     const std::vector<EnsembleLevel>& levels,
                                     const std::vector<FigurePayload>& figures,
                                     const std::string& out_dir,
                                     const std::vector<std::string>& formats);

}  // namespace locstat
