#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "locstat/disorder.hpp"
#include "locstat/geometry.hpp"
#include "locstat/model.hpp"
#include "locstat/stats/tests.hpp"
#include "locstat/window.hpp"

namespace locstat {

// Experiment identity.  Execution parameters (threads, output paths,
// formats) are deliberately excluded from the serialized form and the hash:
// a run is a pure function of this object plus the master seed.
struct ExperimentConfig {
    std::string flavor = "lattice";  // lattice | continuum
    int dimension = 1;
    std::vector<long> sides = {2048};  // ladder, strictly increasing
    double beta = 0.7;
    std::optional<long> ell;  // explicit block side; overrides beta
    double grid_spacing = 0.5;
    std::string bump = "indicator";
    std::string disorder_family = "uniform";
    double disorder_strength = 4.0;
    double energy = 0.0;
    double energy_prime = 1.0;
    std::vector<std::array<double, 2>> window_a = {{-2.0, 2.0}};
    std::vector<std::array<double, 2>> window_b = {{-2.0, 2.0}};
    std::vector<double> wegner_lengths;
    double dos_bin = 0.25;
    long trials = 1000;
    std::uint64_t master_seed = 1;
    std::string volume_map = "site-count";  // site-count | paper-lattice | paper-continuum
    bool collect_points = false;
    bool subcubes = true;  // build the block partition (lattice only)
    // fractional-moment probe settings (green subcommand)
    double green_s = 0.5;
    double green_eps = 1e-3;
    long green_sep_min = 5;
    long green_sep_max = 50;
    double decay_r2_min = 0.9;
    stats::TestThresholds thresholds;

    // execution only; not part of identity
    int threads = 1;
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json"};

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    std::string config_hash() const;

    DisorderSpec disorder() const;
    Window window_a_obj() const;
    Window window_b_obj() const;
    CubeSpec cube_for(long side) const;
    double volume_for(long side) const;
};

struct TrialRecord {
    long index = 0;
    std::uint64_t seed = 0;
    bool excluded = false;
    std::string exclusion_reason;
    long eta_E_A = 0;
    long eta_Ep_B = 0;
    std::vector<long> sub_a;      // per-block counts at (E, A)
    std::vector<long> sub_b;      // per-block counts at (E', B)
    std::vector<long> sub_union;  // per-block counts over the disjoint union
    long dos_count_E = 0;
    long dos_count_Ep = 0;
    std::vector<std::vector<long>> wegner_counts;  // [length][block]
    std::vector<double> points;
    std::vector<double> gaps;
    long perturbed_calls = 0;

    long zeta_a() const;
    long zeta_b() const;
};

struct EnsembleLevel {
    long side = 0;
    long ell = 0;
    long n_blocks = 1;
    double volume = 0.0;
    bool windows_disjoint = false;  // rescaled A at E versus B at E'
    long excluded = 0;
    std::vector<TrialRecord> trials;  // trial-index order
};

// Runs `trials` independent realizations at one ladder level.  Results are
// identical for any thread count: each trial owns a derived seed and a
// record slot, and aggregation happens in index order afterwards.
EnsembleLevel run_ensemble(const ExperimentConfig& config, long side);

std::uint64_t side_master_seed(std::uint64_t master, long side);

}  // namespace locstat
