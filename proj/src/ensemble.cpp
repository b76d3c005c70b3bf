#include "locstat/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "locstat/counting.hpp"
#include "locstat/errors.hpp"
#include "locstat/rng.hpp"

namespace locstat {

using nlohmann::json;

void ExperimentConfig::validate() const {
    if (flavor != "lattice" && flavor != "continuum")
        throw ConfigError("flavor must be 'lattice' or 'continuum'");
    if (dimension < 1 || dimension > 3) throw ConfigError("dimension must be 1, 2 or 3");
    if (sides.empty()) throw ConfigError("at least one side is required");
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (sides[i] < 2) throw ConfigError("sides must be >= 2");
        if (i > 0 && sides[i] <= sides[i - 1]) throw ConfigError("side ladder must be strictly increasing");
    }
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
    if (volume_map != "site-count" && volume_map != "paper-lattice" && volume_map != "paper-continuum")
        throw ConfigError("unknown volume_map '" + volume_map + "'");
    if (flavor == "continuum" && !(grid_spacing > 0.0 && grid_spacing < 1.0))
        throw ConfigError("continuum grid spacing must lie in (0,1)");
    disorder();      // validates family and strength
    window_a_obj();  // validates intervals
    window_b_obj();
    for (double len : wegner_lengths)
        if (!(len > 0.0)) throw ConfigError("wegner window lengths must be positive");
}

json ExperimentConfig::to_json() const {
    json wa = json::array(), wb = json::array();
    for (const auto& iv : window_a) wa.push_back(json::array({iv[0], iv[1]}));
    for (const auto& iv : window_b) wb.push_back(json::array({iv[0], iv[1]}));
    json j{{"flavor", flavor},
           {"dimension", dimension},
           {"sides", sides},
           {"beta", beta},
           {"grid_spacing", grid_spacing},
           {"bump", bump},
           {"disorder_family", disorder_family},
           {"disorder_strength", disorder_strength},
           {"energy", energy},
           {"energy_prime", energy_prime},
           {"window_a", wa},
           {"window_b", wb},
           {"wegner_lengths", wegner_lengths},
           {"dos_bin", dos_bin},
           {"trials", trials},
           {"master_seed", master_seed},
           {"volume_map", volume_map},
           {"collect_points", collect_points},
           {"subcubes", subcubes},
           {"green_s", green_s},
           {"green_eps", green_eps},
           {"green_sep_min", green_sep_min},
           {"green_sep_max", green_sep_max},
           {"decay_r2_min", decay_r2_min},
           {"thresholds", thresholds.to_json()}};
    if (ell) j["ell"] = *ell;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    c.flavor = j.value("flavor", c.flavor);
    c.dimension = j.value("dimension", c.dimension);
    if (j.contains("sides")) c.sides = j["sides"].get<std::vector<long>>();
    c.beta = j.value("beta", c.beta);
    if (j.contains("ell") && !j["ell"].is_null()) c.ell = j["ell"].get<long>();
    c.grid_spacing = j.value("grid_spacing", c.grid_spacing);
    c.bump = j.value("bump", c.bump);
    c.disorder_family = j.value("disorder_family", c.disorder_family);
    c.disorder_strength = j.value("disorder_strength", c.disorder_strength);
    c.energy = j.value("energy", c.energy);
    c.energy_prime = j.value("energy_prime", c.energy_prime);
    auto read_window = [&](const char* key, std::vector<std::array<double, 2>>& out) {
        if (!j.contains(key)) return;
        out.clear();
        for (const auto& iv : j[key]) out.push_back({iv[0].get<double>(), iv[1].get<double>()});
    };
    read_window("window_a", c.window_a);
    read_window("window_b", c.window_b);
    if (j.contains("wegner_lengths")) c.wegner_lengths = j["wegner_lengths"].get<std::vector<double>>();
    c.dos_bin = j.value("dos_bin", c.dos_bin);
    c.trials = j.value("trials", c.trials);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.volume_map = j.value("volume_map", c.volume_map);
    c.collect_points = j.value("collect_points", c.collect_points);
    c.subcubes = j.value("subcubes", c.subcubes);
    c.green_s = j.value("green_s", c.green_s);
    c.green_eps = j.value("green_eps", c.green_eps);
    c.green_sep_min = j.value("green_sep_min", c.green_sep_min);
    c.green_sep_max = j.value("green_sep_max", c.green_sep_max);
    c.decay_r2_min = j.value("decay_r2_min", c.decay_r2_min);
    if (j.contains("thresholds")) c.thresholds = stats::TestThresholds::from_json(j["thresholds"]);
    return c;
}

std::string ExperimentConfig::config_hash() const {
    const std::string dump = to_json().dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

DisorderSpec ExperimentConfig::disorder() const {
    if (disorder_family == "uniform") return DisorderSpec::uniform(disorder_strength);
    throw ConfigError("unsupported disorder family '" + disorder_family + "'");
}

namespace {

Window to_window(const std::vector<std::array<double, 2>>& ivs) {
    std::vector<Interval> parts;
    parts.reserve(ivs.size());
    for (const auto& iv : ivs) parts.push_back({iv[0], iv[1]});
    return Window::from_intervals(std::move(parts));
}

}  // namespace

Window ExperimentConfig::window_a_obj() const { return to_window(window_a); }
Window ExperimentConfig::window_b_obj() const { return to_window(window_b); }

CubeSpec ExperimentConfig::cube_for(long side) const {
    if (flavor == "lattice") {
        if (side % 2 != 0) throw ConfigError("lattice sides must be even (side = 2L)");
        return CubeSpec::lattice(dimension, side / 2);
    }
    return CubeSpec::continuum(dimension, side, grid_spacing);
}

double ExperimentConfig::volume_for(long side) const {
    const double s = static_cast<double>(side);
    if (volume_map == "site-count")
        return std::pow(s, dimension);  // site count (lattice) or box volume (continuum)
    if (volume_map == "paper-lattice") return std::pow(s / 2.0, dimension);
    return s;  // paper-continuum: literal L^{-1} window scaling
}

long TrialRecord::zeta_a() const {
    long z = 0;
    for (long v : sub_a) z += v;
    return z;
}

long TrialRecord::zeta_b() const {
    long z = 0;
    for (long v : sub_b) z += v;
    return z;
}

std::uint64_t side_master_seed(std::uint64_t master, long side) {
    return derive_trial_seed(master, static_cast<std::uint64_t>(side));
}

namespace {

struct LevelPlan {
    CubeSpec cube;
    SubcubePartition partition;  // empty when subcubes disabled
    bool have_partition = false;
    double volume = 0.0;
    Window win_a, win_b;
    Window resc_a, resc_b;  // absolute-energy windows
    std::optional<Window> resc_union;
    std::vector<Window> wegner_windows;  // rescaled at E
    Interval dos_iv_E, dos_iv_Ep;
};

LevelPlan make_plan(const ExperimentConfig& cfg, long side) {
    LevelPlan plan;
    plan.cube = cfg.cube_for(side);
    plan.volume = cfg.volume_for(side);
    plan.win_a = cfg.window_a_obj();
    plan.win_b = cfg.window_b_obj();
    plan.resc_a = rescale_window(plan.win_a, cfg.energy, plan.volume);
    plan.resc_b = rescale_window(plan.win_b, cfg.energy_prime, plan.volume);
    plan.resc_union = Window::disjoint_union(plan.resc_a, plan.resc_b);
    if (cfg.subcubes && cfg.flavor == "lattice") {
        plan.partition = cfg.ell ? partition_subcubes_with_side(plan.cube, *cfg.ell)
                                 : partition_subcubes(plan.cube, cfg.beta);
        plan.have_partition = true;
    }
    for (double len : cfg.wegner_lengths)
        plan.wegner_windows.push_back(
            rescale_window(Window::of(-len / 2.0, len / 2.0), cfg.energy, plan.volume));
    plan.dos_iv_E = {cfg.energy - cfg.dos_bin / 2.0, cfg.energy + cfg.dos_bin / 2.0};
    plan.dos_iv_Ep = {cfg.energy_prime - cfg.dos_bin / 2.0, cfg.energy_prime + cfg.dos_bin / 2.0};
    return plan;
}

// All interval endpoints of one matrix in a single batched pass.
std::vector<long> batched_interval_counts(const InertiaCounter& counter,
                                          const std::vector<Interval>& intervals) {
    std::vector<double> thresholds;
    thresholds.reserve(2 * intervals.size());
    for (const Interval& iv : intervals) {
        thresholds.push_back(iv.lo);
        thresholds.push_back(iv.hi);
    }
    std::vector<long> at(thresholds.size(), 0);
    counter.count_leq_batch(thresholds, at);
    std::vector<long> counts(intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i) counts[i] = at[2 * i + 1] - at[2 * i];
    return counts;
}

long window_count_from(const std::vector<long>& interval_counts, std::size_t& cursor,
                       const Window& w) {
    long total = 0;
    for (std::size_t i = 0; i < w.intervals().size(); ++i) total += interval_counts[cursor++];
    return total;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const LevelPlan& plan, long index,
                      std::uint64_t seed) {
    TrialRecord rec;
    rec.index = index;
    rec.seed = seed;

    const auto potential = sample_potential(cfg.disorder(), plan.cube, seed);
    const OperatorMatrix h = cfg.flavor == "lattice"
                                 ? build_lattice_hamiltonian(plan.cube, potential)
                                 : build_continuum_hamiltonian(plan.cube, BumpProfile::parse(cfg.bump),
                                                               potential);

    InertiaCounter counter(h);
    {
        std::vector<Interval> ivs;
        for (const Interval& iv : plan.resc_a.intervals()) ivs.push_back(iv);
        for (const Interval& iv : plan.resc_b.intervals()) ivs.push_back(iv);
        ivs.push_back(plan.dos_iv_E);
        ivs.push_back(plan.dos_iv_Ep);
        const auto counts = batched_interval_counts(counter, ivs);
        std::size_t cursor = 0;
        rec.eta_E_A = window_count_from(counts, cursor, plan.resc_a);
        rec.eta_Ep_B = window_count_from(counts, cursor, plan.resc_b);
        rec.dos_count_E = counts[cursor++];
        rec.dos_count_Ep = counts[cursor++];
    }

    if (cfg.collect_points) {
        RescaledPoints pts = extract_rescaled_points(h, cfg.energy, plan.win_a, plan.volume);
        rec.points = std::move(pts.points);
        rec.gaps = std::move(pts.gaps);
    }

    if (plan.have_partition) {
        const auto blocks = build_subcube_hamiltonians(plan.cube, plan.partition, potential);
        const std::size_t nb = blocks.size();
        rec.sub_a.resize(nb);
        rec.sub_b.resize(nb);
        if (plan.resc_union) rec.sub_union.resize(nb);
        rec.wegner_counts.assign(plan.wegner_windows.size(), std::vector<long>(nb, 0));
        for (std::size_t p = 0; p < nb; ++p) {
            InertiaCounter cp(blocks[p]);
            std::vector<Interval> ivs;
            for (const Interval& iv : plan.resc_a.intervals()) ivs.push_back(iv);
            for (const Interval& iv : plan.resc_b.intervals()) ivs.push_back(iv);
            for (const Window& w : plan.wegner_windows)
                for (const Interval& iv : w.intervals()) ivs.push_back(iv);
            const auto counts = batched_interval_counts(cp, ivs);
            std::size_t cursor = 0;
            rec.sub_a[p] = window_count_from(counts, cursor, plan.resc_a);
            rec.sub_b[p] = window_count_from(counts, cursor, plan.resc_b);
            for (std::size_t wi = 0; wi < plan.wegner_windows.size(); ++wi)
                rec.wegner_counts[wi][p] = window_count_from(counts, cursor, plan.wegner_windows[wi]);
            if (plan.resc_union) {
                // Evaluated independently of sub_a/sub_b so additivity over
                // the disjoint union stays a checkable invariant downstream.
                rec.sub_union[p] = count_window(cp, *plan.resc_union);
            }
            rec.perturbed_calls += cp.diagnostics().perturbed_calls;
        }
    }
    rec.perturbed_calls += counter.diagnostics().perturbed_calls;
    return rec;
}

}  // namespace

EnsembleLevel run_ensemble(const ExperimentConfig& cfg, long side) {
    cfg.validate();
    const LevelPlan plan = make_plan(cfg, side);

    EnsembleLevel level;
    level.side = side;
    level.volume = plan.volume;
    level.windows_disjoint = plan.resc_union.has_value();
    if (plan.have_partition) {
        level.ell = plan.partition.ell;
        level.n_blocks = plan.partition.n_blocks;
    } else {
        level.ell = side;
        level.n_blocks = 1;
    }
    level.trials.resize(cfg.trials);

    const std::uint64_t side_master = side_master_seed(cfg.master_seed, side);
    std::atomic<long> next{0};
    const int threads = std::max(1, cfg.threads);
    auto worker = [&] {
        while (true) {
            const long t = next.fetch_add(1);
            if (t >= cfg.trials) break;
            const std::uint64_t seed = derive_trial_seed(side_master, static_cast<std::uint64_t>(t));
            try {
                level.trials[t] = run_trial(cfg, plan, t, seed);
            } catch (const std::exception& e) {
                TrialRecord rec;
                rec.index = t;
                rec.seed = seed;
                rec.excluded = true;
                rec.exclusion_reason = e.what();
                level.trials[t] = std::move(rec);
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const TrialRecord& r : level.trials)
        if (r.excluded) ++level.excluded;
    if (level.excluded * 1000 > cfg.trials)
        throw NumericalError("excluded " + std::to_string(level.excluded) + " of " +
                             std::to_string(cfg.trials) + " trials (limit 0.1%)");
    return level;
}

}  // namespace locstat
