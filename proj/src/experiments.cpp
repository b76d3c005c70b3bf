#include "locstat/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "locstat/counting.hpp"
#include "locstat/dense_oracle.hpp"
#include "locstat/errors.hpp"
#include "locstat/kernels/sturm.hpp"
#include "locstat/resolvent.hpp"
#include "locstat/rng.hpp"
#include "locstat/stats/dos.hpp"
#include "locstat/svg.hpp"

namespace locstat {

using nlohmann::json;
using stats::TestReport;

namespace {

Report base_report(const ExperimentConfig& cfg) {
    Report rep;
    rep.config_echo = cfg.to_json();
    rep.config_hash = cfg.config_hash();
    rep.master_seed = cfg.master_seed;
    return rep;
}

void stamp(Report& rep) {
    for (TestReport& t : rep.tests) {
        t.config_hash = rep.config_hash;
        t.seed = rep.master_seed;
    }
}

std::vector<const TrialRecord*> included(const EnsembleLevel& level) {
    std::vector<const TrialRecord*> out;
    out.reserve(level.trials.size());
    for (const TrialRecord& r : level.trials)
        if (!r.excluded) out.push_back(&r);
    return out;
}

stats::DosEstimate dos_at(const EnsembleLevel& level, const ExperimentConfig& cfg, bool primary) {
    std::vector<long> counts;
    for (const TrialRecord* r : included(level))
        counts.push_back(primary ? r->dos_count_E : r->dos_count_Ep);
    return stats::dos_from_counts(counts, level.volume, cfg.dos_bin,
                                  primary ? cfg.energy : cfg.energy_prime,
                                  cfg.thresholds.confidence);
}

json dos_json(const stats::DosEstimate& d) {
    return json{{"energy", d.energy},          {"n_hat", d.n_hat},
                {"ci_half_width", d.ci_half_width}, {"trials", d.trials},
                {"bin_width", d.bin_width},    {"volume", d.volume}};
}

long total_perturbations(const EnsembleLevel& level) {
    long n = 0;
    for (const TrialRecord& r : level.trials) n += r.perturbed_calls;
    return n;
}

void note_level(Report& rep, const EnsembleLevel& level) {
    rep.extras["levels"].push_back(json{{"side", level.side},
                                        {"ell", level.ell},
                                        {"n_blocks", level.n_blocks},
                                        {"volume", level.volume},
                                        {"excluded", level.excluded},
                                        {"count_perturbations", total_perturbations(level)}});
}

}  // namespace

ExperimentOutcome run_dos_experiment(const ExperimentConfig& cfg) {
    ExperimentOutcome out;
    out.report = base_report(cfg);
    out.levels.push_back(run_ensemble(cfg, cfg.sides.back()));
    const EnsembleLevel& level = out.levels.back();
    note_level(out.report, level);
    out.report.extras["dos_E"] = dos_json(dos_at(level, cfg, true));
    out.report.extras["dos_Eprime"] = dos_json(dos_at(level, cfg, false));
    stamp(out.report);
    return out;
}

ExperimentOutcome run_wegner_experiment(const ExperimentConfig& cfg) {
    if (cfg.flavor != "lattice")
        throw ConfigError("per-block window statistics require the lattice flavor");
    if (!cfg.subcubes)
        throw ConfigError("per-block window statistics require the block partition (subcubes)");
    if (cfg.wegner_lengths.size() < 3)
        throw InsufficientDesignError("wegner experiment needs >= 3 window lengths");
    ExperimentOutcome out;
    out.report = base_report(cfg);
    out.levels.push_back(run_ensemble(cfg, cfg.sides.back()));
    const EnsembleLevel& level = out.levels.back();
    note_level(out.report, level);

    const auto recs = included(level);
    std::vector<std::vector<double>> samples(cfg.wegner_lengths.size());
    for (std::size_t li = 0; li < cfg.wegner_lengths.size(); ++li) {
        samples[li].reserve(recs.size());
        for (const TrialRecord* r : recs) {
            long sum = 0;
            for (long c : r->wegner_counts[li]) sum += c;
            samples[li].push_back(static_cast<double>(sum) / static_cast<double>(level.n_blocks));
        }
    }
    const stats::DosEstimate dos = dos_at(level, cfg, true);
    out.report.extras["dos_E"] = dos_json(dos);
    out.report.tests.push_back(stats::wegner_check(cfg.wegner_lengths, samples, level.n_blocks,
                                                   dos.n_hat, cfg.thresholds));
    stamp(out.report);
    return out;
}

ExperimentOutcome run_minami_experiment(const ExperimentConfig& cfg) {
    if (cfg.flavor != "lattice")
        throw ConfigError("per-block window statistics require the lattice flavor");
    if (!cfg.subcubes)
        throw ConfigError("per-block window statistics require the block partition (subcubes)");
    ExperimentOutcome out;
    out.report = base_report(cfg);
    std::vector<stats::LadderLevel> ladder;
    for (long side : cfg.sides) {
        out.levels.push_back(run_ensemble(cfg, side));
        const EnsembleLevel& level = out.levels.back();
        note_level(out.report, level);
        stats::LadderLevel ll;
        ll.side = side;
        ll.n_blocks = level.n_blocks;
        for (const TrialRecord* r : included(level)) {
            long x = 0;
            for (long c : r->sub_a)
                if (c >= 2) ++x;
            ll.per_trial_sum.push_back(static_cast<double>(x));
        }
        ladder.push_back(std::move(ll));
    }
    out.report.tests.push_back(
        stats::minami_check(ladder, cfg.window_a_obj().length(), cfg.thresholds));
    stamp(out.report);
    return out;
}

ExperimentOutcome run_poisson_experiment(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    c.collect_points = true;
    ExperimentOutcome out;
    out.report = base_report(c);
    out.levels.push_back(run_ensemble(c, c.sides.back()));
    const EnsembleLevel& level = out.levels.back();
    note_level(out.report, level);

    std::vector<long> counts;
    std::vector<double> gaps;
    for (const TrialRecord* r : included(level)) {
        counts.push_back(r->eta_E_A);
        gaps.insert(gaps.end(), r->gaps.begin(), r->gaps.end());
    }
    const stats::DosEstimate dos = dos_at(level, c, true);
    out.report.extras["dos_E"] = dos_json(dos);
    out.report.extras["pooled_gaps"] = gaps.size();

    const double lambda_counts = dos.n_hat * c.window_a_obj().length();
    out.report.tests.push_back(stats::poisson_test(std::span<const long>(counts), lambda_counts,
                                                   c.thresholds));
    if (!gaps.empty())
        out.report.tests.push_back(stats::poisson_test(std::span<const double>(gaps), dos.n_hat,
                                                       c.thresholds));
    out.figures.push_back({"count_histogram.svg", svg_count_histogram(counts, lambda_counts)});
    if (!gaps.empty()) out.figures.push_back({"gap_ecdf.svg", svg_gap_ecdf(gaps, dos.n_hat)});
    stamp(out.report);
    return out;
}

namespace {

json cf_json(const stats::CfFactorization& cf) {
    json j{{"gap", cf.gap}};
    if (cf.theory_gap) j["theory_product_gap"] = *cf.theory_gap;
    if (cf.gap_bootstrap_ci)
        j["gap_bootstrap_ci"] = json::array({cf.gap_bootstrap_ci->first, cf.gap_bootstrap_ci->second});
    return j;
}

std::vector<double> cf_gap_matrix(const stats::CfFactorization& cf) {
    const std::size_t g = cf.grid.size();
    std::vector<double> m(g * g, 0.0);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            m[a * g + b] = std::abs(cf.joint[a * g + b] - cf.marginal1[a] * cf.marginal2[b]);
    return m;
}

}  // namespace

ExperimentOutcome run_independence_experiment(const ExperimentConfig& cfg) {
    ExperimentOutcome out;
    out.report = base_report(cfg);
    out.levels.push_back(run_ensemble(cfg, cfg.sides.back()));
    const EnsembleLevel& level = out.levels.back();
    note_level(out.report, level);

    std::vector<long> na, nb, za, zb;
    for (const TrialRecord* r : included(level)) {
        na.push_back(r->eta_E_A);
        nb.push_back(r->eta_Ep_B);
        if (!r->sub_a.empty()) {
            za.push_back(r->zeta_a());
            zb.push_back(r->zeta_b());
        }
    }
    const stats::DosEstimate dos_e = dos_at(level, cfg, true);
    const stats::DosEstimate dos_ep = dos_at(level, cfg, false);
    out.report.extras["dos_E"] = dos_json(dos_e);
    out.report.extras["dos_Eprime"] = dos_json(dos_ep);
    const auto lambdas = std::make_pair(dos_e.n_hat * cfg.window_a_obj().length(),
                                        dos_ep.n_hat * cfg.window_b_obj().length());

    const stats::CfGrid grid;
    TestReport indep = stats::independence_test(na, nb, cfg.thresholds, grid);
    indep.name = "independence_eta";
    const auto cf = stats::empirical_cf_factorization(na, nb, grid, lambdas, 0, 0);
    indep.details["cf"] = cf_json(cf);
    out.report.tests.push_back(indep);
    out.figures.push_back({"cf_gap_heatmap.svg", svg_cf_gap_heatmap(cf.grid, cf_gap_matrix(cf))});

    if (!za.empty()) {
        // Superposed processes carry the same limit; report them alongside.
        TestReport zeta_rep = stats::independence_test(za, zb, cfg.thresholds, grid);
        zeta_rep.name = "independence_zeta";
        const auto cf_zeta = stats::empirical_cf_factorization(za, zb, grid, lambdas, 0, 0);
        zeta_rep.details["cf"] = cf_json(cf_zeta);
        out.report.tests.push_back(zeta_rep);
    }
    stamp(out.report);
    return out;
}

ExperimentOutcome run_decorrelation_experiment(const ExperimentConfig& cfg) {
    if (cfg.flavor != "lattice")
        throw ConfigError("per-block window statistics require the lattice flavor");
    if (!cfg.subcubes)
        throw ConfigError("per-block window statistics require the block partition (subcubes)");
    if (cfg.energy == cfg.energy_prime)
        throw IntervalError("decorrelation requires distinct energies (window disjointness undefined)");
    const long l0 = min_scale_for_disjointness(cfg.window_a_obj(), cfg.window_b_obj(), cfg.energy,
                                               cfg.energy_prime,
                                               [&](long s) { return cfg.volume_for(s); });
    ExperimentOutcome out;
    out.report = base_report(cfg);
    out.report.extras["min_disjoint_side"] = l0;

    std::vector<stats::DecorrelationLevel> ladder;
    for (long side : cfg.sides) {
        if (side < l0)
            throw ScaleError("side " + std::to_string(side) + " below the disjointness scale " +
                             std::to_string(l0));
        out.levels.push_back(run_ensemble(cfg, side));
        const EnsembleLevel& level = out.levels.back();
        note_level(out.report, level);
        if (!level.windows_disjoint)
            throw ScaleError("rescaled windows overlap at side " + std::to_string(side));
        stats::DecorrelationLevel dl;
        dl.side = side;
        dl.n_blocks = level.n_blocks;
        for (const TrialRecord* r : included(level)) {
            long both = 0, two = 0;
            for (std::size_t p = 0; p < r->sub_a.size(); ++p) {
                const bool b1 = r->sub_a[p] >= 1 && r->sub_b[p] >= 1;
                const bool u2 = r->sub_union[p] >= 2;
                if (b1) ++both;
                if (u2) ++two;
                if (b1 && !u2) ++dl.inclusion_violations;
            }
            dl.both_ge1_per_trial.push_back(static_cast<double>(both));
            dl.union_ge2_per_trial.push_back(static_cast<double>(two));
        }
        ladder.push_back(std::move(dl));
    }
    out.report.tests.push_back(stats::decorrelation_check(ladder, cfg.thresholds));
    stamp(out.report);
    return out;
}

ExperimentOutcome run_green_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.dimension != 1)
        throw ConfigError("the fractional-moment probe runs on d=1 models");
    ExperimentOutcome out;
    out.report = base_report(cfg);

    const CubeSpec cube = cfg.cube_for(cfg.sides.back());
    std::vector<long> seps;
    for (long s = cfg.green_sep_min; s <= cfg.green_sep_max; ++s) seps.push_back(s);

    TestReport rep;
    FractionalMomentReport fm;
    if (cfg.flavor == "lattice") {
        fm = fractional_moment_estimate(cube, cfg.disorder(), cube.index_of_site({0, 0, 0}), seps,
                                        cfg.energy, cfg.green_eps, cfg.green_s, cfg.trials,
                                        cfg.master_seed);
    } else {
        fm = fractional_moment_estimate_continuum(cube, cfg.disorder(), BumpProfile::parse(cfg.bump),
                                                  0, seps, cfg.energy, cfg.green_eps, cfg.green_s,
                                                  cfg.trials, cfg.master_seed);
        rep.details["norm_proxy"] = "max resolvent entry between the grid points of the two cells";
    }

    rep.name = "fractional_moment_decay";
    rep.sample_size = cfg.trials;
    rep.significance = cfg.thresholds.significance;
    rep.statistic = fm.fit.slope;
    rep.details["r_squared"] = fm.fit.r_squared;
    rep.details["r2_min"] = cfg.decay_r2_min;
    rep.details["s"] = cfg.green_s;
    rep.details["eps"] = cfg.green_eps;
    rep.details["separations"] = fm.separations;
    rep.details["mean_abs_g_s"] = fm.mean_abs_g_s;
    rep.details["ci_half_widths"] = fm.ci_half_width;
    rep.verdict = (fm.fit.slope < 0.0 && fm.fit.r_squared >= cfg.decay_r2_min) ? "pass" : "fail";
    out.report.tests.push_back(rep);
    out.figures.push_back({"decay_fit.svg", svg_decay_fit(fm.separations, fm.mean_abs_g_s, fm.fit)});
    stamp(out.report);
    return out;
}

namespace {

OperatorMatrix random_instance(TrialRng& rng, int kind, long max_size) {
    if (kind == 0) {
        const long max_half = max_size / 2;
        const long half = 5 + static_cast<long>(uniform_unit(rng) * static_cast<double>(max_half - 5));
        const CubeSpec cube = CubeSpec::lattice(1, half);
        std::vector<double> pot(cube.size());
        for (auto& v : pot) v = 4.0 * (uniform_unit(rng) - 0.5);
        return build_lattice_hamiltonian(cube, pot);
    }
    if (kind == 1) {
        const long max_half = std::max<long>(2, static_cast<long>(std::sqrt(static_cast<double>(max_size))) / 2);
        const long half = 2 + static_cast<long>(uniform_unit(rng) * static_cast<double>(max_half - 1));
        const CubeSpec cube = CubeSpec::lattice(2, std::min(half, max_half));
        std::vector<double> pot(cube.size());
        for (auto& v : pot) v = 4.0 * (uniform_unit(rng) - 0.5);
        return build_lattice_hamiltonian(cube, pot);
    }
    // Dense symmetric with uniform entries.
    const long n = 10 + static_cast<long>(uniform_unit(rng) * 40.0);
    std::vector<double> diag(n);
    for (auto& v : diag) v = 2.0 * (uniform_unit(rng) - 0.5);
    std::vector<OperatorMatrix::Band> bands;
    for (long off = 1; off < n; ++off) {
        OperatorMatrix::Band b;
        b.offset = off;
        b.values.resize(n - off);
        for (auto& v : b.values) v = 2.0 * (uniform_unit(rng) - 0.5) / std::sqrt(static_cast<double>(n));
        bands.push_back(std::move(b));
    }
    return OperatorMatrix(std::move(diag), std::move(bands));
}

}  // namespace

ExperimentOutcome run_oracle_check(std::uint64_t seed, long instances, long max_size) {
    ExperimentOutcome out;
    Report rep;
    rep.config_echo = json{{"experiment", "oracle-check"},
                           {"instances", instances},
                           {"max_size", max_size},
                           {"seed", seed}};
    rep.master_seed = seed;
    rep.config_hash = "oracle";

    TrialRng rng(seed);
    long count_mismatches = 0, interval_mismatches = 0, eig_mismatches = 0;
    long thresholds_checked = 0, eigs_checked = 0;
    double max_eig_err = 0.0;
    for (long i = 0; i < instances; ++i) {
        const OperatorMatrix h = random_instance(rng, static_cast<int>(i % 3), max_size);
        const auto oracle = dense_spectrum(h, max_size);
        const auto [glo, ghi] = h.gershgorin_interval();
        InertiaCounter counter(h);
        for (int k = 0; k < 20; ++k) {
            const double a = glo - 0.5 + uniform_unit(rng) * (ghi - glo + 1.0);
            const long mine = counter.count_leq(a);
            const long ref = static_cast<long>(
                std::upper_bound(oracle.begin(), oracle.end(), a) - oracle.begin());
            if (mine != ref) ++count_mismatches;
            ++thresholds_checked;
        }
        for (int k = 0; k < 10; ++k) {
            double a = glo - 0.5 + uniform_unit(rng) * (ghi - glo + 1.0);
            double b = glo - 0.5 + uniform_unit(rng) * (ghi - glo + 1.0);
            if (a > b) std::swap(a, b);
            const long mine = counter.count_in({a, b});
            const long ref = static_cast<long>(
                std::upper_bound(oracle.begin(), oracle.end(), b) -
                std::upper_bound(oracle.begin(), oracle.end(), a));
            if (mine != ref) ++interval_mismatches;
        }
        // Locate every eigenvalue in a random sub-interval.
        {
            const double span = ghi - glo;
            double a = glo - 0.25 * span + uniform_unit(rng) * span;
            double b = a + uniform_unit(rng) * span;
            const auto mine = eigenvalues_in(counter, {a, b}, 1e-11 * std::max(1.0, h.inf_norm()));
            std::vector<double> ref;
            for (double ev : oracle)
                if (ev > a && ev <= b) ref.push_back(ev);
            if (mine.size() != ref.size()) {
                ++eig_mismatches;
            } else {
                for (std::size_t j = 0; j < mine.size(); ++j) {
                    const double err = std::abs(mine[j] - ref[j]);
                    max_eig_err = std::max(max_eig_err, err);
                    if (err > 1e-9) ++eig_mismatches;
                }
                eigs_checked += static_cast<long>(mine.size());
            }
        }
    }

    TestReport t;
    t.name = "oracle_equivalence";
    t.sample_size = instances;
    t.statistic = static_cast<double>(count_mismatches + interval_mismatches + eig_mismatches);
    t.details["count_mismatches"] = count_mismatches;
    t.details["interval_mismatches"] = interval_mismatches;
    t.details["eigenvalue_mismatches"] = eig_mismatches;
    t.details["thresholds_checked"] = thresholds_checked;
    t.details["eigenvalues_checked"] = eigs_checked;
    t.details["max_eigenvalue_error"] = max_eig_err;
    t.details["kernel_backend"] = kernels::backend_name(kernels::active_backend());
    t.verdict = (count_mismatches + interval_mismatches + eig_mismatches) == 0 ? "pass" : "fail";
    t.seed = seed;
    t.config_hash = rep.config_hash;
    rep.tests.push_back(t);
    out.report = std::move(rep);
    return out;
}

ExperimentOutcome run_experiment(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "dos") return run_dos_experiment(cfg);
    if (name == "wegner") return run_wegner_experiment(cfg);
    if (name == "minami") return run_minami_experiment(cfg);
    if (name == "poisson") return run_poisson_experiment(cfg);
    if (name == "independence") return run_independence_experiment(cfg);
    if (name == "decorrelate") return run_decorrelation_experiment(cfg);
    if (name == "green") return run_green_experiment(cfg);
    throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace locstat
