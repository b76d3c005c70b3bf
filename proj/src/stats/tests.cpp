#include "locstat/stats/tests.hpp"

#include <algorithm>
#include <cmath>

#include "locstat/errors.hpp"
#include "locstat/rng.hpp"
#include "locstat/stats/descriptive.hpp"
#include "locstat/stats/special.hpp"

namespace locstat::stats {

using nlohmann::json;

json TestThresholds::to_json() const {
    return json{{"r2_min", r2_min},
                {"ks_max", ks_max},
                {"cf_gap_max", cf_gap_max},
                {"significance", significance},
                {"wegner_ratio_lo", wegner_ratio_lo},
                {"wegner_ratio_hi", wegner_ratio_hi},
                {"confidence", confidence}};
}

TestThresholds TestThresholds::from_json(const json& j) {
    TestThresholds t;
    t.r2_min = j.value("r2_min", t.r2_min);
    t.ks_max = j.value("ks_max", t.ks_max);
    t.cf_gap_max = j.value("cf_gap_max", t.cf_gap_max);
    t.significance = j.value("significance", t.significance);
    t.wegner_ratio_lo = j.value("wegner_ratio_lo", t.wegner_ratio_lo);
    t.wegner_ratio_hi = j.value("wegner_ratio_hi", t.wegner_ratio_hi);
    t.confidence = j.value("confidence", t.confidence);
    return t;
}

json TestReport::to_json() const {
    json j{{"name", name},
           {"statistic", statistic},
           {"sample_size", sample_size},
           {"verdict", verdict},
           {"significance", significance},
           {"details", details},
           {"config_hash", config_hash},
           {"seed", seed}};
    if (p_value) j["p_value"] = *p_value;
    if (bound_ratio) j["bound_ratio"] = *bound_ratio;
    if (ci) j["ci"] = json::array({ci->first, ci->second});
    return j;
}

TestReport TestReport::from_json(const json& j) {
    TestReport r;
    r.name = j.at("name").get<std::string>();
    r.statistic = j.at("statistic").get<double>();
    r.sample_size = j.at("sample_size").get<long>();
    r.verdict = j.at("verdict").get<std::string>();
    r.significance = j.at("significance").get<double>();
    r.details = j.value("details", json::object());
    r.config_hash = j.value("config_hash", "");
    r.seed = j.value("seed", 0ULL);
    if (j.contains("p_value")) r.p_value = j["p_value"].get<double>();
    if (j.contains("bound_ratio")) r.bound_ratio = j["bound_ratio"].get<double>();
    if (j.contains("ci")) r.ci = std::make_pair(j["ci"][0].get<double>(), j["ci"][1].get<double>());
    return r;
}

std::complex<double> theoretical_poisson_cf(double t, double lambda) {
    if (lambda < 0.0) throw ConfigError("Poisson intensity must be nonnegative");
    const std::complex<double> i(0.0, 1.0);
    return std::exp((std::exp(i * t) - 1.0) * lambda);
}

namespace {

// Pool Poisson(lambda) cells from k = 0 upward until each bin's expectation
// reaches 5; the final bin absorbs the tail.
struct PooledBins {
    std::vector<double> expected;
    std::vector<double> observed;
};

PooledBins pool_poisson_bins(std::span<const long> counts, double lambda) {
    const double n = static_cast<double>(counts.size());
    long kmax = 0;
    for (long c : counts) kmax = std::max(kmax, c);

    std::vector<double> hist(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (long c : counts) hist[c] += 1.0;

    PooledBins bins;
    double acc_exp = 0.0, acc_obs = 0.0, cum_p = 0.0;
    for (long k = 0; k <= kmax; ++k) {
        const double p = poisson_pmf(k, lambda);
        cum_p += p;
        acc_exp += n * p;
        acc_obs += hist[k];
        if (acc_exp >= 5.0) {
            bins.expected.push_back(acc_exp);
            bins.observed.push_back(acc_obs);
            acc_exp = acc_obs = 0.0;
        }
    }
    // Tail beyond kmax plus any unfinished accumulator.
    acc_exp += n * std::max(0.0, 1.0 - cum_p);
    if (bins.expected.empty() || acc_exp >= 5.0 || acc_obs > 0.0) {
        bins.expected.push_back(acc_exp);
        bins.observed.push_back(acc_obs);
    } else {
        bins.expected.back() += acc_exp;
        bins.observed.back() += acc_obs;
    }
    // A minuscule leading-or-trailing bin can still sneak through; merge it.
    while (bins.expected.size() > 1 && bins.expected.back() < 5.0) {
        bins.expected[bins.expected.size() - 2] += bins.expected.back();
        bins.observed[bins.observed.size() - 2] += bins.observed.back();
        bins.expected.pop_back();
        bins.observed.pop_back();
    }
    return bins;
}

}  // namespace

TestReport poisson_test(std::span<const long> counts, double lambda, const TestThresholds& cfg) {
    if (counts.empty()) throw EmptyEnsembleError("poisson_test on an empty count sample");
    if (!(lambda > 0.0)) throw ConfigError("poisson_test needs lambda > 0");
    TestReport rep;
    rep.name = "poisson_counts_chi_squared";
    rep.sample_size = static_cast<long>(counts.size());
    rep.significance = cfg.significance;

    const PooledBins bins = pool_poisson_bins(counts, lambda);
    const std::size_t k = bins.expected.size();
    double x2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = bins.observed[i] - bins.expected[i];
        x2 += d * d / bins.expected[i];
    }
    rep.statistic = x2;
    if (k < 2) {
        rep.verdict = "undefined";
        rep.details["reason"] = "fewer than two bins after pooling";
        return rep;
    }
    const double dof = static_cast<double>(k - 1);
    rep.p_value = chi_squared_sf(x2, dof);
    rep.verdict = *rep.p_value > cfg.significance ? "pass" : "fail";
    rep.details["dof"] = dof;
    rep.details["bins"] = k;
    rep.details["lambda"] = lambda;
    return rep;
}

TestReport poisson_test(std::span<const double> gaps, double lambda, const TestThresholds& cfg) {
    if (gaps.empty()) throw EmptyEnsembleError("poisson_test on an empty gap sample");
    if (!(lambda > 0.0)) throw ConfigError("poisson_test needs lambda > 0");
    TestReport rep;
    rep.name = "gaps_ks_exponential";
    rep.sample_size = static_cast<long>(gaps.size());
    rep.significance = cfg.significance;

    std::vector<double> sorted(gaps.begin(), gaps.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = 1.0 - std::exp(-lambda * sorted[i]);
        dist = std::max(dist, std::max(f - static_cast<double>(i) / n,
                                       static_cast<double>(i + 1) / n - f));
    }
    rep.statistic = dist;
    rep.p_value = ks_p_value(dist, sorted.size());
    rep.verdict = dist <= cfg.ks_max ? "pass" : "fail";
    rep.details["lambda"] = lambda;
    rep.details["ks_max"] = cfg.ks_max;
    return rep;
}

std::vector<double> CfGrid::points() const {
    std::vector<double> pts;
    if (!(step > 0.0)) throw ConfigError("CF grid step must be positive");
    for (double t = t_min; t <= t_max + 1e-12; t += step) pts.push_back(t);
    if (pts.empty()) throw ConfigError("CF grid is empty");
    return pts;
}

namespace {

struct CfTables {
    std::vector<std::complex<double>> joint, m1, m2;
};

// One pass over the pairs; exp(i t k) evaluated via per-sample powers of
// exp(i step) would drift, so values are computed directly (grids are small).
CfTables cf_tables(std::span<const long> n1, std::span<const long> n2,
                   std::span<const double> pts) {
    const std::size_t g = pts.size();
    CfTables t;
    t.joint.assign(g * g, {0.0, 0.0});
    t.m1.assign(g, {0.0, 0.0});
    t.m2.assign(g, {0.0, 0.0});
    std::vector<std::complex<double>> e1(g), e2(g);
    const std::complex<double> i(0.0, 1.0);
    for (std::size_t s = 0; s < n1.size(); ++s) {
        for (std::size_t a = 0; a < g; ++a) {
            e1[a] = std::exp(i * (pts[a] * static_cast<double>(n1[s])));
            e2[a] = std::exp(i * (pts[a] * static_cast<double>(n2[s])));
            t.m1[a] += e1[a];
            t.m2[a] += e2[a];
        }
        for (std::size_t a = 0; a < g; ++a)
            for (std::size_t b = 0; b < g; ++b) t.joint[a * g + b] += e1[a] * e2[b];
    }
    // Plain division keeps phi(0) = 1 exactly (the sums there are integers).
    const double n = static_cast<double>(n1.size());
    for (auto& v : t.joint) v /= n;
    for (auto& v : t.m1) v /= n;
    for (auto& v : t.m2) v /= n;
    return t;
}

double cf_gap_of(const CfTables& t, std::size_t g) {
    double gap = 0.0;
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
            gap = std::max(gap, std::abs(t.joint[a * g + b] - t.m1[a] * t.m2[b]));
    return gap;
}

}  // namespace

CfFactorization empirical_cf_factorization(std::span<const long> n1, std::span<const long> n2,
                                           const CfGrid& grid,
                                           std::optional<std::pair<double, double>> theory_lambdas,
                                           int bootstrap_resamples, std::uint64_t bootstrap_seed) {
    if (n1.empty() || n1.size() != n2.size())
        throw EmptyEnsembleError("CF factorization needs a nonempty paired sample");
    CfFactorization out;
    out.grid = grid.points();
    const std::size_t g = out.grid.size();

    CfTables t = cf_tables(n1, n2, out.grid);
    out.joint = t.joint;
    out.marginal1 = t.m1;
    out.marginal2 = t.m2;
    out.gap = cf_gap_of(t, g);

    if (theory_lambdas) {
        double tg = 0.0;
        for (std::size_t a = 0; a < g; ++a) {
            const auto cf1 = theoretical_poisson_cf(out.grid[a], theory_lambdas->first);
            for (std::size_t b = 0; b < g; ++b) {
                const auto cf2 = theoretical_poisson_cf(out.grid[b], theory_lambdas->second);
                tg = std::max(tg, std::abs(out.joint[a * g + b] - cf1 * cf2));
            }
        }
        out.theory_gap = tg;
    }

    if (bootstrap_resamples > 0) {
        TrialRng rng(bootstrap_seed);
        std::vector<double> gaps;
        gaps.reserve(bootstrap_resamples);
        std::vector<long> r1(n1.size()), r2(n2.size());
        for (int rep = 0; rep < bootstrap_resamples; ++rep) {
            for (std::size_t s = 0; s < n1.size(); ++s) {
                const std::size_t pick = static_cast<std::size_t>(uniform_unit(rng) * n1.size());
                r1[s] = n1[std::min(pick, n1.size() - 1)];
                r2[s] = n2[std::min(pick, n2.size() - 1)];
            }
            gaps.push_back(cf_gap_of(cf_tables(r1, r2, out.grid), g));
        }
        std::sort(gaps.begin(), gaps.end());
        const auto q = [&](double p) {
            const std::size_t idx = static_cast<std::size_t>(p * (gaps.size() - 1));
            return gaps[idx];
        };
        out.gap_bootstrap_ci = std::make_pair(q(0.025), q(0.975));
    }
    return out;
}

namespace {

// Tail-pool a contingency table until every expected cell reaches 5 (or the
// table is down to 2x2).
void pool_contingency(std::vector<std::vector<double>>& table) {
    auto rows = [&] { return table.size(); };
    auto cols = [&] { return table[0].size(); };
    while (true) {
        const std::size_t r = rows(), c = cols();
        std::vector<double> rt(r, 0.0), ct(c, 0.0);
        double n = 0.0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                rt[i] += table[i][j];
                ct[j] += table[i][j];
                n += table[i][j];
            }
        double min_exp = 1e300;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) min_exp = std::min(min_exp, rt[i] * ct[j] / n);
        if (min_exp >= 5.0 || (r <= 2 && c <= 2)) return;
        // Merge the tail of the skinnier margin.
        const bool merge_row = (r > 2) && (c <= 2 || rt[r - 1] <= ct[c - 1]);
        if (merge_row) {
            for (std::size_t j = 0; j < c; ++j) table[r - 2][j] += table[r - 1][j];
            table.pop_back();
        } else {
            for (std::size_t i = 0; i < r; ++i) {
                table[i][c - 2] += table[i][c - 1];
                table[i].pop_back();
            }
        }
    }
}

}  // namespace

TestReport contingency_independence_test(std::span<const long> n1, std::span<const long> n2,
                                         const TestThresholds& cfg) {
    if (n1.empty() || n1.size() != n2.size())
        throw EmptyEnsembleError("independence test needs a nonempty paired sample");
    TestReport rep;
    rep.name = "contingency_chi_squared";
    rep.sample_size = static_cast<long>(n1.size());
    rep.significance = cfg.significance;

    long m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < n1.size(); ++i) {
        m1 = std::max(m1, n1[i]);
        m2 = std::max(m2, n2[i]);
    }
    std::vector<std::vector<double>> table(m1 + 1, std::vector<double>(m2 + 1, 0.0));
    for (std::size_t i = 0; i < n1.size(); ++i) table[n1[i]][n2[i]] += 1.0;
    pool_contingency(table);

    const std::size_t r = table.size(), c = table[0].size();
    if (r < 2 || c < 2) {
        rep.verdict = "undefined";
        rep.details["reason"] = "a margin is constant after pooling";
        return rep;
    }
    std::vector<double> rt(r, 0.0), ct(c, 0.0);
    double n = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            rt[i] += table[i][j];
            ct[j] += table[i][j];
            n += table[i][j];
        }
    double x2 = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const double e = rt[i] * ct[j] / n;
            const double d = table[i][j] - e;
            x2 += d * d / e;
        }
    rep.statistic = x2;
    const double dof = static_cast<double>((r - 1) * (c - 1));
    rep.p_value = chi_squared_sf(x2, dof);
    rep.verdict = *rep.p_value > cfg.significance ? "pass" : "fail";
    rep.details["dof"] = dof;
    rep.details["rows"] = r;
    rep.details["cols"] = c;
    return rep;
}

TestReport independence_test(std::span<const long> n1, std::span<const long> n2,
                             const TestThresholds& cfg, const CfGrid& grid) {
    if (n1.empty() || n1.size() != n2.size())
        throw EmptyEnsembleError("independence test needs a nonempty paired sample");
    TestReport rep;
    rep.name = "independence";
    rep.sample_size = static_cast<long>(n1.size());
    rep.significance = cfg.significance;

    std::vector<double> x(n1.begin(), n1.end()), y(n2.begin(), n2.end());
    const Correlation corr = pearson_correlation(x, y, cfg.confidence);
    const TestReport chi = contingency_independence_test(n1, n2, cfg);
    const CfFactorization cf = empirical_cf_factorization(n1, n2, grid);

    rep.statistic = corr.defined ? corr.r : 0.0;
    rep.details["cf_gap"] = cf.gap;
    rep.details["cf_gap_max"] = cfg.cf_gap_max;
    rep.details["contingency"] = chi.to_json();
    if (!corr.defined) {
        rep.verdict = "undefined";
        rep.details["reason"] = "correlation undefined: a margin is constant";
        return rep;
    }
    rep.ci = std::make_pair(corr.ci_lo, corr.ci_hi);
    rep.p_value = corr.p_value;
    const bool corr_ok = corr.ci_lo <= 0.0 && 0.0 <= corr.ci_hi;
    const bool chi_ok = chi.verdict != "fail";
    const bool cf_ok = cf.gap <= cfg.cf_gap_max;
    rep.details["correlation_covers_zero"] = corr_ok;
    rep.details["contingency_ok"] = chi_ok;
    rep.details["cf_ok"] = cf_ok;
    rep.verdict = (corr_ok && chi_ok && cf_ok) ? "pass" : "fail";
    return rep;
}

TestReport wegner_check(std::span<const double> lengths,
                        const std::vector<std::vector<double>>& per_trial_mean_per_block,
                        long n_blocks, double n_hat, const TestThresholds& cfg) {
    if (lengths.size() < 3) throw InsufficientDesignError("wegner_check needs >= 3 window lengths");
    if (per_trial_mean_per_block.size() != lengths.size())
        throw DimensionError("wegner_check design size mismatch");

    std::vector<double> means, half_widths;
    for (const auto& sample : per_trial_mean_per_block) {
        const MeanCi m = mean_ci(sample, cfg.confidence);
        means.push_back(m.mean);
        half_widths.push_back(m.half_width);
    }
    const LinearFit fit = fit_line_through_origin(lengths, means);
    TestReport rep;
    rep.name = "wegner_linearity";
    rep.sample_size = static_cast<long>(per_trial_mean_per_block.front().size());
    rep.significance = cfg.significance;
    rep.statistic = fit.slope;
    const double reference = n_hat / static_cast<double>(n_blocks);
    rep.bound_ratio = reference > 0.0 ? fit.slope / reference : 0.0;
    rep.details["r_squared"] = fit.r_squared;
    rep.details["r2_min"] = cfg.r2_min;
    rep.details["n_hat"] = n_hat;
    rep.details["n_blocks"] = n_blocks;
    rep.details["regression"] = "least squares through the origin";
    rep.details["lengths"] = std::vector<double>(lengths.begin(), lengths.end());
    rep.details["mean_counts"] = means;
    rep.details["ci_half_widths"] = half_widths;
    const bool all_zero = std::all_of(means.begin(), means.end(), [](double v) { return v == 0.0; });
    const bool linear = fit.r_squared >= cfg.r2_min || all_zero;
    const bool bounded = all_zero || (*rep.bound_ratio >= cfg.wegner_ratio_lo &&
                                      *rep.bound_ratio <= cfg.wegner_ratio_hi);
    rep.verdict = (linear && bounded) ? "pass" : "fail";
    return rep;
}

namespace {

// Non-increasing along the ladder, allowing CI overlap.
bool decreasing_up_to_ci(const std::vector<MeanCi>& levels) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i].mean > levels[i - 1].mean + levels[i - 1].half_width + levels[i].half_width)
            return false;
    return true;
}

}  // namespace

TestReport minami_check(std::span<const LadderLevel> levels, double window_length,
                        const TestThresholds& cfg) {
    if (levels.size() < 2) throw InsufficientDesignError("minami_check needs >= 2 system sizes");
    TestReport rep;
    rep.name = "minami_smallness";
    rep.significance = cfg.significance;

    std::vector<MeanCi> sums;
    json per_level = json::array();
    for (const LadderLevel& lv : levels) {
        const MeanCi m = mean_ci(lv.per_trial_sum, cfg.confidence);
        sums.push_back(m);
        const double scaling = window_length > 0.0
                                   ? m.mean * static_cast<double>(lv.n_blocks) / (window_length * window_length)
                                   : 0.0;
        per_level.push_back(json{{"side", lv.side},
                                 {"n_blocks", lv.n_blocks},
                                 {"sum_prob_ge2", m.mean},
                                 {"ci_half_width", m.half_width},
                                 {"scaling_constant", scaling}});
    }
    rep.sample_size = sums.front().n;
    rep.statistic = sums.back().mean;
    rep.ci = std::make_pair(sums.back().lo(), sums.back().hi());
    rep.details["levels"] = per_level;
    rep.details["window_length"] = window_length;
    rep.verdict = decreasing_up_to_ci(sums) ? "pass" : "fail";
    return rep;
}

TestReport decorrelation_check(std::span<const DecorrelationLevel> levels, const TestThresholds& cfg) {
    if (levels.empty()) throw EmptyEnsembleError("decorrelation_check needs at least one level");
    TestReport rep;
    rep.name = "decorrelation_sums";
    rep.significance = cfg.significance;

    std::vector<MeanCi> both_sums, union_sums;
    long violations = 0;
    bool dominated = true;
    json per_level = json::array();
    for (const DecorrelationLevel& lv : levels) {
        const MeanCi b = mean_ci(lv.both_ge1_per_trial, cfg.confidence);
        const MeanCi u = mean_ci(lv.union_ge2_per_trial, cfg.confidence);
        both_sums.push_back(b);
        union_sums.push_back(u);
        violations += lv.inclusion_violations;
        if (b.mean > u.mean) dominated = false;
        per_level.push_back(json{{"side", lv.side},
                                 {"n_blocks", lv.n_blocks},
                                 {"sum_prob_both_ge1", b.mean},
                                 {"both_ci_half_width", b.half_width},
                                 {"sum_prob_union_ge2", u.mean},
                                 {"union_ci_half_width", u.half_width}});
    }
    rep.sample_size = both_sums.front().n;
    rep.statistic = both_sums.back().mean;
    rep.ci = std::make_pair(both_sums.back().lo(), both_sums.back().hi());
    rep.details["levels"] = per_level;
    rep.details["inclusion_violations"] = violations;

    const bool trend_ok = levels.size() < 2 ||
                          (decreasing_up_to_ci(both_sums) && decreasing_up_to_ci(union_sums));
    rep.verdict = (violations == 0 && dominated && trend_ok) ? "pass" : "fail";
    return rep;
}

}  // namespace locstat::stats
