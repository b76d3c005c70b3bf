#include "locstat/stats/descriptive.hpp"

#include <cmath>

#include "locstat/errors.hpp"
#include "locstat/stats/special.hpp"

namespace locstat::stats {

void CompensatedSum::add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

double compensated_sum(std::span<const double> values) {
    CompensatedSum s;
    for (double v : values) s.add(v);
    return s.value();
}

double compensated_mean(std::span<const double> values) {
    if (values.empty()) throw EmptyEnsembleError("mean of an empty sample");
    return compensated_sum(values) / static_cast<double>(values.size());
}

MeanCi mean_ci(std::span<const double> values, double confidence) {
    if (values.empty()) throw EmptyEnsembleError("mean of an empty sample");
    MeanCi out;
    out.n = static_cast<long>(values.size());
    out.mean = compensated_mean(values);
    CompensatedSum sq;
    for (double v : values) sq.add((v - out.mean) * (v - out.mean));
    const double var = values.size() > 1 ? sq.value() / static_cast<double>(values.size() - 1) : 0.0;
    const double z = normal_quantile(0.5 + confidence / 2.0);
    out.half_width = z * std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InsufficientDesignError("need >= 2 design points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

LinearFit fit_line_through_origin(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw InsufficientDesignError("need >= 1 design point");
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    f.slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.slope * x[i];
        ss_res += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

Correlation pearson_correlation(std::span<const double> x, std::span<const double> y,
                                double confidence) {
    if (x.size() != y.size()) throw DimensionError("paired samples differ in length");
    if (x.size() < 4) throw InsufficientDesignError("correlation needs >= 4 pairs");
    const double n = static_cast<double>(x.size());
    double mx = compensated_mean(x), my = compensated_mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Correlation c;
    if (sxx == 0.0 || syy == 0.0) {
        c.defined = false;
        return c;
    }
    c.defined = true;
    c.r = sxy / std::sqrt(sxx * syy);
    const double r_clamped = std::clamp(c.r, -0.999999999, 0.999999999);
    const double zr = std::atanh(r_clamped);
    const double se = 1.0 / std::sqrt(n - 3.0);
    const double z = normal_quantile(0.5 + confidence / 2.0);
    c.ci_lo = std::tanh(zr - z * se);
    c.ci_hi = std::tanh(zr + z * se);
    const double stat = std::abs(zr) / se;
    c.p_value = 2.0 * (1.0 - normal_cdf(stat));
    return c;
}

}  // namespace locstat::stats
