#pragma once

#include <span>
#include <utility>
#include <vector>

namespace locstat::stats {

// Neumaier-compensated summation; aggregation order is fixed by the caller
// so serial and parallel runs reduce identically.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);
double compensated_mean(std::span<const double> values);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // normal-approximation half width
    long n = 0;
    double lo() const { return mean - half_width; }
    double hi() const { return mean + half_width; }
};

MeanCi mean_ci(std::span<const double> values, double confidence = 0.95);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);
// No-intercept fit; r_squared is the uncentered version appropriate for a
// model constrained through the origin.
LinearFit fit_line_through_origin(std::span<const double> x, std::span<const double> y);

struct Correlation {
    double r = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;  // Fisher-z interval
    double p_value = 1.0;             // two-sided, H0: rho = 0
    bool defined = false;             // false when either margin is constant
};

Correlation pearson_correlation(std::span<const double> x, std::span<const double> y,
                                double confidence = 0.95);

}  // namespace locstat::stats
