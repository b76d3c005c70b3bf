#pragma once

namespace locstat::stats {

// Survival function of the chi-squared law with dof degrees of freedom.
double chi_squared_sf(double x, double dof);

// Standard normal CDF and its inverse.
double normal_cdf(double x);
double normal_quantile(double p);

// Kolmogorov distribution tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_sf(double lambda);

// Asymptotic p-value of a one-sample KS distance at sample size n, with the
// usual small-sample adjustment of the argument.
double ks_p_value(double distance, long n);

// Poisson pmf, numerically stable for moderate lambda.
double poisson_pmf(long k, double lambda);

}  // namespace locstat::stats
