#pragma once

#include <span>
#include <string>
#include <vector>

#include "locstat/resolvent.hpp"

namespace locstat {

// Minimal self-contained SVG renderers for the report figures.

std::string svg_count_histogram(std::span<const long> counts, double lambda);
std::string svg_gap_ecdf(std::span<const double> gaps, double lambda);
std::string svg_cf_gap_heatmap(std::span<const double> grid, std::span<const double> gap_matrix);
std::string svg_decay_fit(std::span<const long> separations, std::span<const double> means,
                          const DecayFit& fit);

}  // namespace locstat
