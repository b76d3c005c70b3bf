#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "locstat/geometry.hpp"

namespace locstat {

// Finite-volume symmetric operator stored by diagonal plus sparse upper
// bands: entry (i, i+offset) lives in band(offset)[i].  Storing only one
// triangle makes symmetry exact by construction.
class OperatorMatrix {
public:
    struct Band {
        long offset;                 // > 0
        std::vector<double> values;  // length N - offset
    };

    enum class Flavor { LatticeAnderson, ContinuumSchroedinger, Generic };

    OperatorMatrix() = default;
    OperatorMatrix(std::vector<double> diagonal, std::vector<Band> bands,
                   Flavor flavor = Flavor::Generic);

    long size() const { return static_cast<long>(diag_.size()); }
    const std::vector<double>& diagonal() const { return diag_; }
    const std::vector<Band>& bands() const { return bands_; }
    long bandwidth() const { return bandwidth_; }
    bool is_tridiagonal() const;

    double entry(long i, long j) const;
    double inf_norm() const;
    // [min, max] enclosure of the spectrum from Gershgorin discs.
    std::pair<double, double> gershgorin_interval() const;

    // y = (H - z) x, used for residual checks.
    void apply_shifted(std::span<const std::complex<double>> x, std::complex<double> z,
                       std::span<std::complex<double>> y) const;

    Flavor flavor() const { return flavor_; }
    const CubeSpec* cube() const { return has_cube_ ? &cube_ : nullptr; }
    void set_cube(const CubeSpec& c) { cube_ = c; has_cube_ = true; }

    bool same_entries(const OperatorMatrix& other) const;

private:
    std::vector<double> diag_;
    std::vector<Band> bands_;  // sorted by offset, offsets distinct
    long bandwidth_ = 0;
    Flavor flavor_ = Flavor::Generic;
    CubeSpec cube_;
    bool has_cube_ = false;
};

}  // namespace locstat
