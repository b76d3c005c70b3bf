#include "locstat/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "locstat/errors.hpp"

namespace locstat {

OperatorMatrix::OperatorMatrix(std::vector<double> diagonal, std::vector<Band> bands, Flavor flavor)
    : diag_(std::move(diagonal)), bands_(std::move(bands)), flavor_(flavor) {
    const long n = size();
    std::sort(bands_.begin(), bands_.end(), [](const Band& a, const Band& b) { return a.offset < b.offset; });
    for (std::size_t k = 0; k < bands_.size(); ++k) {
        const Band& b = bands_[k];
        if (b.offset <= 0 || b.offset >= n) throw DimensionError("band offset out of range");
        if (k > 0 && bands_[k - 1].offset == b.offset) throw DimensionError("duplicate band offset");
        if (static_cast<long>(b.values.size()) != n - b.offset)
            throw DimensionError("band length mismatch");
        bandwidth_ = std::max(bandwidth_, b.offset);
    }
}

bool OperatorMatrix::is_tridiagonal() const {
    return bands_.empty() || (bands_.size() == 1 && bands_[0].offset == 1);
}

double OperatorMatrix::entry(long i, long j) const {
    if (i < 0 || j < 0 || i >= size() || j >= size()) throw DimensionError("entry index out of range");
    if (i == j) return diag_[i];
    const long lo = std::min(i, j);
    const long off = std::abs(i - j);
    for (const Band& b : bands_)
        if (b.offset == off) return b.values[lo];
    return 0.0;
}

double OperatorMatrix::inf_norm() const {
    std::vector<double> row_abs(diag_.size());
    for (std::size_t i = 0; i < diag_.size(); ++i) row_abs[i] = std::abs(diag_[i]);
    for (const Band& b : bands_)
        for (long i = 0; i < static_cast<long>(b.values.size()); ++i) {
            const double a = std::abs(b.values[i]);
            row_abs[i] += a;
            row_abs[i + b.offset] += a;
        }
    double m = 0.0;
    for (double r : row_abs) m = std::max(m, r);
    return m;
}

std::pair<double, double> OperatorMatrix::gershgorin_interval() const {
    std::vector<double> radius(diag_.size(), 0.0);
    for (const Band& b : bands_)
        for (long i = 0; i < static_cast<long>(b.values.size()); ++i) {
            const double a = std::abs(b.values[i]);
            radius[i] += a;
            radius[i + b.offset] += a;
        }
    double lo = diag_.empty() ? 0.0 : diag_[0] - radius[0];
    double hi = diag_.empty() ? 0.0 : diag_[0] + radius[0];
    for (std::size_t i = 1; i < diag_.size(); ++i) {
        lo = std::min(lo, diag_[i] - radius[i]);
        hi = std::max(hi, diag_[i] + radius[i]);
    }
    return {lo, hi};
}

void OperatorMatrix::apply_shifted(std::span<const std::complex<double>> x, std::complex<double> z,
                                   std::span<std::complex<double>> y) const {
    const long n = size();
    if (static_cast<long>(x.size()) != n || static_cast<long>(y.size()) != n)
        throw DimensionError("apply_shifted size mismatch");
    for (long i = 0; i < n; ++i) y[i] = (diag_[i] - z) * x[i];
    for (const Band& b : bands_)
        for (long i = 0; i < static_cast<long>(b.values.size()); ++i) {
            y[i] += b.values[i] * x[i + b.offset];
            y[i + b.offset] += b.values[i] * x[i];
        }
}

bool OperatorMatrix::same_entries(const OperatorMatrix& other) const {
    if (size() != other.size() || bands_.size() != other.bands_.size()) return false;
    if (diag_ != other.diag_) return false;
    for (std::size_t k = 0; k < bands_.size(); ++k)
        if (bands_[k].offset != other.bands_[k].offset || bands_[k].values != other.bands_[k].values)
            return false;
    return true;
}

}  // namespace locstat
