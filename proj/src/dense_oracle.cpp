#include "locstat/dense_oracle.hpp"

#include <Eigen/Dense>

#include "locstat/errors.hpp"

namespace locstat {

std::vector<double> dense_spectrum(const OperatorMatrix& h, long oracle_cap) {
    const long n = h.size();
    if (n > oracle_cap)
        throw OracleSizeError("dense oracle refused: size " + std::to_string(n) + " exceeds cap " +
                              std::to_string(oracle_cap));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = h.diagonal()[i];
    for (const auto& b : h.bands())
        for (long i = 0; i < static_cast<long>(b.values.size()); ++i) {
            m(i, i + b.offset) = b.values[i];
            m(i + b.offset, i) = b.values[i];
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigendecomposition failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace locstat
