#pragma once

#include <vector>

#include "locstat/operator_matrix.hpp"

namespace locstat {

inline constexpr long kDefaultOracleCap = 2000;

// Full spectrum, sorted ascending, via a dense symmetric eigendecomposition
// (Householder tridiagonalization plus implicitly shifted QL).  Test oracle
// for the counting engine; refuses sizes above the cap.
std::vector<double> dense_spectrum(const OperatorMatrix& h, long oracle_cap = kDefaultOracleCap);

}  // namespace locstat
