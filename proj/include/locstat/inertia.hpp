#pragma once

#include <span>
#include <vector>

#include "locstat/operator_matrix.hpp"

namespace locstat {

struct Interval {
    double lo;  // open
    double hi;  // closed
};

// Per-call record of the micro-shift fallback used to escape singular
// pivots in the factorization path.
struct CountDiagnostics {
    long perturbed_calls = 0;
    double max_shift_applied = 0.0;

    void merge(const CountDiagnostics& other) {
        perturbed_calls += other.perturbed_calls;
        if (other.max_shift_applied > max_shift_applied) max_shift_applied = other.max_shift_applied;
    }
};

// Eigenvalue counting bound to one matrix; precomputes the tridiagonal view
// (or the banded layout) once so a batch of thresholds is cheap.
class InertiaCounter {
public:
    explicit InertiaCounter(const OperatorMatrix& h);

    long count_leq(double a) const;
    void count_leq_batch(std::span<const double> thresholds, std::span<long> counts) const;

    long count_in(const Interval& iv) const;

    const CountDiagnostics& diagnostics() const { return diag_log_; }
    const OperatorMatrix& matrix() const { return *h_; }
    double inf_norm() const { return norm_; }

private:
    long banded_count(double a) const;

    const OperatorMatrix* h_;
    double norm_ = 0.0;
    // tridiagonal fast path
    bool tridiag_ = false;
    std::vector<double> e2_;
    double pivmin_ = 0.0;
    // banded path
    long bandwidth_ = 0;
    mutable CountDiagnostics diag_log_;
};

// Number of eigenvalues of H that are <= a.
long count_leq(const OperatorMatrix& h, double a, CountDiagnostics* diag = nullptr);

// Number of eigenvalues in the half-open interval (lo, hi].
long count_in(const OperatorMatrix& h, const Interval& iv, CountDiagnostics* diag = nullptr);

// All eigenvalues in (lo, hi], each located to within tol by bisection on
// the counting function; multiplicities preserved.
std::vector<double> eigenvalues_in(const OperatorMatrix& h, const Interval& iv, double tol,
                                   CountDiagnostics* diag = nullptr);
std::vector<double> eigenvalues_in(const InertiaCounter& counter, const Interval& iv, double tol);

double default_bisection_tol(const OperatorMatrix& h);

}  // namespace locstat
