#include "locstat/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "locstat/errors.hpp"
#include "locstat/kernels/sturm.hpp"

namespace locstat {

InertiaCounter::InertiaCounter(const OperatorMatrix& h) : h_(&h), norm_(h.inf_norm()) {
    tridiag_ = h.is_tridiagonal();
    if (tridiag_) {
        const long n = h.size();
        e2_.assign(n > 1 ? n - 1 : 0, 0.0);
        if (!h.bands().empty())
            for (long i = 0; i < n - 1; ++i) {
                const double e = h.bands()[0].values[i];
                e2_[i] = e * e;
            }
        pivmin_ = kernels::sturm_pivmin({h.diagonal(), e2_});
    } else {
        bandwidth_ = h.bandwidth();
    }
}

long InertiaCounter::count_leq(double a) const {
    long c = 0;
    count_leq_batch(std::span<const double>(&a, 1), std::span<long>(&c, 1));
    return c;
}

void InertiaCounter::count_leq_batch(std::span<const double> thresholds, std::span<long> counts) const {
    if (thresholds.size() != counts.size()) throw DimensionError("threshold/count size mismatch");
    if (tridiag_) {
        kernels::sturm_count_batch({h_->diagonal(), e2_}, pivmin_, thresholds, counts);
        return;
    }
    for (std::size_t k = 0; k < thresholds.size(); ++k) counts[k] = banded_count(thresholds[k]);
}

// LDL^T of H - aI in band storage without pivoting; the count of pivots
// <= 0 is the eigenvalue count.  A tiny pivot triggers a retry with the
// threshold nudged by at most 1e-12 * ||H||, recorded in diagnostics.
long InertiaCounter::banded_count(double a) const {
    const long n = h_->size();
    const long bw = bandwidth_;
    const double norm_scale = std::max(1.0, norm_);
    const double breakdown_tol = 1e-300 * norm_scale;

    std::vector<double> band(static_cast<std::size_t>(n) * (bw + 1), 0.0);
    const double deltas[] = {0.0, 1e-13 * norm_scale, 1e-12 * norm_scale};
    for (double delta : deltas) {
        const double shift = a + delta;
        // band[(i-j) + j*(bw+1)] holds working column j, rows j..j+bw.
        std::fill(band.begin(), band.end(), 0.0);
        for (long j = 0; j < n; ++j) band[0 + j * (bw + 1)] = h_->diagonal()[j] - shift;
        for (const auto& b : h_->bands())
            for (long i = 0; i < static_cast<long>(b.values.size()); ++i)
                band[b.offset + i * (bw + 1)] = b.values[i];

        bool failed = false;
        long count = 0;
        for (long j = 0; j < n && !failed; ++j) {
            double dj = band[0 + j * (bw + 1)];
            if (std::fabs(dj) < breakdown_tol || !std::isfinite(dj)) {
                failed = true;
                break;
            }
            if (dj <= 0.0) ++count;
            const long reach = std::min(bw, n - 1 - j);
            for (long i = 1; i <= reach; ++i) {
                const double lij = band[i + j * (bw + 1)] / dj;
                // Rank-one update of the trailing block touched by column j.
                for (long k2 = i; k2 <= reach; ++k2)
                    band[(k2 - i) + (j + i) * (bw + 1)] -= lij * band[k2 + j * (bw + 1)];
                band[i + j * (bw + 1)] = lij;
            }
        }
        if (!failed) {
            if (delta > 0.0) {
                diag_log_.perturbed_calls += 1;
                diag_log_.max_shift_applied = std::max(diag_log_.max_shift_applied, delta);
            }
            return count;
        }
    }
    throw NumericalError("singular pivot persisted through micro-shift retries at threshold " +
                         std::to_string(a));
}

long InertiaCounter::count_in(const Interval& iv) const {
    if (iv.lo > iv.hi) throw IntervalError("interval (a, b] requires a <= b");
    if (iv.lo == iv.hi) return 0;
    const double thresholds[2] = {iv.lo, iv.hi};
    long counts[2] = {0, 0};
    count_leq_batch(thresholds, counts);
    return counts[1] - counts[0];
}

long count_leq(const OperatorMatrix& h, double a, CountDiagnostics* diag) {
    InertiaCounter c(h);
    const long r = c.count_leq(a);
    if (diag) diag->merge(c.diagnostics());
    return r;
}

long count_in(const OperatorMatrix& h, const Interval& iv, CountDiagnostics* diag) {
    InertiaCounter c(h);
    const long r = c.count_in(iv);
    if (diag) diag->merge(c.diagnostics());
    return r;
}

double default_bisection_tol(const OperatorMatrix& h) {
    return 1e-10 * std::max(1.0, h.inf_norm());
}

std::vector<double> eigenvalues_in(const InertiaCounter& counter, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw IntervalError("bisection tolerance must be positive");
    if (iv.lo > iv.hi) throw IntervalError("interval (a, b] requires a <= b");

    struct Bracket {
        double lo, hi;
        long clo, chi;
    };
    const double endpoints[2] = {iv.lo, iv.hi};
    long cend[2] = {0, 0};
    counter.count_leq_batch(endpoints, cend);
    if (cend[1] == cend[0]) return {};

    std::vector<double> out;
    std::vector<Bracket> active{{iv.lo, iv.hi, cend[0], cend[1]}};
    std::vector<double> mids;
    std::vector<long> cmids;
    while (!active.empty()) {
        mids.clear();
        for (const Bracket& b : active) mids.push_back(0.5 * (b.lo + b.hi));
        cmids.assign(mids.size(), 0);
        counter.count_leq_batch(mids, cmids);
        std::vector<Bracket> next;
        for (std::size_t i = 0; i < active.size(); ++i) {
            const Bracket& b = active[i];
            const double mid = mids[i];
            if (!(mid > b.lo) || !(mid < b.hi)) {
                // Bracket narrower than floating resolution; emit as located.
                for (long r = 0; r < b.chi - b.clo; ++r) out.push_back(mid);
                continue;
            }
            const long cm = std::clamp(cmids[i], b.clo, b.chi);
            auto emit_or_split = [&](double lo, double hi, long clo, long chi) {
                if (chi == clo) return;
                if (hi - lo <= tol) {
                    const double loc = 0.5 * (lo + hi);
                    for (long r = 0; r < chi - clo; ++r) out.push_back(loc);
                } else {
                    next.push_back({lo, hi, clo, chi});
                }
            };
            emit_or_split(b.lo, mid, b.clo, cm);
            emit_or_split(mid, b.hi, cm, b.chi);
        }
        active.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> eigenvalues_in(const OperatorMatrix& h, const Interval& iv, double tol,
                                   CountDiagnostics* diag) {
    InertiaCounter c(h);
    auto r = eigenvalues_in(c, iv, tol);
    if (diag) diag->merge(c.diagnostics());
    return r;
}

}  // namespace locstat
