#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace kirlab {

/// Thread cap: min(hardware concurrency, KIRLAB_THREADS if set). At least 1.
int max_threads();

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks, one
/// per thread; bodies must write to disjoint state so results are identical
/// to the serial order. Runs serially below `grain` items (thread spawn
/// costs more than cheap bodies save).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t grain = 2048);

/// Compensated (Kahan) summation in ascending index order; deterministic.
class KahanSum {
public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
    KahanSum s;
    for (double v : xs) s.add(v);
    return s.value();
}

} // namespace kirlab
