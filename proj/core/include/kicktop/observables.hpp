#pragma once

#include <string>
#include <vector>

#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Real-valued samples of one observable along a kick sequence.
/// values[k] belongs to kick index start + k.
struct TimeSeries {
    std::vector<double> values;
    int start = 0;
    std::string label;
};

struct GrowthFit {
    double exponent = 0.0;
    double r_squared = 0.0;
};

/// Standard deviation of n1/N in the given state. n1 is diagonal in the
/// Fock basis, so this is a plain weighted variance over |c_l|^2.
/// Result lies in [0, 1/2].
double bipartite_fluctuations(const StateVector& psi);

/// 1 / sum_l |c_l|^4, between 1 (single basis state) and D (uniform spread).
double participation_ratio(const StateVector& psi);

/// Arithmetic mean of the series over kicks 1..kicks. The pre-kick sample
/// at n = 0 is excluded by default so the average is a saturation statistic;
/// pass include_initial = true to average n = 0..kicks instead.
double long_time_average(const TimeSeries& ts, int kicks, bool include_initial = false);

/// Ordinary least squares on (log n, log value) over kicks n_lo..n_hi.
/// Every sample in the window must be strictly positive and n_lo >= 1.
GrowthFit fit_growth_exponent(const TimeSeries& ts, int n_lo, int n_hi);

} // namespace kicktop
