#include "kicktop/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kicktop {

namespace {

// Value at kick index n, range-checked.
double at_kick(const TimeSeries& ts, int n) {
    const long idx = static_cast<long>(n) - ts.start;
    if (idx < 0 || idx >= static_cast<long>(ts.values.size()))
        throw std::invalid_argument("time series does not cover kick " + std::to_string(n));
    return ts.values[static_cast<std::size_t>(idx)];
}

} // namespace

double bipartite_fluctuations(const StateVector& psi) {
    const int n = psi.n_particles;
    if (n < 1 || psi.amps.size() != n + 1)
        throw std::invalid_argument("bipartite_fluctuations: malformed state");

    // Two passes: mean of l/N first, then the centered second moment.
    // The naive <x^2> - <x>^2 form cancels catastrophically once the state
    // localizes and the variance is tiny.
    double mean = 0.0;
    for (int l = 0; l <= n; ++l)
        mean += std::norm(psi.amps[l]) * (static_cast<double>(l) / n);
    double var = 0.0;
    for (int l = 0; l <= n; ++l) {
        const double d = static_cast<double>(l) / n - mean;
        var += std::norm(psi.amps[l]) * d * d;
    }
    if (var < -1e-14)
        throw std::runtime_error("bipartite_fluctuations: negative variance");
    return std::sqrt(std::max(var, 0.0));
}

double participation_ratio(const StateVector& psi) {
    double sum4 = 0.0;
    for (Eigen::Index l = 0; l < psi.amps.size(); ++l) {
        const double p = std::norm(psi.amps[l]);
        sum4 += p * p;
    }
    return 1.0 / sum4;
}

double long_time_average(const TimeSeries& ts, int kicks, bool include_initial) {
    if (kicks < 1)
        throw std::invalid_argument("long_time_average: need kicks >= 1");
    const int first = include_initial ? 0 : 1;
    double sum = 0.0;
    for (int n = first; n <= kicks; ++n)
        sum += at_kick(ts, n);
    return sum / (kicks - first + 1);
}

GrowthFit fit_growth_exponent(const TimeSeries& ts, int n_lo, int n_hi) {
    if (n_lo < 1)
        throw std::invalid_argument("fit_growth_exponent: window must start at kick >= 1");
    if (n_hi < n_lo)
        throw std::invalid_argument("fit_growth_exponent: empty window");

    const int count = n_hi - n_lo + 1;
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(count), ly(count);
    for (int n = n_lo; n <= n_hi; ++n) {
        const double v = at_kick(ts, n);
        if (!(v > 0.0))
            throw std::domain_error("fit_growth_exponent: nonpositive value at kick " +
                                    std::to_string(n));
        const int k = n - n_lo;
        lx[k] = std::log(static_cast<double>(n));
        ly[k] = std::log(v);
        sx += lx[k];
        sy += ly[k];
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int k = 0; k < count; ++k) {
        const double dx = lx[k] - mx;
        const double dy = ly[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_growth_exponent: window needs at least two distinct kicks");

    GrowthFit fit;
    fit.exponent = sxy / sxx;
    // Degenerate flat series: the fit is exact, report r^2 = 1.
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

} // namespace kicktop
