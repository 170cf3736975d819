#include "kicktop/classical.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace kicktop {

namespace {
constexpr double pi = 3.14159265358979323846;
}

ClassicalState angles_to_cartesian(const CoherentParams& angles) {
    if (!(angles.theta >= 0.0 && angles.theta <= pi))
        throw std::invalid_argument("angles_to_cartesian: theta outside [0, pi]");
    const double st = std::sin(angles.theta);
    return {st * std::cos(angles.phi), st * std::sin(angles.phi), std::cos(angles.theta)};
}

CoherentParams cartesian_to_angles(const ClassicalState& c) {
    CoherentParams a;
    a.theta = std::acos(std::clamp(c.z, -1.0, 1.0));
    // phi is degenerate at the poles; report 0 there.
    a.phi = (c.x == 0.0 && c.y == 0.0) ? 0.0 : std::atan2(c.y, c.x);
    return a;
}

ClassicalState kick_map(const ClassicalState& c, double kappa) {
    const double a = kappa * c.y;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    // The pair (X,-Z) rotates by kappa*Y into the new (X,Y) and the old Y
    // becomes the new Z, so X'^2+Y'^2+Z'^2 = X^2+Z^2+Y^2 algebraically.
    return {c.x * ca + c.z * sa, c.x * sa - c.z * ca, c.y};
}

Eigen::Matrix3d tangent_jacobian(const ClassicalState& c, double kappa) {
    const double a = kappa * c.y;
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    Eigen::Matrix3d jac;
    jac << ca, kappa * (c.z * ca - c.x * sa), sa,
           sa, kappa * (c.x * ca + c.z * sa), -ca,
           0.0, 1.0, 0.0;
    return jac;
}

double tangent_step(TangentFrame& frame, double kappa, bool accumulate) {
    frame.v = tangent_jacobian(frame.base, kappa) * frame.v;
    const double stretch = frame.v.norm();
    if (!(stretch > 0.0))
        throw std::runtime_error("tangent_step: tangent vector collapsed to zero");
    frame.v /= stretch;
    if (accumulate) {
        frame.log_norm_accum += std::log(stretch);
        ++frame.steps;
    }
    frame.base = kick_map(frame.base, kappa);
    return stretch;
}

double lyapunov_exponent(const CoherentParams& start, double kappa,
                         long steps, long transient) {
    if (transient < 0 || steps <= transient)
        throw std::invalid_argument("lyapunov_exponent: need steps > transient >= 0");

    TangentFrame frame;
    frame.base = angles_to_cartesian(start);
    for (long s = 0; s < steps; ++s)
        tangent_step(frame, kappa, s >= transient);
    return frame.log_norm_accum / static_cast<double>(frame.steps);
}

std::vector<PortraitPoint> phase_portrait(double kappa, int n_traj,
                                          int kicks_per_traj, std::uint64_t seed) {
    if (n_traj < 1 || kicks_per_traj < 1)
        throw std::invalid_argument("phase_portrait: need at least one trajectory and one kick");

    std::mt19937_64 rng(seed);
    // Top 53 bits -> [0,1). std::uniform_real_distribution is not pinned
    // across standard libraries; this is, so seeds are portable.
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<PortraitPoint> points;
    points.reserve(static_cast<std::size_t>(n_traj) * kicks_per_traj);
    for (int t = 0; t < n_traj; ++t) {
        const double z = 1.0 - 2.0 * unit();
        const double phi = -pi + 2.0 * pi * unit();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        ClassicalState c{r * std::cos(phi), r * std::sin(phi), z};
        for (int k = 1; k <= kicks_per_traj; ++k) {
            c = kick_map(c, kappa);
            const CoherentParams a = cartesian_to_angles(c);
            points.push_back({t, k, a.theta, a.phi});
        }
    }
    return points;
}

} // namespace kicktop
