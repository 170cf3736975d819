#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Point on the unit sphere, the rescaled angular momentum
/// (X, Y, Z) = (<Jx>, <Jy>, <Jz>)/j in the classical limit.
struct ClassicalState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

/// (theta, phi) -> (sin theta cos phi, sin theta sin phi, cos theta).
ClassicalState angles_to_cartesian(const CoherentParams& angles);

/// Inverse of angles_to_cartesian away from the poles; at a pole phi is
/// degenerate and reported as 0.
CoherentParams cartesian_to_angles(const ClassicalState& c);

/// One kick of the classical map:
///   X' = X cos(kY) + Z sin(kY)
///   Y' = X sin(kY) - Z cos(kY)
///   Z' = Y
/// The sphere norm is preserved algebraically.
ClassicalState kick_map(const ClassicalState& c, double kappa);

/// Jacobian of kick_map at the given point (rows d(X',Y',Z')/d(X,Y,Z)).
Eigen::Matrix3d tangent_jacobian(const ClassicalState& c, double kappa);

/// Base point plus a tangent vector carried along the orbit, renormalized
/// each step with the log stretch factors accumulated.
struct TangentFrame {
    ClassicalState base;
    Eigen::Vector3d v = Eigen::Vector3d::UnitX();
    double log_norm_accum = 0.0;
    long steps = 0;
};

/// Advance base and tangent one kick; returns the stretch factor |Jv| that
/// was divided out. When accumulate is false the factor is still applied but
/// not added to the running log sum (transient burn-in).
double tangent_step(TangentFrame& frame, double kappa, bool accumulate);

/// Largest Lyapunov exponent by single-vector tangent iteration with
/// per-step renormalization. The first `transient` steps are excluded from
/// the average; lambda = (sum of log stretch) / (steps - transient).
/// Deterministic: identical inputs give identical output.
double lyapunov_exponent(const CoherentParams& start, double kappa,
                         long steps = 10000, long transient = 100);

struct PortraitPoint {
    int trajectory = 0;
    int kick = 0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Iterate n_traj seeded uniform-on-sphere initial conditions and record
/// (theta, phi) after every kick: n_traj * kicks_per_traj points in
/// trajectory-major order. Uniform doubles are built from the top 53 bits of
/// mt19937_64 output so identical seeds give bit-identical portraits on any
/// platform.
std::vector<PortraitPoint> phase_portrait(double kappa, int n_traj,
                                          int kicks_per_traj, std::uint64_t seed);

} // namespace kicktop
