#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kicktop/floquet.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Midpoint grid over (0, pi) x (-pi, pi). Midpoints keep every cell away
/// from the poles, where phi is degenerate.
struct GridSpec {
    int n_theta = 15;
    int n_phi = 15;

    double theta(int i) const;
    double phi(int k) const;
    int cells() const { return n_theta * n_phi; }
};

/// One scalar observable evaluated on a grid of initial conditions.
struct ScanField {
    GridSpec grid;
    Eigen::MatrixXd values; // n_theta x n_phi
    std::string label;
    int n_particles = 0;
    double kappa = 0.0;
    int kicks = 0;
};

/// Knobs shared by the scan drivers. threads <= 1 runs serial; grid cells
/// are split into contiguous blocks, one per thread, each evolving its own
/// block of states against the shared read-only operator.
struct ScanOptions {
    int threads = 1;
    double kick_strength = default_kick_strength;
};

/// Conventions for the spherical average of a field v with the sin(theta)
/// area weight:
///  - FlatMean: arithmetic mean of sin(theta)*v over grid cells, i.e. the
///    measure-weighted integral divided by the flat 2*pi^2 area of the
///    (theta, phi) rectangle. This is what a uniform-grid evaluation of the
///    integral naturally yields and is the default.
///  - WeightedMean: sum(w*v)/sum(w), the true spherical mean of v.
///  - RawIntegral: sum of v * sin(theta) dtheta dphi, no normalization.
/// The three differ only by constant factors (2/pi and 2*pi^2 at infinite
/// grid resolution).
enum class PowerNorm { FlatMean, WeightedMean, RawIntegral };

/// Long-time-averaged fluctuations F-bar at every grid point, kicks 1..kicks.
ScanField fbar_field(double kappa, int n_particles, const GridSpec& grid,
                     int kicks, const ScanOptions& opts = {});

/// Long-time-averaged participation ratio over the Hilbert dimension,
/// eta-bar/D, at every grid point.
ScanField pr_field(double kappa, int n_particles, const GridSpec& grid,
                   int kicks, const ScanOptions& opts = {});

/// Spherical average of a field with sin(theta) weight.
double haar_average(const ScanField& field, PowerNorm norm = PowerNorm::FlatMean);

/// Haar-weighted phase-space average of F-bar: the global chaos indicator.
double fluctuation_power(double kappa, int n_particles, const GridSpec& grid,
                         int kicks, const ScanOptions& opts = {},
                         PowerNorm norm = PowerNorm::FlatMean);

/// fluctuation_power per kappa, reusing one jx eigendecomposition across the
/// whole sweep.
std::vector<std::pair<double, double>>
kappa_sweep(const std::vector<double>& kappas, int n_particles, const GridSpec& grid,
            int kicks, const ScanOptions& opts = {},
            PowerNorm norm = PowerNorm::FlatMean);

/// Grid-averaged classical Lyapunov exponent per kappa (same grid and the
/// same sin(theta) weighting as the quantum power, so the two sweeps are
/// directly comparable).
std::vector<std::pair<double, double>>
lyapunov_sweep(const std::vector<double>& kappas, const GridSpec& grid,
               long steps = 10000, long transient = 100,
               const ScanOptions& opts = {});

} // namespace kicktop
