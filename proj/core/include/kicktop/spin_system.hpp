#pragma once

#include <complex>

#include <Eigen/Dense>

namespace kicktop {

using Complex = std::complex<double>;

/// Two-site boson system at fixed total particle number N, mapped onto a
/// single spin j = N/2. Basis state |l> has l particles on site 1, so the
/// magnetic quantum number is m = l - j (this sign convention makes
/// n1/N = 1/2 + Jz/N and is relied on everywhere).
struct SpinSystem {
    int n_particles = 0;     // N
    int dim = 0;             // D = N + 1
    double j = 0.0;          // N / 2
    Eigen::VectorXd jz_diag; // m_l = l - j, ascending
    Eigen::MatrixXd jx;      // (J+ + J-)/2, real symmetric tridiagonal
};

/// Spherical angles labelling an SU(2) coherent state.
/// theta in [0, pi], phi in [-pi, pi]. Out-of-range angles are rejected,
/// not wrapped; wrapping would hide scan-grid bugs.
struct CoherentParams {
    double theta = 0.0;
    double phi = 0.0;
};

/// Complex amplitudes in the Fock basis |l>, l = 0..N, together with the
/// particle number they belong to.
struct StateVector {
    Eigen::VectorXcd amps;
    int n_particles = 0;
};

SpinSystem build_spin_system(int n_particles);

/// Normalized coherent state |theta, phi> with amplitudes
/// c_l = sqrt(C(N,l)) cos^l(theta/2) sin^(N-l)(theta/2) e^{i(N-l)phi}.
/// The binomial weights are assembled from log-gamma sums so construction
/// stays stable well past N = 1000.
StateVector coherent_state(const SpinSystem& sys, const CoherentParams& angles);

/// (<Jx>, <Jy>, <Jz>) of a normalized state, via the tridiagonal ladder
/// structure (O(D), no matrix product).
Eigen::Vector3d spin_expectations(const SpinSystem& sys, const StateVector& psi);

} // namespace kicktop
