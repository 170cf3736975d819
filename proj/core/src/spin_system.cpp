#include "kicktop/spin_system.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

SpinSystem build_spin_system(int n_particles) {
    if (n_particles < 1)
        throw std::invalid_argument("build_spin_system: particle count must be >= 1");

    SpinSystem sys;
    sys.n_particles = n_particles;
    sys.dim = n_particles + 1;
    sys.j = 0.5 * n_particles;

    sys.jz_diag.resize(sys.dim);
    for (int l = 0; l < sys.dim; ++l)
        sys.jz_diag[l] = l - sys.j;

    // <l+1|Jx|l> = (1/2) sqrt(j(j+1) - m_l m_{l+1}), everything else zero.
    sys.jx = Eigen::MatrixXd::Zero(sys.dim, sys.dim);
    const double jj = sys.j * (sys.j + 1.0);
    for (int l = 0; l + 1 < sys.dim; ++l) {
        const double a = 0.5 * std::sqrt(jj - sys.jz_diag[l] * sys.jz_diag[l + 1]);
        sys.jx(l, l + 1) = a;
        sys.jx(l + 1, l) = a;
    }
    return sys;
}

StateVector coherent_state(const SpinSystem& sys, const CoherentParams& angles) {
    const double pi = 3.14159265358979323846;
    if (!(angles.theta >= 0.0 && angles.theta <= pi))
        throw std::invalid_argument("coherent_state: theta outside [0, pi]");
    if (!(angles.phi >= -pi && angles.phi <= pi))
        throw std::invalid_argument("coherent_state: phi outside [-pi, pi]");

    const int n = sys.n_particles;
    StateVector psi;
    psi.n_particles = n;
    psi.amps = Eigen::VectorXcd::Zero(sys.dim);

    const double c = std::cos(0.5 * angles.theta);
    const double s = std::sin(0.5 * angles.theta);
    // Degenerate poles: all weight on a single Fock state. Handled apart so
    // the log-domain assembly below never sees log(0).
    if (s == 0.0) {
        psi.amps[n] = 1.0;
        return psi;
    }
    if (c == 0.0) {
        psi.amps[0] = 1.0;
        return psi;
    }

    const double log_c = std::log(c);
    const double log_s = std::log(s);
    const double lg_n = std::lgamma(n + 1.0);
    for (int l = 0; l <= n; ++l) {
        const double half_log_binom =
            0.5 * (lg_n - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0));
        const double mag = std::exp(half_log_binom + l * log_c + (n - l) * log_s);
        psi.amps[l] = std::polar(mag, (n - l) * angles.phi);
    }
    psi.amps /= psi.amps.norm();
    return psi;
}

Eigen::Vector3d spin_expectations(const SpinSystem& sys, const StateVector& psi) {
    if (psi.amps.size() != sys.dim)
        throw std::invalid_argument("spin_expectations: state dimension mismatch");

    double jz = 0.0;
    for (int l = 0; l < sys.dim; ++l)
        jz += std::norm(psi.amps[l]) * sys.jz_diag[l];

    // With J+|l> = a_l|l+1>: <J+> = sum_l a_l conj(c_{l+1}) c_l, and then
    // <Jx> = Re<J+>, <Jy> = Im<J+>.
    Complex jplus(0.0, 0.0);
    const double jj = sys.j * (sys.j + 1.0);
    for (int l = 0; l + 1 < sys.dim; ++l) {
        const double a = std::sqrt(jj - sys.jz_diag[l] * sys.jz_diag[l + 1]);
        jplus += a * std::conj(psi.amps[l + 1]) * psi.amps[l];
    }
    return {jplus.real(), jplus.imag(), jz};
}

} // namespace kicktop
