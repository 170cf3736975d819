#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kicktop/spin_system.hpp"

namespace kicktop {

inline constexpr double default_kick_strength = 1.5707963267948966; // pi/2

/// Eigendecomposition of jx. Computed once per SpinSystem and reused for
/// every kappa in a sweep; jx is real symmetric so this is exact to rounding
/// and the resulting exponentials are unitary to rounding.
struct JxEigen {
    Eigen::VectorXd values;  // ascending; the SU(2) spectrum -j..+j
    Eigen::MatrixXd vectors; // columns are eigenvectors
};

JxEigen diagonalize_jx(const SpinSystem& sys);

/// exp(-i * kick_strength * Jx) assembled from the cached eigendecomposition.
Eigen::MatrixXcd kick_exponential(const JxEigen& eig, double kick_strength);

/// Dense one-kick propagator. The matrix is
///   exp(-i*(kappa/2j)*Jz^2) * exp(-i*kick_strength*Jx),
/// i.e. the kick rotation acts on the state first and the twist phases
/// second. This is the ordering whose large-N limit is the classical map in
/// classical.hpp (kick_map); the reversed product describes the same physics
/// only after a global frame change, and its phase-space features land in
/// different (theta, phi) locations.
struct FloquetOperator {
    Eigen::MatrixXcd matrix;
    double kappa = 0.0;
    double kick_strength = default_kick_strength;
    int n_particles = 0;
};

/// Build the propagator, diagonalizing jx internally.
FloquetOperator build_floquet(const SpinSystem& sys, double kappa,
                              double kick_strength = default_kick_strength);

/// Build the propagator from a precomputed kick exponential (sweep path;
/// one diagonalization serves every kappa).
FloquetOperator build_floquet(const SpinSystem& sys, const Eigen::MatrixXcd& kick,
                              double kappa, double kick_strength);

/// One kick: matrix * amps. Norm is preserved to rounding.
StateVector apply(const FloquetOperator& op, const StateVector& psi);

/// Observables sampled after each kick.
struct KickSample {
    double f = 0.0;   // bipartite fluctuations
    double eta = 0.0; // participation ratio
    double jx = 0.0;  // <Jx>/j
    double jy = 0.0;  // <Jy>/j
    double jz = 0.0;  // <Jz>/j
};

/// Full evolution trace from a coherent initial state. samples[n] describes
/// the state after n kicks; samples[0] is the initial state. The state is
/// renormalized defensively after every kick and the largest deviation from
/// unit norm seen before renormalization is reported, so operator bugs show
/// up as drift instead of being silently absorbed.
struct EvolutionRecord {
    std::vector<KickSample> samples;
    double kappa = 0.0;
    double kick_strength = default_kick_strength;
    CoherentParams initial;
    int n_particles = 0;
    double max_norm_drift = 0.0;
};

EvolutionRecord evolve_record(const SpinSystem& sys, const FloquetOperator& op,
                              const CoherentParams& initial, int kicks);

/// F(n) sequence of a record as a TimeSeries-ready vector is built by
/// observables.hpp consumers; this helper extracts one field.
enum class SampleField { F, Eta, Jx, Jy, Jz };

std::vector<double> sample_series(const EvolutionRecord& rec, SampleField field);

} // namespace kicktop
