#include "kicktop/floquet.hpp"

#include <cmath>
#include <stdexcept>

#include "kicktop/observables.hpp"

namespace kicktop {

JxEigen diagonalize_jx(const SpinSystem& sys) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sys.jx);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_jx: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd kick_exponential(const JxEigen& eig, double kick_strength) {
    const Eigen::Index dim = eig.values.size();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases[k] = std::polar(1.0, -kick_strength * eig.values[k]);
    // jx is real symmetric, so the eigenbasis is real orthogonal and
    // V e^{-iVx lambda} V^T is unitary to rounding.
    const Eigen::MatrixXcd evec = eig.vectors.cast<Complex>();
    return evec * phases.asDiagonal() * evec.transpose();
}

namespace {

// exp(-i (kappa/2j) m_l^2) per Fock level.
Eigen::VectorXcd twist_phases(const SpinSystem& sys, double kappa) {
    Eigen::VectorXcd t(sys.dim);
    const double scale = kappa / (2.0 * sys.j);
    for (int l = 0; l < sys.dim; ++l) {
        const double m = sys.jz_diag[l];
        t[l] = std::polar(1.0, -scale * m * m);
    }
    return t;
}

KickSample sample_state(const SpinSystem& sys, const StateVector& psi) {
    KickSample s;
    s.f = bipartite_fluctuations(psi);
    s.eta = participation_ratio(psi);
    const Eigen::Vector3d spins = spin_expectations(sys, psi);
    s.jx = spins[0] / sys.j;
    s.jy = spins[1] / sys.j;
    s.jz = spins[2] / sys.j;
    return s;
}

} // namespace

FloquetOperator build_floquet(const SpinSystem& sys, const Eigen::MatrixXcd& kick,
                              double kappa, double kick_strength) {
    if (kappa < 0.0)
        throw std::invalid_argument("build_floquet: kappa must be >= 0");
    if (kick.rows() != sys.dim || kick.cols() != sys.dim)
        throw std::invalid_argument("build_floquet: kick matrix dimension mismatch");

    FloquetOperator op;
    op.kappa = kappa;
    op.kick_strength = kick_strength;
    op.n_particles = sys.n_particles;
    // Twist phases are diagonal, so composing them onto the kick matrix is a
    // row scaling; one dense matrix per (N, kappa) and evolution is a single
    // matrix-vector product per kick.
    op.matrix = twist_phases(sys, kappa).asDiagonal() * kick;
    return op;
}

FloquetOperator build_floquet(const SpinSystem& sys, double kappa, double kick_strength) {
    return build_floquet(sys, kick_exponential(diagonalize_jx(sys), kick_strength),
                         kappa, kick_strength);
}

StateVector apply(const FloquetOperator& op, const StateVector& psi) {
    if (psi.amps.size() != op.matrix.cols() || psi.n_particles != op.n_particles)
        throw std::invalid_argument("apply: state/operator dimension mismatch");
    StateVector out;
    out.n_particles = psi.n_particles;
    out.amps = op.matrix * psi.amps;
    return out;
}

EvolutionRecord evolve_record(const SpinSystem& sys, const FloquetOperator& op,
                              const CoherentParams& initial, int kicks) {
    if (kicks < 1)
        throw std::invalid_argument("evolve_record: need kicks >= 1");
    if (op.n_particles != sys.n_particles)
        throw std::invalid_argument("evolve_record: operator built for a different system");

    EvolutionRecord rec;
    rec.kappa = op.kappa;
    rec.kick_strength = op.kick_strength;
    rec.initial = initial;
    rec.n_particles = sys.n_particles;
    rec.samples.reserve(static_cast<std::size_t>(kicks) + 1);

    StateVector psi = coherent_state(sys, initial);
    rec.samples.push_back(sample_state(sys, psi));

    Eigen::VectorXcd next(sys.dim);
    for (int n = 1; n <= kicks; ++n) {
        next.noalias() = op.matrix * psi.amps;
        psi.amps.swap(next);
        const double nrm = psi.amps.norm();
        rec.max_norm_drift = std::max(rec.max_norm_drift, std::abs(nrm - 1.0));
        psi.amps /= nrm;
        rec.samples.push_back(sample_state(sys, psi));
    }
    return rec;
}

std::vector<double> sample_series(const EvolutionRecord& rec, SampleField field) {
    std::vector<double> out;
    out.reserve(rec.samples.size());
    for (const KickSample& s : rec.samples) {
        switch (field) {
        case SampleField::F:   out.push_back(s.f); break;
        case SampleField::Eta: out.push_back(s.eta); break;
        case SampleField::Jx:  out.push_back(s.jx); break;
        case SampleField::Jy:  out.push_back(s.jy); break;
        case SampleField::Jz:  out.push_back(s.jz); break;
        }
    }
    return out;
}

} // namespace kicktop
