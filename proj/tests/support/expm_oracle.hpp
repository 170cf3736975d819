#pragma once

#include <Eigen/Dense>

namespace testsupport {

// Brute-force matrix exponential: scale down by powers of two, sum the
// Taylor series to machine convergence, square back up. Deliberately
// independent of the library's eigendecomposition route so it can serve as
// an oracle for the propagator.
inline Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a) {
    const double scale_norm = a.cwiseAbs().maxCoeff() * static_cast<double>(a.rows());
    int squarings = 0;
    double scale = 1.0;
    while (scale_norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }

    const Eigen::MatrixXcd small = a * scale;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 80; ++k) {
        term = (term * small) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18)
            break;
    }
    for (int s = 0; s < squarings; ++s)
        sum = (sum * sum).eval();
    return sum;
}

} // namespace testsupport
