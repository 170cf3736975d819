#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "kicktop/classical.hpp"
#include "support/sampling.hpp"

using namespace kicktop;

namespace {

constexpr double pi = 3.14159265358979323846;

double sphere_norm(const ClassicalState& c) {
    return std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
}

double dist(const ClassicalState& a, const ClassicalState& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ClassicalState random_point(testsupport::Sampler& sample) {
    const double z = sample.range(-1.0, 1.0);
    const double phi = sample.range(-pi, pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

} // namespace

TEST_CASE("angle to cartesian conversion hits the axes") {
    const ClassicalState north = angles_to_cartesian({0.0, 2.0});
    CHECK_EQ(north.x, doctest::Approx(0.0));
    CHECK_EQ(north.z, doctest::Approx(1.0));

    const ClassicalState xhat = angles_to_cartesian({pi / 2.0, 0.0});
    CHECK_EQ(xhat.x, doctest::Approx(1.0));
    CHECK_LT(std::abs(xhat.z), 1e-15);

    const ClassicalState yhat = angles_to_cartesian({pi / 2.0, pi / 2.0});
    CHECK_EQ(yhat.y, doctest::Approx(1.0));

    CHECK_THROWS_AS(angles_to_cartesian({-0.2, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(angles_to_cartesian({pi + 0.2, 0.0}), std::invalid_argument);
}

TEST_CASE("angle round trip is tight away from the poles") {
    testsupport::Sampler sample(404);
    for (int trial = 0; trial < 200; ++trial) {
        const CoherentParams in{sample.range(0.01, pi - 0.01), sample.range(-pi, pi)};
        const CoherentParams out = cartesian_to_angles(angles_to_cartesian(in));
        CHECK_LT(std::abs(out.theta - in.theta), 1e-12);
        CHECK_LT(std::abs(out.phi - in.phi), 1e-12);
    }
}

TEST_CASE("poles report phi = 0") {
    CHECK_EQ(cartesian_to_angles({0.0, 0.0, 1.0}).phi, 0.0);
    CHECK_EQ(cartesian_to_angles({0.0, 0.0, -1.0}).phi, 0.0);
    CHECK_EQ(cartesian_to_angles({0.0, 0.0, 1.0}).theta, doctest::Approx(0.0));
    CHECK_EQ(cartesian_to_angles({0.0, 0.0, -1.0}).theta, doctest::Approx(pi));
}

TEST_CASE("the polar great circle is a period-4 orbit for every kappa") {
    for (double kappa : {0.0, 1.3, 3.0, 6.0}) {
        ClassicalState c{0.0, 0.0, 1.0};
        c = kick_map(c, kappa);
        CHECK_LT(dist(c, {0.0, -1.0, 0.0}), 1e-15);
        c = kick_map(c, kappa);
        CHECK_LT(dist(c, {0.0, 0.0, -1.0}), 1e-15);
        c = kick_map(c, kappa);
        CHECK_LT(dist(c, {0.0, 1.0, 0.0}), 1e-15);
        c = kick_map(c, kappa);
        CHECK_LT(dist(c, {0.0, 0.0, 1.0}), 1e-15);
    }
}

TEST_CASE("zero twist reduces the kick to a quarter turn about x") {
    testsupport::Sampler sample(17);
    for (int trial = 0; trial < 50; ++trial) {
        const ClassicalState c = random_point(sample);
        const ClassicalState k = kick_map(c, 0.0);
        CHECK_EQ(k.x, doctest::Approx(c.x));
        CHECK_EQ(k.y, doctest::Approx(-c.z));
        CHECK_EQ(k.z, doctest::Approx(c.y));
    }
}

TEST_CASE("the sphere norm survives ten thousand kicks") {
    testsupport::Sampler sample(2718);
    for (double kappa : {0.5, 3.0, 6.0}) {
        ClassicalState c = random_point(sample);
        for (int n = 0; n < 10000; ++n)
            c = kick_map(c, kappa);
        CHECK_LT(std::abs(sphere_norm(c) - 1.0), 1e-9);
    }
}

TEST_CASE("jacobian closed forms at simple points") {
    // With no twist the middle column vanishes: those entries carry a factor
    // of kappa, and the map reduces to the fixed rotation (X, -Z, Y).
    Eigen::Matrix3d j0 = tangent_jacobian({0.3, -0.2, 0.6}, 0.0);
    Eigen::Matrix3d want;
    want << 1.0, 0.0, 0.0,
            0.0, 0.0, -1.0,
            0.0, 1.0, 0.0;
    CHECK_LT((j0 - want).cwiseAbs().maxCoeff(), 1e-15);

    const double kappa = 2.7;
    Eigen::Matrix3d jn = tangent_jacobian({0.0, 0.0, 1.0}, kappa);
    want << 1.0, kappa, 0.0,
            0.0, 0.0, -1.0,
            0.0, 1.0, 0.0;
    CHECK_LT((jn - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_CASE("jacobian matches central finite differences") {
    testsupport::Sampler sample(9001);
    const double delta = 1e-6;
    for (double kappa : {0.5, 3.0, 6.0}) {
        for (int trial = 0; trial < 35; ++trial) {
            const ClassicalState c = random_point(sample);
            const Eigen::Matrix3d jac = tangent_jacobian(c, kappa);

            double comp[3] = {c.x, c.y, c.z};
            for (int col = 0; col < 3; ++col) {
                double plus[3] = {comp[0], comp[1], comp[2]};
                double minus[3] = {comp[0], comp[1], comp[2]};
                plus[col] += delta;
                minus[col] -= delta;
                const ClassicalState fp =
                    kick_map({plus[0], plus[1], plus[2]}, kappa);
                const ClassicalState fm =
                    kick_map({minus[0], minus[1], minus[2]}, kappa);
                const double fd[3] = {(fp.x - fm.x) / (2.0 * delta),
                                      (fp.y - fm.y) / (2.0 * delta),
                                      (fp.z - fm.z) / (2.0 * delta)};
                for (int row = 0; row < 3; ++row)
                    CHECK_LT(std::abs(jac(row, col) - fd[row]), 1e-5);
            }
        }
    }
}

TEST_CASE("jacobian determinant has unit magnitude") {
    // The map is volume preserving on the sphere; its 3x3 extension keeps
    // |det| = 1 because each factor is a rotation composed with a swap.
    testsupport::Sampler sample(55);
    for (double kappa : {0.0, 2.0, 6.0})
        for (int trial = 0; trial < 20; ++trial)
            CHECK_LT(std::abs(std::abs(tangent_jacobian(random_point(sample), kappa)
                                           .determinant()) -
                              1.0),
                     1e-12);
}

TEST_CASE("tangent_step accumulates only when asked") {
    TangentFrame frame;
    frame.base = {0.6, 0.48, 0.64};
    const ClassicalState base0 = frame.base;
    const double stretch = tangent_step(frame, 3.0, false);
    CHECK_GT(stretch, 0.0);
    CHECK_EQ(frame.steps, 0);
    CHECK_EQ(frame.log_norm_accum, 0.0);
    CHECK_LT(std::abs(frame.v.norm() - 1.0), 1e-14);
    CHECK_LT(dist(frame.base, kick_map(base0, 3.0)), 1e-15);

    tangent_step(frame, 3.0, true);
    CHECK_EQ(frame.steps, 1);
}

TEST_CASE("lyapunov exponent separates regular from chaotic") {
    const CoherentParams chaotic{2.254, 0.44};
    CHECK_LT(lyapunov_exponent(chaotic, 0.5, 4000, 100), 0.01);
    CHECK_GT(lyapunov_exponent(chaotic, 6.0, 4000, 100), 0.1);
}

TEST_CASE("lyapunov exponent is deterministic and converged") {
    const CoherentParams start{1.9, -0.8};
    const double a = lyapunov_exponent(start, 6.0, 8000, 100);
    const double b = lyapunov_exponent(start, 6.0, 8000, 100);
    CHECK_EQ(a, b);

    const double half = lyapunov_exponent(start, 6.0, 4000, 100);
    CHECK_LT(std::abs(half - a), 0.05 * std::abs(a));
}

TEST_CASE("lyapunov exponent rejects bad step counts") {
    CHECK_THROWS_AS(lyapunov_exponent({1.0, 0.0}, 3.0, 100, 100), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_exponent({1.0, 0.0}, 3.0, 50, -1), std::invalid_argument);
}

TEST_CASE("phase portrait shape and ranges") {
    const auto points = phase_portrait(3.0, 157, 300, 12345);
    REQUIRE_EQ(points.size(), 157u * 300u);
    int t = 0, k = 1;
    for (const PortraitPoint& p : points) {
        CHECK_EQ(p.trajectory, t);
        CHECK_EQ(p.kick, k);
        CHECK_GE(p.theta, 0.0);
        CHECK_LE(p.theta, pi);
        CHECK_GE(p.phi, -pi);
        CHECK_LE(p.phi, pi);
        if (++k > 300) {
            k = 1;
            ++t;
        }
    }
}

TEST_CASE("phase portrait is seed deterministic") {
    const auto a = phase_portrait(2.5, 20, 50, 777);
    const auto b = phase_portrait(2.5, 20, 50, 777);
    REQUIRE_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK_EQ(a[i].theta, b[i].theta);
        CHECK_EQ(a[i].phi, b[i].phi);
    }

    const auto c = phase_portrait(2.5, 20, 50, 778);
    bool differs = false;
    for (std::size_t i = 0; i < a.size() && !differs; ++i)
        differs = (a[i].theta != c[i].theta) || (a[i].phi != c[i].phi);
    CHECK(differs);
}

TEST_CASE("zero twist portraits cycle through at most four points") {
    const auto points = phase_portrait(0.0, 12, 40, 31415);
    for (int t = 0; t < 12; ++t) {
        std::set<std::pair<double, double>> distinct;
        for (const PortraitPoint& p : points)
            if (p.trajectory == t)
                distinct.insert({p.theta, p.phi});
        CHECK_LE(distinct.size(), 4u);
    }
}

TEST_CASE("a single cell portrait is a single point") {
    const auto points = phase_portrait(1.0, 1, 1, 1);
    REQUIRE_EQ(points.size(), 1u);
    CHECK_EQ(points[0].trajectory, 0);
    CHECK_EQ(points[0].kick, 1);
}

TEST_CASE("phase portrait rejects empty requests") {
    CHECK_THROWS_AS(phase_portrait(1.0, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(phase_portrait(1.0, 10, 0, 1), std::invalid_argument);
}

TEST_CASE("orbits seeded at the stable fixed point stay put") {
    // Fixed point of the kick map with X = -Z = s solving the self-consistency
    // s = sin(kappa s) branch near kappa = 3; it sits inside a regular island.
    const double kappa = 3.0;
    const ClassicalState fp{0.4560379924796566, -0.6295237881396965, -0.6295237881396965};
    ClassicalState c = fp;
    double worst = 0.0;
    for (int n = 0; n < 2000; ++n) {
        c = kick_map(c, kappa);
        worst = std::max(worst, dist(c, fp));
    }
    CHECK_LT(worst, 0.1);
}
