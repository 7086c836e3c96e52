#include "doctest.h"

#include <cmath>

#include "crlab/frames.hpp"
#include "crlab/hypersurface.hpp"
#include "crlab/polynomial_parser.hpp"
#include "test_util.hpp"

using namespace crlab;
using testutil::DetRng;

namespace {

Hypersurface sphere3(const std::string& phi = "") {
    HermitianPolynomial u = parse_hermitian("z1*conj(z1) + z2*conj(z2) - 1", 2);
    HermitianPolynomial ph = phi.empty() ? HermitianPolynomial::zero(2) : parse_hermitian(phi, 2);
    return build_hypersurface(2, u, InsideSign::negative_inside, ph);
}

Hypersurface ellipsoid3() {
    HermitianPolynomial u = parse_hermitian("z1*conj(z1) + 2*z2*conj(z2) - 1", 2);
    return build_hypersurface(2, u, InsideSign::negative_inside, HermitianPolynomial::zero(2));
}

// Real (non-Hermitian) ellipsoid 1.3 x1^2 + 0.7 y1^2 + |z2|^2 = 1; not a
// complex-linear image of the sphere, so its Webster curvature varies.
Hypersurface real_ellipsoid3() {
    HermitianPolynomial u = parse_hermitian(
        "z1*conj(z1) + z2*conj(z2) + 0.15*z1^2 + 0.15*conj(z1)^2 - 1", 2);
    return build_hypersurface(2, u, InsideSign::negative_inside, HermitianPolynomial::zero(2));
}

Hypersurface sphere5() {
    HermitianPolynomial u =
        parse_hermitian("z1*conj(z1) + z2*conj(z2) + z3*conj(z3) - 1", 3);
    return build_hypersurface(3, u, InsideSign::negative_inside, HermitianPolynomial::zero(3));
}

// Quadrature-weighted mean and stddev of a node-value vector.
std::pair<double, double> weighted_stats(const NodeSet& nodes, const Eigen::VectorXd& v) {
    const double vol = nodes.weights.sum();
    const double mean = nodes.weights.dot(v) / vol;
    const double var = nodes.weights.dot((v.array() - mean).square().matrix()) / vol;
    return {mean, std::sqrt(var)};
}

// Closed-form round-sphere integral of |z1|^{2a} |z2|^{2b} over S^3 via the
// Gaussian radial reduction (independent 1-D oracle).
double sphere3_monomial_integral(int a, int b) {
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    return M_PI * M_PI * fact(a) * fact(b) * 2.0 / fact(a + b + 1);
}

double quad_monomial(const NodeSet& nodes, int a1, int b1, int a2, int b2) {
    double acc = 0.0;
    for (int k = 0; k < nodes.count(); ++k) {
        auto z = nodes.point_z(k);
        Cplx v = std::pow(z[0], a1) * std::pow(std::conj(z[0]), b1) * std::pow(z[1], a2) *
                 std::pow(std::conj(z[1]), b2);
        acc += nodes.weights(k) * v.real();
    }
    return acc;
}

} // namespace

TEST_CASE("build_hypersurface: acceptance and rejection") {
    CHECK_NOTHROW(sphere3());
    CHECK_NOTHROW(ellipsoid3());
    CHECK_NOTHROW(sphere5());

    HermitianPolynomial bad = parse_hermitian("z1*conj(z1) - z2*conj(z2) - 1", 2);
    CHECK_THROWS_AS(
        build_hypersurface(2, bad, InsideSign::negative_inside, HermitianPolynomial::zero(2)),
        NotPseudoconvex);

    // pluriharmonic defining function: regular but Levi-flat
    HermitianPolynomial flat = parse_hermitian("0.5*z1 + 0.5*conj(z1)", 2);
    CHECK_THROWS_AS(
        build_hypersurface(2, flat, InsideSign::negative_inside, HermitianPolynomial::zero(2)),
        NotPseudoconvex);
}

TEST_CASE("sample_nodes: contracts and refinement on the sphere") {
    Hypersurface M = sphere3();
    NodeSet nodes = sample_nodes(M, 6);
    CHECK(nodes.weights.minCoeff() > 0.0);
    for (int k = 0; k < nodes.count(); ++k) {
        auto z = nodes.point_z(k);
        CHECK(std::abs(M.u.poly().eval_point(z).real()) < 1e-10);
    }
    const double vol = nodes.weights.sum();
    NodeSet fine = sample_nodes(M, 12);
    const double volf = fine.weights.sum();
    CHECK(std::abs(vol - volf) < 1e-4 * std::abs(volf));

    // analytic pin of the volume convention: theta ^ dtheta = 8 dsigma on S^3
    CHECK(std::abs(vol - 8.0 * 2.0 * M_PI * M_PI) < 1e-8 * vol);

    // odd symmetry
    double odd = 0.0;
    for (int k = 0; k < nodes.count(); ++k) {
        auto z = nodes.point_z(k);
        odd += nodes.weights(k) * z[0].real();
    }
    CHECK(std::abs(odd) < 1e-8);
}

TEST_CASE("sample_nodes: quadrature exactness vs radial-reduction closed forms") {
    Hypersurface M = sphere3();
    NodeSet nodes = sample_nodes(M, 6);
    const double ratio = nodes.weights.sum() / sphere3_monomial_integral(0, 0);
    // degree <= 2 monomials
    struct Mono {
        int a1, b1, a2, b2;
    };
    std::vector<Mono> monos = {{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 0, 0}, {0, 1, 0, 0},
                               {0, 0, 1, 0}, {1, 0, 0, 1}, {2, 0, 0, 0}, {0, 0, 2, 0}};
    for (const auto& m : monos) {
        const double q = quad_monomial(nodes, m.a1, m.b1, m.a2, m.b2);
        double closed = 0.0;
        if (m.a1 == m.b1 && m.a2 == m.b2) closed = sphere3_monomial_integral(m.a1, m.a2);
        CHECK(std::abs(q - ratio * closed) < 1e-6 * std::max(1.0, std::abs(ratio * closed)));
    }
}

TEST_CASE("sample_nodes: ellipsoid weights positive, nodes on surface") {
    Hypersurface M = ellipsoid3();
    NodeSet nodes = sample_nodes(M, 5);
    CHECK(nodes.weights.minCoeff() > 0.0);
    for (int k = 0; k < nodes.count(); ++k) {
        auto z = nodes.point_z(k);
        CHECK(std::abs(M.u.poly().eval_point(z).real()) < 1e-10);
    }
}

TEST_CASE("sample_nodes: radial projection failure paths") {
    // sphere of radius sqrt(0.5) centered at 0.8 on the x1 axis: the origin
    // lies outside, so rays from it cannot parametrize the surface
    HermitianPolynomial shifted = parse_hermitian(
        "z1*conj(z1) + z2*conj(z2) - 0.8*z1 - 0.8*conj(z1) + 0.14", 2);
    Hypersurface M;
    M.n = 2;
    M.u = shifted;
    M.inside_sign = InsideSign::negative_inside;
    M.phi = HermitianPolynomial::zero(2);
    CHECK_THROWS_AS(sample_nodes(M, 4), RadialProjectionFailed);
}

TEST_CASE("build_frames: contact contracts on the sphere") {
    Hypersurface M = sphere3();
    NodeSet nodes = sample_nodes(M, 5);
    FrameField F = build_frames(M, nodes);
    CHECK(F.theta_T_err.maxCoeff() < 1e-10);
    CHECK(F.reeb_flow_err.maxCoeff() < 1e-8);
    CHECK(F.admissibility_err.maxCoeff() < 1e-8);
    CHECK(F.unitarity_err.maxCoeff() < 1e-9);
}

TEST_CASE("build_frames: Reeb matches the circle-action flow oracle on S^3") {
    Hypersurface M = sphere3();
    NodeSet nodes = sample_nodes(M, 4);
    FrameField F = build_frames(M, nodes);
    const double h = 1e-4;
    for (int k = 0; k < nodes.count(); k += 7) {
        auto z = nodes.point_z(k);
        // central difference of the flow (z1,z2) -> (e^{it} z1, e^{it} z2)
        std::array<Cplx, 2> v;
        for (int j = 0; j < 2; ++j)
            v[j] = (std::exp(Cplx(0, h)) * z[j] - std::exp(Cplx(0, -h)) * z[j]) / (2 * h);
        // theta(v) with theta = c dz + conj(c) dzbar
        Cplx thv(0, 0);
        for (int j = 0; j < 2; ++j) thv += F.theta_c(k, j) * v[j];
        const double scale = 2.0 * thv.real();
        for (int j = 0; j < 2; ++j) CHECK(std::abs(F.T(k, j) - v[j] / scale) < 1e-7);
    }
}

TEST_CASE("build_frames: contact rescaling covariance theta -> e^c theta") {
    Hypersurface M1 = sphere3("0.1*z1 + 0.1*conj(z1)"); // phi = 0.2 Re z1
    NodeSet nodes = sample_nodes(M1, 4);
    FrameField F1 = build_frames(M1, nodes);
    // same phi plus a constant c
    Hypersurface M2 = sphere3("0.1*z1 + 0.1*conj(z1) + 0.3");
    FrameField F2 = build_frames(M2, nodes);
    const double ec = std::exp(0.3);
    for (int k = 0; k < nodes.count(); k += 11)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(F2.theta_c(k, j) - ec * F1.theta_c(k, j)) <
                  1e-12 * std::max(1.0, std::abs(F1.theta_c(k, j))));
    // frame contracts hold for the rescaled structure as well
    CHECK(F1.theta_T_err.maxCoeff() < 1e-10);
    CHECK(F1.admissibility_err.maxCoeff() < 1e-8);
    CHECK(F1.unitarity_err.maxCoeff() < 1e-9);
}

TEST_CASE("compute_invariants: S^3 is torsion-free with constant curvature") {
    Hypersurface M = sphere3();
    for (int res : {4, 6}) {
        NodeSet nodes = sample_nodes(M, res);
        FrameField F = build_frames(M, nodes);
        PseudoHermitianInvariants inv = compute_invariants(F);
        CHECK(inv.torsion_max_abs() < 1e-6);
        const auto [mean, sd] = weighted_stats(nodes, inv.R);
        CHECK(sd / std::abs(mean) < 1e-5);
        CHECK(inv.max_structure_residual < 1e-6);
        // reality and symmetry of A are implicit for n=2 (1x1)
        MESSAGE("S3 R mean = ", mean, " at resolution ", res);
    }
}

TEST_CASE("compute_invariants: Hermitian ellipsoid is sphere-equivalent") {
    // |z1|^2 + 2|z2|^2 = 1 is the image of S^3 under (z1,z2) -> (z1, z2/sqrt 2),
    // a complex-linear map, and the contact form pulls back to the round one;
    // its invariants therefore coincide with the sphere's.
    Hypersurface M = ellipsoid3();
    NodeSet nodes = sample_nodes(M, 5);
    FrameField F = build_frames(M, nodes);
    PseudoHermitianInvariants inv = compute_invariants(F);
    CHECK(inv.torsion_max_abs() < 1e-6);
    const auto [mean, sd] = weighted_stats(nodes, inv.R);
    CHECK(sd / std::abs(mean) < 1e-5);
}

TEST_CASE("compute_invariants: real ellipsoid curvature is not constant") {
    Hypersurface M = real_ellipsoid3();
    double prev_ratio = -1.0;
    for (int res : {7, 9}) {
        NodeSet nodes = sample_nodes(M, res);
        FrameField F = build_frames(M, nodes);
        PseudoHermitianInvariants inv = compute_invariants(F);
        const auto [mean, sd] = weighted_stats(nodes, inv.R);
        const double ratio = sd / std::abs(mean);
        CHECK(ratio > 0.01);
        if (prev_ratio > 0) CHECK(std::abs(ratio - prev_ratio) < 0.01 * prev_ratio + 1e-3);
        prev_ratio = ratio;
    }
}

TEST_CASE("frames and invariants on S^5 (smoke)") {
    Hypersurface M = sphere5();
    NodeSet nodes = sample_nodes(M, 2);
    FrameField F = build_frames(M, nodes);
    CHECK(F.theta_T_err.maxCoeff() < 1e-10);
    CHECK(F.admissibility_err.maxCoeff() < 1e-8);
    CHECK(F.unitarity_err.maxCoeff() < 1e-9);
    PseudoHermitianInvariants inv = compute_invariants(F);
    CHECK(inv.torsion_max_abs() < 1e-6);
    const auto [mean, sd] = weighted_stats(nodes, inv.R);
    CHECK(sd / std::abs(mean) < 1e-5);
    // torsion symmetry check is meaningful for n = 3
    for (const auto& A : inv.A)
        CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}
