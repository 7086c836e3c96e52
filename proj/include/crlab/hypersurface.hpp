#ifndef CRLAB_HYPERSURFACE_HPP
#define CRLAB_HYPERSURFACE_HPP

#include <Eigen/Dense>

#include "crlab/polynomial.hpp"

namespace crlab {

enum class InsideSign { negative_inside, positive_inside };

// Compact hypersurface M = {u = 0} in C^n, strictly pseudoconvex, with an
// optional conformal exponent phi rescaling the contact form.
struct Hypersurface {
    int n = 2;
    HermitianPolynomial u;
    InsideSign inside_sign = InsideSign::negative_inside;
    HermitianPolynomial phi; // zero polynomial when absent

    // Defining polynomial oriented positive inside the domain; the contact
    // form and the Fefferman functional are built from this orientation.
    ComplexPolynomial u_positive_inside() const {
        return inside_sign == InsideSign::positive_inside ? u.poly() : -u.poly();
    }
    // Negative-inside orientation (plurisubharmonic near M); used for the
    // Levi positivity validation.
    ComplexPolynomial u_negative_inside() const {
        return inside_sign == InsideSign::negative_inside ? u.poly() : -u.poly();
    }
    bool has_phi() const { return !phi.is_zero(); }
};

// Quadrature nodes on M with weights for the volume form theta ^ (dtheta)^{n-1}.
struct NodeSet {
    Eigen::MatrixXd points;  // K x 2n real coordinates (x1,y1,...,xn,yn)
    Eigen::VectorXd weights; // positive
    int resolution = 0;

    int count() const { return static_cast<int>(points.rows()); }
    std::vector<Cplx> point_z(int k) const {
        const int n = static_cast<int>(points.cols()) / 2;
        std::vector<Cplx> z(n);
        for (int j = 0; j < n; ++j) z[j] = Cplx(points(k, 2 * j), points(k, 2 * j + 1));
        return z;
    }
};

// Validates regularity and strict pseudoconvexity on a probe set
// (gradient-projected points, independent of the radial chart).
// Throws NotRegular / NotPseudoconvex / DimensionUnsupported.
Hypersurface build_hypersurface(int n, const HermitianPolynomial& u, InsideSign sign,
                                const HermitianPolynomial& phi);

// Nodes by 1-D root-finding along rays from the origin through a parameter
// grid; weights are the exact pullback density of theta ^ (dtheta)^{n-1}
// times the parameter-grid quadrature weights.
// Throws RadialProjectionFailed when a ray misses or crosses M repeatedly.
NodeSet sample_nodes(const Hypersurface& M, int resolution);

// Quadrature sum of values at nodes.
inline double integrate(const NodeSet& nodes, const Eigen::VectorXd& values) {
    return nodes.weights.dot(values);
}

} // namespace crlab

#endif
