#ifndef CRLAB_SPACE_HPP
#define CRLAB_SPACE_HPP

#include <Eigen/Dense>
#include <vector>

#include "crlab/frames.hpp"

namespace crlab {

// Orthonormal basis of restricted polynomials on M up to a total degree,
// over the quadrature inner product <f,g> = sum_k w_k f(p_k) conj(g(p_k)).
//
// The basis functions are real-valued polynomials (real and imaginary parts
// of bidegree monomials, orthonormalized); a real function is then a real
// coefficient vector and conjugation acts entrywise on coefficients, which
// keeps antilinear constructions (Re of an operator) representable.
struct DiscreteFunctionSpace {
    FrameField frames;
    int degree = 0;
    int dim = 0;

    std::vector<ComplexPolynomial> basis;   // real-valued polynomials
    Eigen::MatrixXd values;                 // K x dim, real node values
    std::vector<Eigen::MatrixXcd> dz;       // n tables, K x dim values of d e_j / dz_i
    std::vector<Eigen::MatrixXcd> dzb;      // n tables, d e_j / dzbar_i

    const Eigen::VectorXd& weights() const { return frames.nodes.weights; }
    int node_count() const { return frames.nodes.count(); }
    int n() const { return frames.surface.n; }

    // quadrature inner product of node-value vectors
    Cplx inner_values(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const {
        return (weights().array() * (f.array() * g.array().conjugate()).array()).sum();
    }
    // projection of node values onto the space (coefficients)
    Eigen::VectorXcd project(const Eigen::VectorXcd& node_values) const {
        return values.transpose() * (weights().array() * node_values.array()).matrix();
    }
    Eigen::VectorXcd node_values(const Eigen::VectorXcd& coeff) const {
        return values * coeff;
    }
    // coefficients of the restriction of an ambient polynomial (exact for
    // polynomials of degree <= this->degree)
    Eigen::VectorXcd coeffs_of(const ComplexPolynomial& p) const;

    // lazily built second-derivative tables
    struct SecondDerivs {
        std::vector<std::vector<Eigen::MatrixXcd>> zz;  // [i][j] d2/dz_i dz_j
        std::vector<std::vector<Eigen::MatrixXcd>> zzb; // [i][j] d2/dz_i dzbar_j
    };
    const SecondDerivs& second_derivs() const;

  private:
    mutable SecondDerivs second_;
    mutable bool second_built_ = false;
};

// Builds the orthonormal space; drops singular directions of the raw Gram
// matrix below 1e-10 (relative). Requires node count >= 4x basis size.
// Throws RankCollapse when nothing survives.
DiscreteFunctionSpace build_space(const FrameField& frames, int degree);

} // namespace crlab

#endif
