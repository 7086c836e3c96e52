#ifndef CRLAB_FRAMES_HPP
#define CRLAB_FRAMES_HPP

#include <Eigen/Dense>
#include <vector>

#include "crlab/hypersurface.hpp"

namespace crlab {

// Per-node contact form, Reeb vector, unitary (1,0) frame and admissible
// coframe with the Levi metric normalized to the identity.
struct FrameField {
    Hypersurface surface;
    NodeSet nodes;

    // complex tuples per node (vectors are their (1,0) components; the Reeb
    // vector is real with T = sum t_j d/dz_j + conj)
    Eigen::MatrixXcd T;                        // K x n
    std::vector<Eigen::MatrixXcd> Z;           // n-1 entries, each K x n
    Eigen::MatrixXcd theta_c;                  // K x n, theta = c dz + conj(c) dzbar
    std::vector<Eigen::MatrixXcd> thA_c;       // coframe dz-components, K x n
    std::vector<Eigen::MatrixXcd> thA_cb;      // coframe dzbar-components, K x n

    // diagnostics per node
    Eigen::VectorXd theta_T_err;      // |theta(T) - 1|
    Eigen::VectorXd reeb_flow_err;    // residual of dtheta(T,.) = 0 system
    Eigen::VectorXd admissibility_err;// |theta^a(T)| + |dtheta - i h theta^a ^ theta^abar|, h = id
    Eigen::VectorXd unitarity_err;    // |Levi(Z_a, Zb_b) - delta|

    int count() const { return nodes.count(); }
    int frame_dim() const { return surface.n - 1; }
};

FrameField build_frames(const Hypersurface& M, const NodeSet& nodes);

// Tanaka-Webster scalar curvature, torsion and structure-equation fit
// residuals at every node.
struct PseudoHermitianInvariants {
    Eigen::VectorXd R;                     // K
    std::vector<Eigen::MatrixXcd> A;       // K entries, (n-1)x(n-1), lowered A_{ab}
    Eigen::VectorXd structure_residual;    // per node
    double max_structure_residual = 0.0;

    double torsion_max_abs() const {
        double m = 0.0;
        for (const auto& a : A) m = std::max(m, a.cwiseAbs().maxCoeff());
        return m;
    }
};

// Extraction threshold: throws FitResidualTooLarge when any node residual
// exceeds 1e-4.
PseudoHermitianInvariants compute_invariants(const FrameField& frames);

} // namespace crlab

#endif
