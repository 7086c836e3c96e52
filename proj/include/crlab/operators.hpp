#ifndef CRLAB_OPERATORS_HPP
#define CRLAB_OPERATORS_HPP

#include <string>

#include "crlab/space.hpp"

namespace crlab {

enum class Symmetry { hermitian, none };

struct OperatorMatrix {
    Eigen::MatrixXcd m;
    Symmetry symmetry = Symmetry::none;
    std::string source;

    double hermiticity_defect() const {
        const double nm = m.norm();
        return nm == 0 ? 0.0 : (m - m.adjoint()).norm() / nm;
    }
};

// Reeb derivative f -> Tf. iT is Hermitian up to quadrature error.
OperatorMatrix op_reeb(const DiscreteFunctionSpace& sp);

// Tangential CR operator into (0,1)-form components scaled by sqrt(w):
// rows are (node, alpha) pairs, so the adjoint is the conjugate transpose.
// conjugate = true gives the (1,0) side (del_b).
Eigen::MatrixXcd dbar_b_matrix(const DiscreteFunctionSpace& sp, bool conjugate = false);

// Kohn Laplacian on functions, box_b = dbar_b^* dbar_b (Galerkin form).
OperatorMatrix op_box_b(const DiscreteFunctionSpace& sp);
// Conjugate Kohn Laplacian, del_b^* del_b.
OperatorMatrix op_box_b_bar(const DiscreteFunctionSpace& sp);
// Sub-Laplacian as the sum of the two quadratic forms.
OperatorMatrix op_sublaplacian(const DiscreteFunctionSpace& sp);

// 1-form valued operator L f = d_b^c f + (Delta_b f) theta (M^3 only).
// Components at nodes on the coframe {theta, theta^1, theta^1bar}.
struct LOperator {
    const DiscreteFunctionSpace* space;
    Eigen::MatrixXcd delta; // sub-Laplacian coefficient matrix
    // node-value components for a coefficient vector
    Eigen::VectorXcd comp_theta(const Eigen::VectorXcd& c) const;
    Eigen::VectorXcd comp_h(const Eigen::VectorXcd& c) const;    // theta^1
    Eigen::VectorXcd comp_hbar(const Eigen::VectorXcd& c) const; // theta^1bar
};
LOperator op_L(const DiscreteFunctionSpace& sp);

// CR Paneitz operator P f = Delta_b^2 f + T^2 f + 4 Im nabla_b(A^{ab} nabla_a f)
// (M^3 only; real matrix on the real basis).
OperatorMatrix op_paneitz(const DiscreteFunctionSpace& sp);

// Factored form P~ f = del_b^* [ (d(Lf)) contracted with T ]; returns the
// real part as the factored Paneitz matrix together with the full complex
// matrix and the max residual of the theta^1 ^ theta^1bar component of d(Lf)
// (which vanishes identically in the continuum).
struct FactoredPaneitz {
    OperatorMatrix real_part;
    Eigen::MatrixXcd full;
    double mixed_component_residual = 0.0;
};
FactoredPaneitz op_paneitz_factored(const DiscreteFunctionSpace& sp);

// CR Q-curvature node values, Q = (4/3)(Delta_b R - 2 Im div^2 A), with the
// curvature term applied through the projected R and the torsion term
// evaluated pointwise (M^3 only).
Eigen::VectorXd q_curvature(const DiscreteFunctionSpace& sp,
                            const PseudoHermitianInvariants& inv);

// Pointwise covariant derivative tables of the basis at every node, used by
// audits: Delta_b f, |Hess_b f|^2 components, gradient, torsion pairing.
struct CovariantTables {
    Eigen::MatrixXcd Zf, Zbf;        // K x dim (n = 2: single frame vector)
    Eigen::MatrixXcd f11, f11b, f1b1, f1b1b; // second covariant components
    Eigen::VectorXcd A11;            // lowered torsion at nodes
    Eigen::VectorXd R;               // scalar curvature at nodes
    Eigen::MatrixXd delta_pointwise; // K x dim: -(f_{1 1bar}+f_{1bar 1}) real part
};
CovariantTables covariant_tables(const DiscreteFunctionSpace& sp);

// Third covariant derivative (f_{1bar}^{1bar})_1 at the nodes for a basis
// coefficient vector; independent reference for the factored operator (S^3).
Eigen::VectorXcd third_cov_1b1b1(const DiscreteFunctionSpace& sp, const Eigen::VectorXcd& c);

// Binary export: row-major float64 (re, im) pairs, little-endian, plus a
// sidecar text file with dimensions and the source tag.
void dump_matrix(const OperatorMatrix& op, const std::string& path);
Eigen::MatrixXcd load_matrix(const std::string& path);

} // namespace crlab

#endif
