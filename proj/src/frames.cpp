#include "crlab/frames.hpp"

#include "crlab/geometry.hpp"

namespace crlab {

namespace {

template <int NC>
void build_frames_impl(const Hypersurface& M, const NodeSet& nodes, FrameField& out) {
    constexpr int NF = NC - 1;
    const ComplexPolynomial upos = M.u_positive_inside();
    const ComplexPolynomial phi = M.phi.poly();
    SurfaceTables<NC> t = SurfaceTables<NC>::make(upos, M.has_phi() ? &phi : nullptr);

    const int K = nodes.count();
    out.T.resize(K, NC);
    out.theta_c.resize(K, NC);
    out.Z.assign(NF, Eigen::MatrixXcd(K, NC));
    out.thA_c.assign(NF, Eigen::MatrixXcd(K, NC));
    out.thA_cb.assign(NF, Eigen::MatrixXcd(K, NC));
    out.theta_T_err.resize(K);
    out.reeb_flow_err.resize(K);
    out.admissibility_err.resize(K);
    out.unitarity_err.resize(K);

    for (int k = 0; k < K; ++k) {
        double x[2 * NC];
        for (int i = 0; i < 2 * NC; ++i) x[i] = nodes.points(k, i);
        const auto p = point_from_real<NC>(x);
        const auto F = frame_at(t, p);

        for (int j = 0; j < NC; ++j) {
            out.T(k, j) = F.T.a[j];
            out.theta_c(k, j) = F.contact.theta.c[j];
        }
        for (int a = 0; a < NF; ++a)
            for (int j = 0; j < NC; ++j) {
                out.Z[a](k, j) = F.Z[a].a[j];
                out.thA_c[a](k, j) = F.thA[a].c[j];
                out.thA_cb[a](k, j) = F.thA[a].cb[j];
            }

        out.theta_T_err(k) = std::abs(pair(F.contact.theta, F.T) - Cplx(1.0, 0.0));
        out.reeb_flow_err(k) = F.reeb_residual;

        double adm = 0.0;
        for (int a = 0; a < NF; ++a) adm = std::max(adm, std::abs(pair(F.thA[a], F.T)));
        // dtheta = i sum theta^a ^ theta^abar on all frame pairs
        Two<Cplx, NC> rhs{};
        for (int a = 0; a < NF; ++a)
            rhs = two_add(rhs, wedge(F.thA[a], conj_cov(F.thA[a])));
        rhs = two_scale(Cplx(0.0, 1.0), rhs);
        std::vector<Vec<Cplx, NC>> basis;
        basis.push_back(F.T);
        for (int a = 0; a < NF; ++a) basis.push_back(F.Z[a]);
        for (int a = 0; a < NF; ++a) basis.push_back(conj_vec(F.Z[a]));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                adm = std::max(adm, std::abs(F.contact.dtheta(basis[i], basis[j]) -
                                             rhs(basis[i], basis[j])));
        out.admissibility_err(k) = adm;

        double un = 0.0;
        for (int a = 0; a < NF; ++a)
            for (int b = 0; b < NF; ++b) {
                const Cplx lev =
                    Cplx(0.0, -1.0) * F.contact.dtheta(F.Z[a], conj_vec(F.Z[b]));
                un = std::max(un, std::abs(lev - (a == b ? Cplx(1, 0) : Cplx(0, 0))));
            }
        out.unitarity_err(k) = un;
    }
}

template <int NC>
void invariants_impl(const FrameField& frames, PseudoHermitianInvariants& out) {
    constexpr int NF = NC - 1;
    const Hypersurface& M = frames.surface;
    const ComplexPolynomial upos = M.u_positive_inside();
    const ComplexPolynomial phi = M.phi.poly();
    SurfaceTables<NC> t = SurfaceTables<NC>::make(upos, M.has_phi() ? &phi : nullptr);

    const int K = frames.count();
    out.R.resize(K);
    out.A.assign(K, Eigen::MatrixXcd(NF, NF));
    out.structure_residual.resize(K);

    for (int k = 0; k < K; ++k) {
        double x[2 * NC];
        for (int i = 0; i < 2 * NC; ++i) x[i] = frames.nodes.points(k, i);
        const auto p = point_from_real<NC>(x);
        const auto C = connection_at(t, p);
        const auto Alow = torsion_lowered(C);
        for (int a = 0; a < NF; ++a)
            for (int b = 0; b < NF; ++b) out.A[k](a, b) = Alow[a][b];
        out.R(k) = scalar_curvature_at(t, p).real();
        out.structure_residual(k) = structure_residual<NC>(C);
    }
    out.max_structure_residual = out.structure_residual.maxCoeff();
    if (!(out.max_structure_residual < 1e-4))
        throw FitResidualTooLarge("structure-equation residual above 1e-4");
}

} // namespace

FrameField build_frames(const Hypersurface& M, const NodeSet& nodes) {
    FrameField out;
    out.surface = M;
    out.nodes = nodes;
    switch (M.n) {
        case 2: build_frames_impl<2>(M, nodes, out); break;
        case 3: build_frames_impl<3>(M, nodes, out); break;
        default: throw DimensionUnsupported("ambient dimension must be 2 or 3");
    }
    return out;
}

PseudoHermitianInvariants compute_invariants(const FrameField& frames) {
    PseudoHermitianInvariants out;
    switch (frames.surface.n) {
        case 2: invariants_impl<2>(frames, out); break;
        case 3: invariants_impl<3>(frames, out); break;
        default: throw DimensionUnsupported("ambient dimension must be 2 or 3");
    }
    return out;
}

} // namespace crlab
