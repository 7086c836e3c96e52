#include "crlab/space.hpp"

#include "crlab/errors.hpp"

namespace crlab {

namespace {

// Canonical real monomial family spanning the real-valued restrictions:
// Re and Im of z^a zbar^b over canonical bidegree representatives.
std::vector<ComplexPolynomial> real_monomials(int n, int degree) {
    std::vector<ComplexPolynomial> fam;
    std::vector<int> e(2 * n, 0);
    const Cplx half(0.5, 0.0);
    const Cplx mhalf_i(0.0, -0.5);
    while (true) {
        int tot = 0;
        for (int v : e) tot += v;
        if (tot <= degree) {
            Exponents ex;
            for (int i = 0; i < n; ++i) {
                ex.a[i] = static_cast<std::uint16_t>(e[i]);
                ex.b[i] = static_cast<std::uint16_t>(e[n + i]);
            }
            Exponents conj_ex;
            conj_ex.a = ex.b;
            conj_ex.b = ex.a;
            if (!(conj_ex < ex)) { // canonical representative: ex <= conj(ex)
                ComplexPolynomial mono(n);
                mono.add_term(ex, Cplx(1.0, 0.0));
                ComplexPolynomial re = (mono + mono.conjugate()) * half;
                if (!re.empty()) fam.push_back(re);
                if (conj_ex != ex) {
                    ComplexPolynomial im = (mono - mono.conjugate()) * mhalf_i;
                    if (!im.empty()) fam.push_back(im);
                }
            }
        }
        int k = 0;
        while (k < 2 * n) {
            if (++e[k] <= degree) break;
            e[k] = 0;
            ++k;
        }
        if (k == 2 * n) break;
    }
    return fam;
}

} // namespace

Eigen::VectorXcd DiscreteFunctionSpace::coeffs_of(const ComplexPolynomial& p) const {
    const int K = node_count();
    Eigen::VectorXcd vals(K);
    for (int k = 0; k < K; ++k) vals(k) = p.eval_point(frames.nodes.point_z(k));
    return project(vals);
}

const DiscreteFunctionSpace::SecondDerivs& DiscreteFunctionSpace::second_derivs() const {
    if (second_built_) return second_;
    const int nvar = n();
    const int K = node_count();
    second_.zz.assign(nvar, std::vector<Eigen::MatrixXcd>(nvar));
    second_.zzb.assign(nvar, std::vector<Eigen::MatrixXcd>(nvar));
    for (int i = 0; i < nvar; ++i)
        for (int j = 0; j < nvar; ++j) {
            second_.zz[i][j].resize(K, dim);
            second_.zzb[i][j].resize(K, dim);
        }
    for (int m = 0; m < dim; ++m) {
        for (int i = 0; i < nvar; ++i) {
            const ComplexPolynomial di = basis[m].wirtinger(true, i + 1);
            for (int j = 0; j < nvar; ++j) {
                const ComplexPolynomial dij = di.wirtinger(true, j + 1);
                const ComplexPolynomial dijb = di.wirtinger(false, j + 1);
                for (int k = 0; k < K; ++k) {
                    const auto z = frames.nodes.point_z(k);
                    second_.zz[i][j](k, m) = dij.eval_point(z);
                    second_.zzb[i][j](k, m) = dijb.eval_point(z);
                }
            }
        }
    }
    second_built_ = true;
    return second_;
}

DiscreteFunctionSpace build_space(const FrameField& frames, int degree) {
    if (degree < 1) throw ValidationError("basis degree must be >= 1");
    DiscreteFunctionSpace sp;
    sp.frames = frames;
    sp.degree = degree;

    const int n = frames.surface.n;
    const int K = frames.nodes.count();
    std::vector<ComplexPolynomial> raw = real_monomials(n, degree);
    const int R = static_cast<int>(raw.size());

    Eigen::MatrixXd E(K, R);
    for (int k = 0; k < K; ++k) {
        const auto z = frames.nodes.point_z(k);
        for (int m = 0; m < R; ++m) E(k, m) = raw[m].eval_point(z).real();
    }
    const Eigen::VectorXd& w = frames.nodes.weights;
    Eigen::MatrixXd G = E.transpose() * w.asDiagonal() * E;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    if (!(lmax > 0)) throw RankCollapse("Gram matrix identically zero");
    std::vector<int> keep;
    for (int i = 0; i < lam.size(); ++i)
        if (lam(i) > 1e-10 * lmax) keep.push_back(i);
    if (keep.empty()) throw RankCollapse("no directions survive rank reduction");
    const int dim = static_cast<int>(keep.size());
    if (K < 4 * dim)
        throw ValidationError("node count below 4x basis size; raise the resolution");

    Eigen::MatrixXd V(R, dim);
    for (int c = 0; c < dim; ++c)
        V.col(c) = es.eigenvectors().col(keep[c]) / std::sqrt(lam(keep[c]));

    sp.dim = dim;
    sp.values = E * V;
    sp.basis.reserve(dim);
    for (int c = 0; c < dim; ++c) {
        ComplexPolynomial p(n);
        for (int m = 0; m < R; ++m)
            if (std::abs(V(m, c)) > 0) p += raw[m] * Cplx(V(m, c), 0.0);
        p.normalize();
        sp.basis.push_back(p);
    }

    sp.dz.assign(n, Eigen::MatrixXcd(K, dim));
    sp.dzb.assign(n, Eigen::MatrixXcd(K, dim));
    for (int m = 0; m < dim; ++m) {
        for (int i = 0; i < n; ++i) {
            const ComplexPolynomial di = sp.basis[m].wirtinger(true, i + 1);
            const ComplexPolynomial dib = sp.basis[m].wirtinger(false, i + 1);
            for (int k = 0; k < K; ++k) {
                const auto z = frames.nodes.point_z(k);
                sp.dz[i](k, m) = di.eval_point(z);
                sp.dzb[i](k, m) = dib.eval_point(z);
            }
        }
    }
    return sp;
}

} // namespace crlab
