#include "crlab/hypersurface.hpp"

#include <cmath>
#include <random>

#include "crlab/geometry.hpp"

namespace crlab {

namespace {

// Deterministic uniform deviates (bit-stable across platforms).
struct DetRng {
    std::mt19937_64 g;
    explicit DetRng(std::uint64_t seed) : g(seed) {}
    double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    double sym() { return 2.0 * u01() - 1.0; }
};

template <int NC>
void validate_surface(const Hypersurface& M) {
    SurfaceTables<NC> tneg = SurfaceTables<NC>::make(M.u_negative_inside(), nullptr);
    DetRng rng(42);
    const int kProbes = 48;
    int accepted = 0;
    for (int trial = 0; trial < 20 * kProbes && accepted < kProbes; ++trial) {
        // random start near the unit shell, Newton-projected onto {u=0}
        double x[2 * NC];
        double norm2 = 0.0;
        for (int i = 0; i < 2 * NC; ++i) {
            x[i] = rng.sym();
            norm2 += x[i] * x[i];
        }
        if (norm2 < 1e-4) continue;
        const double scale = (0.5 + rng.u01()) / std::sqrt(norm2);
        for (int i = 0; i < 2 * NC; ++i) x[i] *= scale;

        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const auto p = point_from_real<NC>(x);
            const Cplx uval = tneg.u.eval(p.z.data(), p.zb.data());
            std::array<Cplx, NC> uz;
            double g2 = 0.0;
            for (int i = 0; i < NC; ++i) {
                uz[i] = tneg.du[i].eval(p.z.data(), p.zb.data());
                g2 += 4.0 * std::norm(uz[i]); // |grad u|^2 in real coords
            }
            if (g2 < 1e-16) break; // stationary point; resample
            if (std::abs(uval.real()) < 1e-12) {
                ok = true;
                break;
            }
            // x <- x - u * grad u / |grad u|^2 ; grad in real coords
            for (int j = 0; j < NC; ++j) {
                x[2 * j] -= uval.real() * 2.0 * uz[j].real() / g2;
                x[2 * j + 1] -= uval.real() * (-2.0 * uz[j].imag()) / g2;
            }
            if (std::abs(x[0]) > 1e3) break;
        }
        if (!ok) continue;
        ++accepted;

        const auto p = point_from_real<NC>(x);
        std::array<Cplx, NC> uz;
        double gnorm = 0.0;
        for (int i = 0; i < NC; ++i) {
            uz[i] = tneg.du[i].eval(p.z.data(), p.zb.data());
            gnorm += 4.0 * std::norm(uz[i]);
        }
        gnorm = std::sqrt(gnorm);
        if (!(gnorm > 1e-8)) throw NotRegular("gradient of u below 1e-8 on probe set");

        // Levi form of the negative-inside orientation on the holomorphic
        // tangent space, with a Euclidean-normalized pivot basis.
        int piv = 0;
        double best = std::abs(uz[0]);
        for (int j = 1; j < NC; ++j)
            if (std::abs(uz[j]) > best) {
                best = std::abs(uz[j]);
                piv = j;
            }
        Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(NC - 1, NC);
        {
            int a = 0;
            for (int j = 0; j < NC; ++j) {
                if (j == piv) continue;
                W(a, j) = uz[piv];
                W(a, piv) = -uz[j];
                W.row(a) /= W.row(a).norm();
                ++a;
            }
        }
        Eigen::MatrixXcd H(NC, NC);
        for (int i = 0; i < NC; ++i)
            for (int j = 0; j < NC; ++j)
                H(i, j) = tneg.hess[i][j].eval(p.z.data(), p.zb.data());
        Eigen::MatrixXcd L = W * H * W.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L);
        if (!(es.eigenvalues().minCoeff() > 1e-8))
            throw NotPseudoconvex("Levi form not positive definite on probe set");
    }
    if (accepted < kProbes / 2)
        throw NotRegular("could not locate the zero set from probe points");
}

// Find the unique positive root of s -> u_pos(s * xi) along the ray.
template <int NC>
double radial_root(const SurfaceTables<NC>& tpos, const double* xi, double smax) {
    auto eval_u = [&](double s) {
        double x[2 * NC];
        for (int i = 0; i < 2 * NC; ++i) x[i] = s * xi[i];
        const auto p = point_from_real<NC>(x);
        return tpos.u.eval(p.z.data(), p.zb.data()).real();
    };
    const double u0 = eval_u(0.0);
    if (!(u0 > 0.0)) throw RadialProjectionFailed("ray center is not inside the domain");
    const int kScan = 256;
    int crossings = 0;
    double lo = 0.0, hi = 0.0;
    double prev = u0, sprev = 0.0;
    for (int i = 1; i <= kScan; ++i) {
        const double s = smax * static_cast<double>(i) / kScan;
        const double v = eval_u(s);
        if (prev > 0.0 && v <= 0.0) {
            ++crossings;
            if (crossings == 1) {
                lo = sprev;
                hi = s;
            }
        } else if (prev <= 0.0 && v > 0.0) {
            ++crossings; // re-entry: not star-shaped along this ray
        }
        prev = v;
        sprev = s;
    }
    if (crossings == 0) throw RadialProjectionFailed("no boundary crossing along ray");
    if (crossings > 1) throw RadialProjectionFailed("multiple boundary crossings along ray");
    // bisection then Newton polish
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eval_u(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        double x[2 * NC];
        for (int i = 0; i < 2 * NC; ++i) x[i] = s * xi[i];
        const auto p = point_from_real<NC>(x);
        const double v = tpos.u.eval(p.z.data(), p.zb.data()).real();
        double dv = 0.0; // d/ds u(s xi)
        for (int j = 0; j < NC; ++j) {
            const Cplx uzj = tpos.du[j].eval(p.z.data(), p.zb.data());
            dv += 2.0 * (uzj * Cplx(xi[2 * j], xi[2 * j + 1])).real();
        }
        if (std::abs(dv) < 1e-14) break;
        s -= v / dv;
    }
    return s;
}

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on Legendre polynomial over [-1,1]
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = 0.5 * (1.0 + t);
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Parameter chart of the unit sphere S^{2NC-1}: torus angles plus a simplex
// of squared moduli (Duffy substitution for NC = 3).
template <int NC>
struct SphereChart; // Psi(q) and dPsi/dq_k as real 2NC-vectors

template <>
struct SphereChart<2> {
    // q = (t, xi1, xi2); Psi = (sqrt(1-t) e^{i xi1}, sqrt(t) e^{i xi2})
    static constexpr int kParams = 3;
    static void eval(const double* q, double* psi, double* dpsi /* kParams x 4 */) {
        const double t = q[0], x1 = q[1], x2 = q[2];
        const double r1 = std::sqrt(1.0 - t), r2 = std::sqrt(t);
        const double c1 = std::cos(x1), s1 = std::sin(x1);
        const double c2 = std::cos(x2), s2 = std::sin(x2);
        psi[0] = r1 * c1;
        psi[1] = r1 * s1;
        psi[2] = r2 * c2;
        psi[3] = r2 * s2;
        const double dr1 = -0.5 / r1, dr2 = 0.5 / r2;
        double* dt = dpsi + 0 * 4;
        dt[0] = dr1 * c1;
        dt[1] = dr1 * s1;
        dt[2] = dr2 * c2;
        dt[3] = dr2 * s2;
        double* d1 = dpsi + 1 * 4;
        d1[0] = -r1 * s1;
        d1[1] = r1 * c1;
        d1[2] = 0.0;
        d1[3] = 0.0;
        double* d2 = dpsi + 2 * 4;
        d2[0] = 0.0;
        d2[1] = 0.0;
        d2[2] = -r2 * s2;
        d2[3] = r2 * c2;
    }
};

template <>
struct SphereChart<3> {
    // q = (a, b, xi1, xi2, xi3); t1 = a, t2 = (1-a)b, t3 = (1-a)(1-b)
    static constexpr int kParams = 5;
    static void eval(const double* q, double* psi, double* dpsi /* kParams x 6 */) {
        const double a = q[0], b = q[1];
        const double t1 = a, t2 = (1.0 - a) * b, t3 = (1.0 - a) * (1.0 - b);
        const double r1 = std::sqrt(t1), r2 = std::sqrt(t2), r3 = std::sqrt(t3);
        const double c[3] = {std::cos(q[2]), std::cos(q[3]), std::cos(q[4])};
        const double s[3] = {std::sin(q[2]), std::sin(q[3]), std::sin(q[4])};
        const double r[3] = {r1, r2, r3};
        for (int j = 0; j < 3; ++j) {
            psi[2 * j] = r[j] * c[j];
            psi[2 * j + 1] = r[j] * s[j];
        }
        // dr_j/da and /db
        const double dt1[2] = {1.0, 0.0};
        const double dt2[2] = {-b, 1.0 - a};
        const double dt3[2] = {-(1.0 - b), -(1.0 - a)};
        const double* dts[3] = {dt1, dt2, dt3};
        for (int k = 0; k < 2; ++k) {
            double* row = dpsi + k * 6;
            for (int j = 0; j < 3; ++j) {
                const double drj = 0.5 * dts[j][k] / r[j];
                row[2 * j] = drj * c[j];
                row[2 * j + 1] = drj * s[j];
            }
        }
        for (int k = 0; k < 3; ++k) {
            double* row = dpsi + (2 + k) * 6;
            for (int i = 0; i < 6; ++i) row[i] = 0.0;
            row[2 * k] = -r[k] * s[k];
            row[2 * k + 1] = r[k] * c[k];
        }
    }
};

template <int NC>
NodeSet sample_nodes_impl(const Hypersurface& M, int resolution) {
    const ComplexPolynomial upos = M.u_positive_inside();
    const ComplexPolynomial phi = M.phi.poly();
    SurfaceTables<NC> t = SurfaceTables<NC>::make(upos, M.has_phi() ? &phi : nullptr);

    constexpr int NR = 2 * NC;
    constexpr int NP = SphereChart<NC>::kParams;
    const int nt = std::max(2, resolution);
    const int nxi = std::max(4, 2 * resolution);

    std::vector<double> gx, gw;
    gauss_legendre01(nt, gx, gw);
    const double wxi = 2.0 * M_PI / nxi;

    // enumerate the parameter grid
    std::vector<std::array<double, NP>> qs;
    std::vector<double> ws;
    if constexpr (NC == 2) {
        for (int it = 0; it < nt; ++it)
            for (int i1 = 0; i1 < nxi; ++i1)
                for (int i2 = 0; i2 < nxi; ++i2) {
                    qs.push_back({gx[it], wxi * i1, wxi * i2});
                    ws.push_back(gw[it] * wxi * wxi);
                }
    } else {
        for (int ia = 0; ia < nt; ++ia)
            for (int ib = 0; ib < nt; ++ib)
                for (int i1 = 0; i1 < nxi; ++i1)
                    for (int i2 = 0; i2 < nxi; ++i2)
                        for (int i3 = 0; i3 < nxi; ++i3) {
                            qs.push_back({gx[ia], gx[ib], wxi * i1, wxi * i2, wxi * i3});
                            // Duffy Jacobian (1-a)
                            ws.push_back(gw[ia] * gw[ib] * (1.0 - gx[ia]) * wxi * wxi * wxi);
                        }
    }

    const int K = static_cast<int>(qs.size());
    NodeSet out;
    out.points.resize(K, NR);
    out.weights.resize(K);
    out.resolution = resolution;

    for (int k = 0; k < K; ++k) {
        double psi[NR], dpsi[NP * NR];
        SphereChart<NC>::eval(qs[k].data(), psi, dpsi);
        const double r = radial_root<NC>(t, psi, 8.0);
        double x[NR];
        for (int i = 0; i < NR; ++i) x[i] = r * psi[i];
        const auto p = point_from_real<NC>(x);
        const auto ct = contact_at(t, p);
        // dr along each parameter direction from implicit differentiation
        const double dur = [&] {
            double acc = 0.0;
            for (int j = 0; j < NC; ++j)
                acc += 2.0 * (ct.uz[j] * Cplx(psi[2 * j], psi[2 * j + 1])).real();
            return acc;
        }();
        if (std::abs(dur) < 1e-12)
            throw RadialProjectionFailed("ray tangent to the hypersurface");
        std::vector<Vec<Cplx, NC>> tang;
        for (int kp = 0; kp < NP; ++kp) {
            const double* dp = dpsi + kp * NR;
            double duv = 0.0;
            for (int j = 0; j < NC; ++j)
                duv += 2.0 * (ct.uz[j] * Cplx(dp[2 * j], dp[2 * j + 1])).real();
            const double dr = -r * duv / dur;
            Vec<Cplx, NC> v;
            for (int j = 0; j < NC; ++j) {
                const Cplx comp(r * dp[2 * j] + dr * psi[2 * j],
                                r * dp[2 * j + 1] + dr * psi[2 * j + 1]);
                v.a[j] = comp;
                v.ab[j] = std::conj(comp);
            }
            tang.push_back(v);
        }
        const Cplx dens = volume_density(ct, tang);
        out.weights(k) = ws[k] * std::abs(dens.real());
        for (int i = 0; i < NR; ++i) out.points(k, i) = x[i];
    }
    if (!(out.weights.minCoeff() > 0.0))
        throw RadialProjectionFailed("degenerate volume density on grid");
    return out;
}

} // namespace

Hypersurface build_hypersurface(int n, const HermitianPolynomial& u, InsideSign sign,
                                const HermitianPolynomial& phi) {
    Hypersurface M;
    M.n = n;
    M.u = u;
    M.inside_sign = sign;
    M.phi = phi;
    switch (n) {
        case 2: validate_surface<2>(M); break;
        case 3: validate_surface<3>(M); break;
        default: throw DimensionUnsupported("ambient dimension must be 2 or 3");
    }
    return M;
}

NodeSet sample_nodes(const Hypersurface& M, int resolution) {
    switch (M.n) {
        case 2: return sample_nodes_impl<2>(M, resolution);
        case 3: return sample_nodes_impl<3>(M, resolution);
        default: throw DimensionUnsupported("ambient dimension must be 2 or 3");
    }
}

} // namespace crlab
