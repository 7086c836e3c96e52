#ifndef CRLAB_GEOMETRY_HPP
#define CRLAB_GEOMETRY_HPP

#include <array>
#include <vector>

#include "crlab/autodiff.hpp"
#include "crlab/errors.hpp"
#include "crlab/polynomial.hpp"

// Pointwise moving-frame kernel. Every routine is a pure function of the
// evaluation point, templated on the scalar so that running it on jet-seeded
// coordinates yields exact derivatives of the frame fields. Conventions used
// throughout (fixed once, audited by the test suite):
//   - defining polynomial u is oriented positive inside the domain;
//   - theta = e^phi * d^c u with (d^c u)(xi) = du(J xi) = i(del - delbar)u;
//   - d(d^c u) = kDDcFactor * i del delbar u with kDDcFactor = -2;
//   - Levi form L(Z,W) = -i dtheta(Z, conj W), positive definite on the
//     holomorphic tangent space for strictly pseudoconvex M;
//   - unitary frame normalizes L to the identity (h = delta).

namespace crlab {

template <class S, int NC>
struct Pt {
    std::array<S, NC> z{};
    std::array<S, NC> zb{};
};

// Lift a point to jet scalars, seeding the 2*NC real coordinate directions
// (x_1, y_1, ..., x_NC, y_NC).
template <class S, int NC>
Pt<Jet<S, 2 * NC>, NC> lift_point(const Pt<S, NC>& p) {
    Pt<Jet<S, 2 * NC>, NC> q;
    for (int j = 0; j < NC; ++j) {
        Jet<S, 2 * NC> zj;
        zj.v = p.z[j];
        zj.d[2 * j] = S(Cplx(1.0, 0.0));
        zj.d[2 * j + 1] = S(Cplx(0.0, 1.0));
        Jet<S, 2 * NC> zbj;
        zbj.v = p.zb[j];
        zbj.d[2 * j] = S(Cplx(1.0, 0.0));
        zbj.d[2 * j + 1] = S(Cplx(0.0, -1.0));
        q.z[j] = zj;
        q.zb[j] = zbj;
    }
    return q;
}

template <int NC>
Pt<Cplx, NC> point_from_real(const double* x) {
    Pt<Cplx, NC> p;
    for (int j = 0; j < NC; ++j) {
        p.z[j] = Cplx(x[2 * j], x[2 * j + 1]);
        p.zb[j] = std::conj(p.z[j]);
    }
    return p;
}

// Tangent vector sum a_i d/dz_i + ab_i d/dzbar_i. Real vectors have
// ab = conj(a); type (1,0) vectors have ab = 0.
template <class S, int NC>
struct Vec {
    std::array<S, NC> a{};
    std::array<S, NC> ab{};
};

// Covector sum c_i dz_i + cb_i dzbar_i.
template <class S, int NC>
struct Cov {
    std::array<S, NC> c{};
    std::array<S, NC> cb{};
};

template <class S, int NC>
S pair(const Cov<S, NC>& w, const Vec<S, NC>& v) {
    S acc{};
    for (int i = 0; i < NC; ++i) acc = acc + w.c[i] * v.a[i] + w.cb[i] * v.ab[i];
    return acc;
}

template <class S, int NC>
Vec<S, NC> conj_vec(const Vec<S, NC>& v) {
    Vec<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.a[i] = conj_s(v.ab[i]);
        r.ab[i] = conj_s(v.a[i]);
    }
    return r;
}

template <class S, int NC>
Cov<S, NC> conj_cov(const Cov<S, NC>& w) {
    Cov<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.c[i] = conj_s(w.cb[i]);
        r.cb[i] = conj_s(w.c[i]);
    }
    return r;
}

template <class S, int NC>
Cov<S, NC> cov_add(const Cov<S, NC>& x, const Cov<S, NC>& y) {
    Cov<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.c[i] = x.c[i] + y.c[i];
        r.cb[i] = x.cb[i] + y.cb[i];
    }
    return r;
}

template <class S, int NC>
Cov<S, NC> cov_scale(const S& s, const Cov<S, NC>& x) {
    Cov<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.c[i] = s * x.c[i];
        r.cb[i] = s * x.cb[i];
    }
    return r;
}

// 2-form; cc and bb are stored fully antisymmetric, cb[i][j] multiplies
// dz_i ^ dzbar_j.
template <class S, int NC>
struct Two {
    std::array<std::array<S, NC>, NC> cc{};
    std::array<std::array<S, NC>, NC> cb{};
    std::array<std::array<S, NC>, NC> bb{};

    S operator()(const Vec<S, NC>& v, const Vec<S, NC>& w) const {
        S acc{};
        for (int i = 0; i < NC; ++i)
            for (int j = 0; j < NC; ++j) {
                acc = acc + cc[i][j] * v.a[i] * w.a[j];
                acc = acc + bb[i][j] * v.ab[i] * w.ab[j];
                acc = acc + cb[i][j] * (v.a[i] * w.ab[j] - w.a[i] * v.ab[j]);
            }
        return acc;
    }
};

template <class S, int NC>
Two<S, NC> two_add(const Two<S, NC>& x, const Two<S, NC>& y) {
    Two<S, NC> r;
    for (int i = 0; i < NC; ++i)
        for (int j = 0; j < NC; ++j) {
            r.cc[i][j] = x.cc[i][j] + y.cc[i][j];
            r.cb[i][j] = x.cb[i][j] + y.cb[i][j];
            r.bb[i][j] = x.bb[i][j] + y.bb[i][j];
        }
    return r;
}

template <class S, int NC>
Two<S, NC> two_scale(const S& s, const Two<S, NC>& x) {
    Two<S, NC> r;
    for (int i = 0; i < NC; ++i)
        for (int j = 0; j < NC; ++j) {
            r.cc[i][j] = s * x.cc[i][j];
            r.cb[i][j] = s * x.cb[i][j];
            r.bb[i][j] = s * x.bb[i][j];
        }
    return r;
}

template <class S, int NC>
Two<S, NC> wedge(const Cov<S, NC>& x, const Cov<S, NC>& y) {
    Two<S, NC> r;
    for (int i = 0; i < NC; ++i)
        for (int j = 0; j < NC; ++j) {
            r.cc[i][j] = x.c[i] * y.c[j] - x.c[j] * y.c[i];
            r.cb[i][j] = x.c[i] * y.cb[j] - y.c[i] * x.cb[j];
            r.bb[i][j] = x.cb[i] * y.cb[j] - x.cb[j] * y.cb[i];
        }
    return r;
}

// Interior product (contraction on the first slot).
template <class S, int NC>
Cov<S, NC> contract(const Two<S, NC>& w, const Vec<S, NC>& v) {
    Cov<S, NC> r;
    for (int j = 0; j < NC; ++j) {
        S c{}, cb{};
        for (int i = 0; i < NC; ++i) {
            c = c + w.cc[i][j] * v.a[i];
            cb = cb + w.bb[i][j] * v.ab[i];
            cb = cb + w.cb[i][j] * v.a[i];
        }
        for (int jp = 0; jp < NC; ++jp) c = c - w.cb[j][jp] * v.ab[jp];
        r.c[j] = c;
        r.cb[j] = cb;
    }
    return r;
}

// d of a scalar recipe evaluated on lifted coordinates.
template <class S, int NC>
Cov<S, NC> d_scalar(const Jet<S, 2 * NC>& f) {
    Cov<S, NC> r;
    const Cplx half(0.5, 0.0);
    const Cplx mihalf(0.0, -0.5);
    const Cplx pihalf(0.0, 0.5);
    for (int j = 0; j < NC; ++j) {
        r.c[j] = half * f.d[2 * j] + mihalf * f.d[2 * j + 1];
        r.cb[j] = half * f.d[2 * j] + pihalf * f.d[2 * j + 1];
    }
    return r;
}

// Exterior derivative of a covector recipe evaluated on lifted coordinates.
template <class S, int NC>
Two<S, NC> d_cov(const Cov<Jet<S, 2 * NC>, NC>& w) {
    Two<S, NC> r;
    auto add_cc = [&](int i, int j, const S& v) {
        r.cc[i][j] = r.cc[i][j] + v;
        r.cc[j][i] = r.cc[j][i] - v;
    };
    auto add_bb = [&](int i, int j, const S& v) {
        r.bb[i][j] = r.bb[i][j] + v;
        r.bb[j][i] = r.bb[j][i] - v;
    };
    for (int i = 0; i < NC; ++i) {
        const Cov<S, NC> dc = d_scalar<S, NC>(w.c[i]);
        const Cov<S, NC> dcb = d_scalar<S, NC>(w.cb[i]);
        for (int j = 0; j < NC; ++j) {
            // dc_j dz_j ^ dz_i  and  dcb_j dz_j ^ dzbar_i
            add_cc(j, i, dc.c[j]);
            r.cb[i][j] = r.cb[i][j] - dc.cb[j];      // dzbar_j ^ dz_i
            r.cb[j][i] = r.cb[j][i] + dcb.c[j];      // dz_j ^ dzbar_i
            add_bb(j, i, dcb.cb[j]);
        }
    }
    return r;
}

// --- surface description ------------------------------------------------------

template <int NC>
struct SurfaceTables {
    ComplexPolynomial u; // positive-inside orientation
    std::array<ComplexPolynomial, NC> du;
    std::array<std::array<ComplexPolynomial, NC>, NC> hess; // d2u/dz_i dzbar_j
    bool has_phi = false;
    ComplexPolynomial phi;
    std::array<ComplexPolynomial, NC> dphi;

    static SurfaceTables make(const ComplexPolynomial& u_pos, const ComplexPolynomial* phi_opt) {
        SurfaceTables t;
        t.u = u_pos;
        for (int i = 0; i < NC; ++i) {
            t.du[i] = u_pos.wirtinger(true, i + 1);
            for (int j = 0; j < NC; ++j) t.hess[i][j] = t.du[i].wirtinger(false, j + 1);
        }
        if (phi_opt && !phi_opt->empty()) {
            t.has_phi = true;
            t.phi = *phi_opt;
            for (int i = 0; i < NC; ++i) t.dphi[i] = t.phi.wirtinger(true, i + 1);
        }
        return t;
    }
};

template <class S, int NC>
struct ContactPoint {
    std::array<S, NC> uz; // du/dz_i values
    S uval;
    S ephi; // e^phi
    Cov<S, NC> du;
    Cov<S, NC> theta;
    Two<S, NC> dtheta;
};

template <class S, int NC>
ContactPoint<S, NC> contact_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    ContactPoint<S, NC> r;
    r.uval = t.u.eval(p.z.data(), p.zb.data());
    for (int i = 0; i < NC; ++i) r.uz[i] = t.du[i].eval(p.z.data(), p.zb.data());
    for (int i = 0; i < NC; ++i) {
        r.du.c[i] = r.uz[i];
        r.du.cb[i] = conj_s(r.uz[i]);
    }
    // d^c u = i(del - delbar)u
    Cov<S, NC> dcu;
    const Cplx I(0.0, 1.0);
    for (int i = 0; i < NC; ++i) {
        dcu.c[i] = I * r.uz[i];
        dcu.cb[i] = -(I * conj_s(r.uz[i]));
    }
    // d(d^c u) = -2i del delbar u
    Two<S, NC> ddcu;
    for (int i = 0; i < NC; ++i)
        for (int j = 0; j < NC; ++j)
            ddcu.cb[i][j] = Cplx(0.0, -2.0) * t.hess[i][j].eval(p.z.data(), p.zb.data());

    if (t.has_phi) {
        const S phival = t.phi.eval(p.z.data(), p.zb.data());
        r.ephi = exp_s(re_s(phival));
        Cov<S, NC> dphi;
        for (int i = 0; i < NC; ++i) {
            dphi.c[i] = t.dphi[i].eval(p.z.data(), p.zb.data());
            dphi.cb[i] = conj_s(dphi.c[i]);
        }
        r.theta = cov_scale(r.ephi, dcu);
        r.dtheta = two_scale(r.ephi, two_add(wedge(dphi, dcu), ddcu));
    } else {
        r.ephi = S(Cplx(1.0, 0.0));
        r.theta = dcu;
        r.dtheta = ddcu;
    }
    return r;
}

// --- frames --------------------------------------------------------------------

template <class S, int NC>
struct FramePoint {
    ContactPoint<S, NC> contact;
    Vec<S, NC> T;                          // Reeb vector
    std::array<Vec<S, NC>, NC - 1> Z;      // unitary (1,0) frame
    std::array<Cov<S, NC>, NC - 1> thA;    // admissible coframe theta^alpha
    double reeb_residual = 0.0;            // level-0 diagnostic
};

// Real coordinate basis vector e_m (m even: d/dx_j, m odd: d/dy_j).
template <class S, int NC>
Vec<S, NC> coord_vec(int m) {
    Vec<S, NC> v;
    const int j = m / 2;
    if (m % 2 == 0) {
        v.a[j] = S(Cplx(1.0, 0.0));
        v.ab[j] = S(Cplx(1.0, 0.0));
    } else {
        v.a[j] = S(Cplx(0.0, 1.0));
        v.ab[j] = S(Cplx(0.0, -1.0));
    }
    return v;
}

template <class S, int NC>
FramePoint<S, NC> frame_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    constexpr int NR = 2 * NC;
    FramePoint<S, NC> F;
    F.contact = contact_at(t, p);
    const auto& ct = F.contact;

    // Reeb vector: least squares for T = sum t_k e_k and multiplier lam with
    //   dtheta(T, e_m) - lam du(e_m) = 0,  du(T) = 0,  theta(T) = 1.
    std::array<Vec<S, NC>, NR> E;
    for (int m = 0; m < NR; ++m) E[m] = coord_vec<S, NC>(m);
    const int rows = NR + 2, cols = NR + 1;
    std::vector<S> A(rows * cols), b(rows);
    for (int m = 0; m < NR; ++m) {
        for (int k = 0; k < NR; ++k) A[m * cols + k] = re_s(ct.dtheta(E[k], E[m]));
        A[m * cols + NR] = -re_s(pair(ct.du, E[m]));
        b[m] = S{};
    }
    for (int k = 0; k < NR; ++k) A[NR * cols + k] = re_s(pair(ct.du, E[k]));
    b[NR] = S{};
    for (int k = 0; k < NR; ++k) A[(NR + 1) * cols + k] = re_s(pair(ct.theta, E[k]));
    b[NR + 1] = S(Cplx(1.0, 0.0));
    // normal equations
    std::vector<S> M(cols * cols), rhs(cols);
    for (int i = 0; i < cols; ++i) {
        for (int j = 0; j < cols; ++j) {
            S acc{};
            for (int r = 0; r < rows; ++r) acc = acc + A[r * cols + i] * A[r * cols + j];
            M[i * cols + j] = acc;
        }
        S acc{};
        for (int r = 0; r < rows; ++r) acc = acc + A[r * cols + i] * b[r];
        rhs[i] = acc;
    }
    if (!gauss_solve(M, rhs, cols, 1))
        throw DegenerateContact("Reeb system singular");
    for (int j = 0; j < NC; ++j) {
        const S tj = rhs[2 * j] + Cplx(0.0, 1.0) * rhs[2 * j + 1];
        F.T.a[j] = tj;
        F.T.ab[j] = conj_s(tj);
    }
    {
        double res = 0.0;
        for (int r = 0; r < rows; ++r) {
            Cplx acc(0.0, 0.0);
            for (int k = 0; k < cols; ++k) acc += value_of(A[r * cols + k]) * value_of(rhs[k]);
            acc -= value_of(b[r]);
            res += std::norm(acc);
        }
        F.reeb_residual = std::sqrt(res);
        if (!(F.reeb_residual < 1e-6))
            throw DegenerateContact("Reeb residual too large");
    }

    // Raw (1,0) tangent frame with pivot on the largest |u_i|.
    int piv = 0;
    double best = abs_of(ct.uz[0]);
    for (int j = 1; j < NC; ++j) {
        const double v = abs_of(ct.uz[j]);
        if (v > best) {
            best = v;
            piv = j;
        }
    }
    if (!(best > 1e-12)) throw NotRegular("gradient of u vanishes at node");
    std::array<Vec<S, NC>, NC - 1> W;
    {
        int a = 0;
        for (int j = 0; j < NC; ++j) {
            if (j == piv) continue;
            W[a].a[j] = ct.uz[piv];
            W[a].a[piv] = -ct.uz[j];
            ++a;
        }
    }

    // Levi metric L_ab = -i dtheta(W_a, conj W_b); unitary frame by Cholesky.
    constexpr int NF = NC - 1;
    std::array<std::array<S, NF>, NF> L;
    for (int a = 0; a < NF; ++a)
        for (int bq = 0; bq < NF; ++bq)
            L[a][bq] = Cplx(0.0, -1.0) * F.contact.dtheta(W[a], conj_vec(W[bq]));
    // upper-triangular U with L = U^dagger U
    std::array<std::array<S, NF>, NF> U{};
    for (int i = 0; i < NF; ++i) {
        S diag = re_s(L[i][i]);
        for (int k = 0; k < i; ++k) diag = diag - re_s(U[k][i] * conj_s(U[k][i]));
        if (!(value_of(diag).real() > 1e-12))
            throw NotPseudoconvex("Levi form not positive definite at node");
        U[i][i] = sqrt_s(re_s(diag));
        const S di = inv(U[i][i]);
        for (int j = i + 1; j < NF; ++j) {
            S acc = L[i][j];
            for (int k = 0; k < i; ++k) acc = acc - conj_s(U[k][i]) * U[k][j];
            U[i][j] = acc * di;
        }
    }
    // V = U^{-1} (upper triangular)
    std::array<std::array<S, NF>, NF> V{};
    for (int i = 0; i < NF; ++i) {
        V[i][i] = inv(U[i][i]);
        for (int j = i + 1; j < NF; ++j) {
            S acc{};
            for (int k = i; k < j; ++k) acc = acc + V[i][k] * U[k][j];
            V[i][j] = -(acc * inv(U[j][j]));
        }
    }
    for (int al = 0; al < NF; ++al) {
        Vec<S, NC> Zal;
        for (int bq = 0; bq < NF; ++bq) {
            const S f = conj_s(V[bq][al]);
            for (int i = 0; i < NC; ++i) Zal.a[i] = Zal.a[i] + f * W[bq].a[i];
        }
        F.Z[al] = Zal;
    }

    // Admissible coframe: theta^alpha(T) = 0, theta^alpha(Z_beta) = delta,
    // theta^alpha(conj Z_beta) = 0, theta^alpha(N) = 0 for the gradient N.
    Vec<S, NC> N;
    for (int i = 0; i < NC; ++i) {
        N.a[i] = conj_s(ct.uz[i]);
        N.ab[i] = ct.uz[i];
    }
    const int dim = 2 * NC;
    std::vector<S> CM(dim * dim), CB(dim * NF);
    auto fill_row = [&](int row, const Vec<S, NC>& v) {
        for (int i = 0; i < NC; ++i) {
            CM[row * dim + i] = v.a[i];
            CM[row * dim + NC + i] = v.ab[i];
        }
    };
    int row = 0;
    fill_row(row++, F.T);
    for (int bq = 0; bq < NF; ++bq) fill_row(row++, F.Z[bq]);
    for (int bq = 0; bq < NF; ++bq) fill_row(row++, conj_vec(F.Z[bq]));
    fill_row(row++, N);
    for (int al = 0; al < NF; ++al) CB[(1 + al) * NF + al] = S(Cplx(1.0, 0.0));
    if (!gauss_solve(CM, CB, dim, NF))
        throw DegenerateContact("coframe system singular");
    for (int al = 0; al < NF; ++al) {
        Cov<S, NC> th;
        for (int i = 0; i < NC; ++i) {
            th.c[i] = CB[i * NF + al];
            th.cb[i] = CB[(NC + i) * NF + al];
        }
        F.thA[al] = th;
    }
    return F;
}

// Take jet values down one level.
template <class S, int N, int NC>
Vec<S, NC> lower_vec(const Vec<Jet<S, N>, NC>& v) {
    Vec<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.a[i] = v.a[i].v;
        r.ab[i] = v.ab[i].v;
    }
    return r;
}
template <class S, int N, int NC>
Cov<S, NC> lower_cov(const Cov<Jet<S, N>, NC>& v) {
    Cov<S, NC> r;
    for (int i = 0; i < NC; ++i) {
        r.c[i] = v.c[i].v;
        r.cb[i] = v.cb[i].v;
    }
    return r;
}

// --- Tanaka-Webster connection at a point ---------------------------------------

template <class S, int NC>
struct ConnectionPoint {
    FramePoint<S, NC> frame;
    // omega_b^a evaluated on T, Z_g, conj Z_g; Aup[a][b] = A^a_{bbar}
    std::array<std::array<S, NC - 1>, NC - 1> omT;
    std::array<std::array<std::array<S, NC - 1>, NC - 1>, NC - 1> omZ;  // [g][b][a]
    std::array<std::array<std::array<S, NC - 1>, NC - 1>, NC - 1> omZb; // [g][b][a]
    std::array<std::array<S, NC - 1>, NC - 1> Aup;
    std::array<Two<S, NC>, NC - 1> dthA; // exact d theta^alpha
};

// Structure equations in the unitary gauge:
//   d theta^a = theta^b ^ omega_b^a + A^a_{bbar} theta ^ theta^bbar,
//   omega_b^a + conj(omega_a^b) = 0.
// Components are read off directly; over-determined slots become residuals.
template <class S, int NC>
ConnectionPoint<S, NC> connection_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    constexpr int NF = NC - 1;
    ConnectionPoint<S, NC> C;
    const auto lifted = frame_at(t, lift_point<S, NC>(p));
    C.frame = frame_at(t, p);
    for (int al = 0; al < NF; ++al) C.dthA[al] = d_cov<S, NC>(lifted.thA[al]);

    const auto& T = C.frame.T;
    for (int al = 0; al < NF; ++al) {
        for (int bq = 0; bq < NF; ++bq) {
            C.Aup[al][bq] = C.dthA[al](T, conj_vec(C.frame.Z[bq]));
            C.omT[bq][al] = -C.dthA[al](T, C.frame.Z[bq]);
            for (int g = 0; g < NF; ++g)
                C.omZb[g][bq][al] = C.dthA[al](C.frame.Z[bq], conj_vec(C.frame.Z[g]));
        }
    }
    for (int g = 0; g < NF; ++g)
        for (int bq = 0; bq < NF; ++bq)
            for (int al = 0; al < NF; ++al)
                C.omZ[g][bq][al] = -conj_s(C.omZb[g][al][bq]);
    return C;
}

// Residual of the structure equations at level 0 (diagnostic).
template <int NC>
double structure_residual(const ConnectionPoint<Cplx, NC>& C) {
    constexpr int NF = NC - 1;
    double res = 0.0, scale = 0.0;
    const auto& F = C.frame;
    for (int al = 0; al < NF; ++al) {
        // reconstruct d theta^al on all frame pairs and compare
        auto recon = [&](const Vec<Cplx, NC>& X, const Vec<Cplx, NC>& Y,
                         auto omega_of, Cplx thX, Cplx thY,
                         const std::array<Cplx, NF>& thaX, const std::array<Cplx, NF>& thaY,
                         const std::array<Cplx, NF>& thabX, const std::array<Cplx, NF>& thabY) {
            Cplx acc(0.0, 0.0);
            for (int bq = 0; bq < NF; ++bq)
                acc += thaX[bq] * omega_of(bq, Y) - thaY[bq] * omega_of(bq, X);
            for (int bq = 0; bq < NF; ++bq)
                acc += C.Aup[al][bq] * (thX * thabY[bq] - thY * thabX[bq]);
            (void)X;
            (void)Y;
            return acc;
        };
        // gather pairings for the frame basis {T, Z_g, conj Z_g}
        std::vector<Vec<Cplx, NC>> basis;
        basis.push_back(F.T);
        for (int g = 0; g < NF; ++g) basis.push_back(F.Z[g]);
        for (int g = 0; g < NF; ++g) basis.push_back(conj_vec(F.Z[g]));
        auto theta_of = [&](const Vec<Cplx, NC>& v) { return pair(F.contact.theta, v); };
        auto tha_of = [&](const Vec<Cplx, NC>& v) {
            std::array<Cplx, NF> r{};
            for (int g = 0; g < NF; ++g) r[g] = pair(F.thA[g], v);
            return r;
        };
        auto thab_of = [&](const Vec<Cplx, NC>& v) {
            std::array<Cplx, NF> r{};
            for (int g = 0; g < NF; ++g) r[g] = pair(conj_cov(F.thA[g]), v);
            return r;
        };
        auto omega_of = [&](int bq, const Vec<Cplx, NC>& v) {
            // omega_b^al as a covector on the frame: components stored
            Cplx acc = C.omT[bq][al] * theta_of(v);
            const auto ta = tha_of(v);
            const auto tab = thab_of(v);
            for (int g = 0; g < NF; ++g)
                acc += C.omZ[g][bq][al] * ta[g] + C.omZb[g][bq][al] * tab[g];
            return acc;
        };
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                const Cplx lhs = C.dthA[al](basis[i], basis[j]);
                const Cplx rhs = recon(basis[i], basis[j], omega_of, theta_of(basis[i]),
                                       theta_of(basis[j]), tha_of(basis[i]), tha_of(basis[j]),
                                       thab_of(basis[i]), thab_of(basis[j]));
                res += std::norm(lhs - rhs);
                scale += std::norm(lhs);
            }
    }
    // compatibility residual: omega_b^a(X) + conj(omega_a^b(conj X)) = 0
    for (int al = 0; al < NF; ++al)
        for (int bq = 0; bq < NF; ++bq) {
            res += std::norm(C.omT[bq][al] + std::conj(C.omT[al][bq]));
            for (int g = 0; g < NF; ++g)
                res += std::norm(C.omZ[g][bq][al] + std::conj(C.omZb[g][al][bq]));
        }
    return std::sqrt(res) / std::max(1.0, std::sqrt(scale));
}

// omega_b^a reconstructed as an ambient covector (du-component set to zero).
template <class S, int NC>
Cov<S, NC> connection_cov(const ConnectionPoint<S, NC>& C, int bq, int al) {
    constexpr int NF = NC - 1;
    Cov<S, NC> w = cov_scale(C.omT[bq][al], C.frame.contact.theta);
    for (int g = 0; g < NF; ++g) {
        w = cov_add(w, cov_scale(C.omZ[g][bq][al], C.frame.thA[g]));
        w = cov_add(w, cov_scale(C.omZb[g][bq][al], conj_cov(C.frame.thA[g])));
    }
    return w;
}

// Tanaka-Webster scalar curvature from the mixed components of the curvature
// 2-form Omega_a^a = d omega_a^a - omega_a^g ^ omega_g^a.
template <class S, int NC>
S scalar_curvature_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    constexpr int NF = NC - 1;
    const auto Cj = connection_at(t, lift_point<S, NC>(p)); // jets of omega
    const auto C0 = connection_at(t, p);
    S R{};
    for (int al = 0; al < NF; ++al) {
        Two<S, NC> omega_wedge{};
        for (int g = 0; g < NF; ++g)
            omega_wedge = two_add(omega_wedge,
                                  wedge(connection_cov(C0, al, g), connection_cov(C0, g, al)));
        const Two<S, NC> dom = d_cov<S, NC>(connection_cov(Cj, al, al));
        for (int r = 0; r < NF; ++r) {
            const auto Zr = C0.frame.Z[r];
            const auto Zrb = conj_vec(Zr);
            R = R + dom(Zr, Zrb) - omega_wedge(Zr, Zrb);
        }
    }
    return re_s(R);
}

// Lowered torsion A_{ab} (h = delta gauge): A_{ab} = conj(A^a_{bbar}).
template <class S, int NC>
std::array<std::array<S, NC - 1>, NC - 1> torsion_lowered(const ConnectionPoint<S, NC>& C) {
    constexpr int NF = NC - 1;
    std::array<std::array<S, NF>, NF> A;
    for (int a = 0; a < NF; ++a)
        for (int b = 0; b < NF; ++b) A[a][b] = conj_s(C.Aup[a][b]);
    return A;
}

// First covariant derivative of the lowered torsion in anti-holomorphic
// directions: B[a][b][g] = (nabla_{conj Z_g} A)_{ab}.
template <class S, int NC>
std::array<std::array<std::array<S, NC - 1>, NC - 1>, NC - 1>
torsion_cov1_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    constexpr int NF = NC - 1;
    const auto Cj = connection_at(t, lift_point<S, NC>(p));
    const auto C0 = connection_at(t, p);
    const auto A0 = torsion_lowered(C0);
    std::array<std::array<std::array<S, NF>, NF>, NF> B{};
    for (int a = 0; a < NF; ++a)
        for (int b = 0; b < NF; ++b) {
            // exact differential of the A_{ab} recipe
            const Cov<S, NC> dA = d_scalar<S, NC>(conj_s(Cj.Aup[a][b]));
            for (int g = 0; g < NF; ++g) {
                const auto Zgb = conj_vec(C0.frame.Z[g]);
                S v = pair(dA, Zgb);
                for (int m = 0; m < NF; ++m) {
                    // omega_a^m(conj Z_g) and omega_b^m(conj Z_g)
                    v = v - C0.omZb[g][a][m] * A0[m][b];
                    v = v - C0.omZb[g][b][m] * A0[a][m];
                }
                B[a][b][g] = v;
            }
        }
    return B;
}

// Scalar sum_{a,b} (nabla^a nabla^b A)_{ab} entering the Q-curvature,
// with indices raised by h = delta (derivatives along conj Z).
template <class S, int NC>
S torsion_div2_at(const SurfaceTables<NC>& t, const Pt<S, NC>& p) {
    constexpr int NF = NC - 1;
    const auto Bj = torsion_cov1_at(t, lift_point<S, NC>(p));
    const auto B0 = torsion_cov1_at(t, p);
    const auto C0 = connection_at(t, p);
    S acc{};
    for (int a = 0; a < NF; ++a)
        for (int b = 0; b < NF; ++b) {
            const Cov<S, NC> dB = d_scalar<S, NC>(Bj[a][b][b]);
            const auto Zab = conj_vec(C0.frame.Z[a]);
            S v = pair(dB, Zab);
            for (int m = 0; m < NF; ++m) {
                v = v - C0.omZb[a][a][m] * B0[m][b][b];
                v = v - C0.omZb[a][b][m] * B0[a][m][b];
                // conjugate-bundle correction on the derivative slot g = b:
                // omega_bbar^mbar(conj Z_a) = conj(omega_b^m(Z_a))
                v = v - conj_s(C0.omZ[a][b][m]) * B0[a][b][m];
            }
            acc = acc + v;
        }
    return acc;
}

// Volume density: value of theta ^ (dtheta)^{n-1} on 2n-1 tangent vectors.
template <class S, int NC>
S volume_density(const ContactPoint<S, NC>& ct, const std::vector<Vec<S, NC>>& v) {
    constexpr int m = 2 * NC - 1;
    if (static_cast<int>(v.size()) != m) throw Error("volume_density: wrong vector count");
    std::array<int, m> idx;
    for (int i = 0; i < m; ++i) idx[i] = i;
    S acc{};
    // sum over permutations with sign; normalization (n-1)! 2^{n-1}
    std::array<int, m> c{};
    int sign = 1;
    auto term = [&]() {
        S t = pair(ct.theta, v[idx[0]]) * Cplx(static_cast<double>(sign), 0.0);
        for (int k = 0; k < NC - 1; ++k) t = t * ct.dtheta(v[idx[1 + 2 * k]], v[idx[2 + 2 * k]]);
        return t;
    };
    acc = acc + term();
    // Heap's algorithm for permutations
    int i = 0;
    while (i < m) {
        if (c[i] < i) {
            if (i % 2 == 0)
                std::swap(idx[0], idx[i]);
            else
                std::swap(idx[c[i]], idx[i]);
            sign = -sign;
            acc = acc + term();
            ++c[i];
            i = 0;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    double norm = std::pow(2.0, NC - 1);
    for (int k = 2; k <= NC - 1; ++k) norm *= k;
    return acc * Cplx(1.0 / norm, 0.0);
}

} // namespace crlab

#endif
