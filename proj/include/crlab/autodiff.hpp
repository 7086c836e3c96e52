#ifndef CRLAB_AUTODIFF_HPP
#define CRLAB_AUTODIFF_HPP

#include <array>
#include <cmath>
#include <complex>

#include "crlab/polynomial.hpp"

namespace crlab {

// Forward-mode jet carrying a value and first derivatives with respect to N
// real coordinate directions. Nesting Jet<Jet<...>> yields higher order.
// Coefficients are complex; conj acts componentwise because the underlying
// differentiation directions are real.
template <class S, int N>
struct Jet {
    S v{};
    std::array<S, N> d{};

    Jet() = default;
    Jet(const Cplx& c) : v(S(c)) {} // constant lift (implicit on purpose)

    static Jet seed(const S& value, int dir) {
        Jet j;
        j.v = value;
        if (dir >= 0 && dir < N) j.d[dir] = S(Cplx(1.0, 0.0));
        return j;
    }
};

// --- scalar trait helpers ---------------------------------------------------

inline Cplx value_of(const Cplx& c) { return c; }
template <class S, int N>
Cplx value_of(const Jet<S, N>& j) {
    return value_of(j.v);
}

inline double abs_of(const Cplx& c) { return std::abs(c); }
template <class S, int N>
double abs_of(const Jet<S, N>& j) {
    return abs_of(j.v);
}

inline Cplx conj_s(const Cplx& c) { return std::conj(c); }
template <class S, int N>
Jet<S, N> conj_s(const Jet<S, N>& a) {
    Jet<S, N> r;
    r.v = conj_s(a.v);
    for (int k = 0; k < N; ++k) r.d[k] = conj_s(a.d[k]);
    return r;
}

// --- arithmetic --------------------------------------------------------------

template <class S, int N>
Jet<S, N> operator+(const Jet<S, N>& a, const Jet<S, N>& b) {
    Jet<S, N> r;
    r.v = a.v + b.v;
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}
template <class S, int N>
Jet<S, N> operator-(const Jet<S, N>& a, const Jet<S, N>& b) {
    Jet<S, N> r;
    r.v = a.v - b.v;
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
}
template <class S, int N>
Jet<S, N> operator-(const Jet<S, N>& a) {
    Jet<S, N> r;
    r.v = -a.v;
    for (int k = 0; k < N; ++k) r.d[k] = -a.d[k];
    return r;
}
template <class S, int N>
Jet<S, N> operator*(const Jet<S, N>& a, const Jet<S, N>& b) {
    Jet<S, N> r;
    r.v = a.v * b.v;
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
    return r;
}
template <class S, int N>
Jet<S, N> inv(const Jet<S, N>& a);

inline Cplx inv(const Cplx& a) { return Cplx(1.0, 0.0) / a; }

template <class S, int N>
Jet<S, N> inv(const Jet<S, N>& a) {
    Jet<S, N> r;
    const S iv = inv(a.v);
    r.v = iv;
    const S m = -(iv * iv);
    for (int k = 0; k < N; ++k) r.d[k] = m * a.d[k];
    return r;
}
template <class S, int N>
Jet<S, N> operator/(const Jet<S, N>& a, const Jet<S, N>& b) {
    return a * inv(b);
}

// mixed with plain complex constants
template <class S, int N>
Jet<S, N> operator*(const Cplx& c, const Jet<S, N>& a) {
    return Jet<S, N>(c) * a;
}
template <class S, int N>
Jet<S, N> operator*(const Jet<S, N>& a, const Cplx& c) {
    return a * Jet<S, N>(c);
}
template <class S, int N>
Jet<S, N> operator+(const Cplx& c, const Jet<S, N>& a) {
    return Jet<S, N>(c) + a;
}
template <class S, int N>
Jet<S, N> operator+(const Jet<S, N>& a, const Cplx& c) {
    return a + Jet<S, N>(c);
}
template <class S, int N>
Jet<S, N> operator-(const Cplx& c, const Jet<S, N>& a) {
    return Jet<S, N>(c) - a;
}
template <class S, int N>
Jet<S, N> operator-(const Jet<S, N>& a, const Cplx& c) {
    return a - Jet<S, N>(c);
}

// --- elementary functions ----------------------------------------------------

inline Cplx sqrt_s(const Cplx& c) { return std::sqrt(c); }
template <class S, int N>
Jet<S, N> sqrt_s(const Jet<S, N>& a) {
    Jet<S, N> r;
    r.v = sqrt_s(a.v);
    const S half_over = inv(r.v + r.v);
    for (int k = 0; k < N; ++k) r.d[k] = half_over * a.d[k];
    return r;
}

inline Cplx exp_s(const Cplx& c) { return std::exp(c); }
template <class S, int N>
Jet<S, N> exp_s(const Jet<S, N>& a) {
    Jet<S, N> r;
    r.v = exp_s(a.v);
    for (int k = 0; k < N; ++k) r.d[k] = r.v * a.d[k];
    return r;
}

inline Cplx log_s(const Cplx& c) { return std::log(c); }
template <class S, int N>
Jet<S, N> log_s(const Jet<S, N>& a) {
    Jet<S, N> r;
    r.v = log_s(a.v);
    const S iv = inv(a.v);
    for (int k = 0; k < N; ++k) r.d[k] = iv * a.d[k];
    return r;
}

// Symmetrized real part: kills floating-point imaginary dust on quantities
// that are real by construction while staying differentiable.
template <class S>
S re_s(const S& a) {
    return (a + conj_s(a)) * Cplx(0.5, 0.0);
}
template <class S>
S im_s(const S& a) {
    return (a - conj_s(a)) * Cplx(0.0, -0.5);
}

// --- small dense linear solver (templated on scalar) -------------------------

// Solves A x = b in place for m right-hand sides; A is r x r row-major.
// Partial pivoting on |value|. Returns false on (numerically) singular A.
template <class S>
bool gauss_solve(std::vector<S>& A, std::vector<S>& B, int r, int m) {
    for (int col = 0; col < r; ++col) {
        int p = col;
        double best = abs_of(A[col * r + col]);
        for (int row = col + 1; row < r; ++row) {
            const double v = abs_of(A[row * r + col]);
            if (v > best) {
                best = v;
                p = row;
            }
        }
        if (!(best > 0.0)) return false;
        if (p != col) {
            for (int c = 0; c < r; ++c) std::swap(A[p * r + c], A[col * r + c]);
            for (int c = 0; c < m; ++c) std::swap(B[p * m + c], B[col * m + c]);
        }
        const S d = inv(A[col * r + col]);
        for (int row = col + 1; row < r; ++row) {
            const S f = A[row * r + col] * d;
            for (int c = col; c < r; ++c) A[row * r + c] = A[row * r + c] - f * A[col * r + c];
            for (int c = 0; c < m; ++c) B[row * m + c] = B[row * m + c] - f * B[col * m + c];
        }
    }
    for (int col = r - 1; col >= 0; --col) {
        const S d = inv(A[col * r + col]);
        for (int c = 0; c < m; ++c) {
            S acc = B[col * m + c];
            for (int k = col + 1; k < r; ++k) acc = acc - A[col * r + k] * B[k * m + c];
            B[col * m + c] = acc * d;
        }
    }
    return true;
}

} // namespace crlab

#endif
