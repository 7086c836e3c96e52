#ifndef CRLAB_POLYNOMIAL_HPP
#define CRLAB_POLYNOMIAL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crlab/errors.hpp"

namespace crlab {

using Cplx = std::complex<double>;

constexpr int kMaxVars = 4; // ambient complex dimensions supported

// Bidegree exponent pair: z_1^{a_1}..z_n^{a_n} * conj(z_1)^{b_1}..conj(z_n)^{b_n}.
struct Exponents {
    std::array<std::uint16_t, kMaxVars> a{}; // holomorphic powers
    std::array<std::uint16_t, kMaxVars> b{}; // anti-holomorphic powers

    auto operator<=>(const Exponents&) const = default;
    int total() const {
        int s = 0;
        for (int i = 0; i < kMaxVars; ++i) s += a[i] + b[i];
        return s;
    }
};

// Sparse polynomial in (z_1..z_n, conj(z_1)..conj(z_n)) with complex
// coefficients and exact integer exponents. Coefficient arithmetic is in
// double precision; normalization drops terms below 1e-15 * max|coeff|.
class ComplexPolynomial {
  public:
    ComplexPolynomial() : n_(1) {}
    explicit ComplexPolynomial(int n) : n_(n) {
        if (n < 1 || n > kMaxVars) throw Error("ComplexPolynomial: unsupported dimension");
    }

    static ComplexPolynomial constant(int n, Cplx c);
    // monomial z_idx (1-based) or conj(z_idx)
    static ComplexPolynomial variable(int n, int idx, bool conjugated = false);

    int vars() const { return n_; }
    int degree() const;
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Cplx>& terms() const { return terms_; }

    void add_term(const Exponents& e, Cplx c);

    ComplexPolynomial operator+(const ComplexPolynomial& o) const;
    ComplexPolynomial operator-(const ComplexPolynomial& o) const;
    ComplexPolynomial operator*(const ComplexPolynomial& o) const;
    ComplexPolynomial operator*(Cplx s) const;
    ComplexPolynomial operator-() const { return (*this) * Cplx(-1.0, 0.0); }
    ComplexPolynomial& operator+=(const ComplexPolynomial& o) { *this = *this + o; return *this; }
    ComplexPolynomial& operator-=(const ComplexPolynomial& o) { *this = *this - o; return *this; }

    ComplexPolynomial conjugate() const;

    // Exact Wirtinger partial: d/dz_idx (holo=true) or d/dconj(z_idx).
    // idx is 1-based; throws Error when out of range.
    ComplexPolynomial wirtinger(bool holo, int idx) const;

    // Evaluate with caller-provided values of z and conj(z). Templated so the
    // same code runs on plain complex numbers and on forward-mode jets.
    template <class S>
    S eval(const S* z, const S* zbar) const {
        if (terms_.empty()) return S{};
        // power tables per variable
        std::array<int, kMaxVars> amax{}, bmax{};
        for (const auto& [e, c] : terms_) {
            for (int i = 0; i < n_; ++i) {
                if (e.a[i] > amax[i]) amax[i] = e.a[i];
                if (e.b[i] > bmax[i]) bmax[i] = e.b[i];
            }
        }
        std::array<std::vector<S>, kMaxVars> pa, pb;
        for (int i = 0; i < n_; ++i) {
            pa[i].resize(amax[i] + 1);
            pb[i].resize(bmax[i] + 1);
            pa[i][0] = one_like(z[0]);
            pb[i][0] = one_like(z[0]);
            for (int k = 1; k <= amax[i]; ++k) pa[i][k] = pa[i][k - 1] * z[i];
            for (int k = 1; k <= bmax[i]; ++k) pb[i][k] = pb[i][k - 1] * zbar[i];
        }
        S acc{};
        for (const auto& [e, c] : terms_) {
            S t = scalar_like(z[0], c);
            for (int i = 0; i < n_; ++i) {
                if (e.a[i]) t = t * pa[i][e.a[i]];
                if (e.b[i]) t = t * pb[i][e.b[i]];
            }
            acc = acc + t;
        }
        return acc;
    }

    Cplx eval_point(const std::vector<Cplx>& z) const;

    // Slow independent oracle: term-by-term powers via std::pow, no tables.
    Cplx eval_oracle(const std::vector<Cplx>& z) const;

    // True when coefficient(a,b) == conj(coefficient(b,a)) for every term.
    bool is_hermitian(double tol = 1e-12) const;

    double max_abs_coeff() const;
    void normalize(); // drop coefficients below 1e-15 * max|coeff|

    std::string to_string() const;

  private:
    template <class S>
    static S one_like(const S&) {
        S s{};
        s = s + S(Cplx(1.0, 0.0));
        return s;
    }
    template <class S>
    static S scalar_like(const S&, Cplx c) {
        return S(c);
    }

    int n_;
    std::map<Exponents, Cplx> terms_;
};

inline ComplexPolynomial operator*(Cplx s, const ComplexPolynomial& p) { return p * s; }

// Real-valued polynomial: coefficient(a,b) = conj(coefficient(b,a)).
// Construction checks the constraint at the coefficient level.
class HermitianPolynomial {
  public:
    HermitianPolynomial() = default;
    explicit HermitianPolynomial(ComplexPolynomial p);

    static HermitianPolynomial zero(int n) {
        return HermitianPolynomial(ComplexPolynomial(n));
    }

    const ComplexPolynomial& poly() const { return base_; }
    int vars() const { return base_.vars(); }
    int degree() const { return base_.degree(); }
    bool is_zero() const { return base_.empty(); }

    double eval_real(const std::vector<Cplx>& z) const;

    HermitianPolynomial operator+(const HermitianPolynomial& o) const {
        return HermitianPolynomial(base_ + o.base_);
    }
    HermitianPolynomial operator-(const HermitianPolynomial& o) const {
        return HermitianPolynomial(base_ - o.base_);
    }
    HermitianPolynomial operator*(double s) const {
        return HermitianPolynomial(base_ * Cplx(s, 0.0));
    }

  private:
    ComplexPolynomial base_;
};

// --- jets-level differential operators -------------------------------------

// Entries of the complex Hessian: out(i,j) = d^2 u / dz_i dconj(z_j).
// The matrix field is Hermitian at every point for Hermitian u.
std::vector<std::vector<ComplexPolynomial>> i_ddbar(const HermitianPolynomial& u);

// d^c u at a point, as a real covector on R^{2n} with coordinate order
// (x_1, y_1, ..., x_n, y_n) and z_j = x_j + i y_j.  Convention:
// (d^c u)(xi) = du(J xi), equivalently d^c u = i(del u - delbar u).
std::vector<double> dc_form(const HermitianPolynomial& u, const std::vector<Cplx>& z);

// Constant kappa in  d(d^c u) = kappa * i del delbar u  under the convention
// above; recorded once here and read by every downstream module.
inline constexpr double kDDcFactor = -2.0;

// Determinant of the (n+1)x(n+1) bordered matrix
//   [ u      u_{jbar} ]
//   [ u_i    u_{i jbar} ]
// evaluated at z.
Cplx bordered_det(const HermitianPolynomial& u, const std::vector<Cplx>& z);

} // namespace crlab

#endif
