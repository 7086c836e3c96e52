#include "crlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crlab {

ComplexPolynomial ComplexPolynomial::constant(int n, Cplx c) {
    ComplexPolynomial p(n);
    p.add_term(Exponents{}, c);
    return p;
}

ComplexPolynomial ComplexPolynomial::variable(int n, int idx, bool conjugated) {
    ComplexPolynomial p(n);
    if (idx < 1 || idx > n) throw Error("variable index out of range");
    Exponents e;
    if (conjugated)
        e.b[idx - 1] = 1;
    else
        e.a[idx - 1] = 1;
    p.add_term(e, Cplx(1.0, 0.0));
    return p;
}

int ComplexPolynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total());
    return d;
}

void ComplexPolynomial::add_term(const Exponents& e, Cplx c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != Cplx(0.0, 0.0)) terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == Cplx(0.0, 0.0)) terms_.erase(it);
    }
}

ComplexPolynomial ComplexPolynomial::operator+(const ComplexPolynomial& o) const {
    ComplexPolynomial r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    r.normalize();
    return r;
}

ComplexPolynomial ComplexPolynomial::operator-(const ComplexPolynomial& o) const {
    ComplexPolynomial r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    r.normalize();
    return r;
}

ComplexPolynomial ComplexPolynomial::operator*(const ComplexPolynomial& o) const {
    ComplexPolynomial r(std::max(n_, o.n_));
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e;
            for (int i = 0; i < kMaxVars; ++i) {
                e.a[i] = static_cast<std::uint16_t>(e1.a[i] + e2.a[i]);
                e.b[i] = static_cast<std::uint16_t>(e1.b[i] + e2.b[i]);
            }
            r.add_term(e, c1 * c2);
        }
    }
    r.normalize();
    return r;
}

ComplexPolynomial ComplexPolynomial::operator*(Cplx s) const {
    ComplexPolynomial r(n_);
    if (s == Cplx(0.0, 0.0)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
}

ComplexPolynomial ComplexPolynomial::conjugate() const {
    ComplexPolynomial r(n_);
    for (const auto& [e, c] : terms_) {
        Exponents f;
        f.a = e.b;
        f.b = e.a;
        r.add_term(f, std::conj(c));
    }
    return r;
}

ComplexPolynomial ComplexPolynomial::wirtinger(bool holo, int idx) const {
    if (idx < 1 || idx > n_) throw Error("wirtinger: index out of range");
    const int i = idx - 1;
    ComplexPolynomial r(n_);
    for (const auto& [e, c] : terms_) {
        const int p = holo ? e.a[i] : e.b[i];
        if (p == 0) continue;
        Exponents f = e;
        if (holo)
            f.a[i] = static_cast<std::uint16_t>(p - 1);
        else
            f.b[i] = static_cast<std::uint16_t>(p - 1);
        r.add_term(f, c * static_cast<double>(p));
    }
    return r;
}

Cplx ComplexPolynomial::eval_point(const std::vector<Cplx>& z) const {
    if (static_cast<int>(z.size()) < n_) throw Error("eval_point: not enough coordinates");
    std::array<Cplx, kMaxVars> zz{}, zb{};
    for (int i = 0; i < n_; ++i) {
        zz[i] = z[i];
        zb[i] = std::conj(z[i]);
    }
    return eval(zz.data(), zb.data());
}

Cplx ComplexPolynomial::eval_oracle(const std::vector<Cplx>& z) const {
    Cplx acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        Cplx t = c;
        for (int i = 0; i < n_; ++i) {
            if (e.a[i]) t *= std::pow(z[i], static_cast<int>(e.a[i]));
            if (e.b[i]) t *= std::pow(std::conj(z[i]), static_cast<int>(e.b[i]));
        }
        acc += t;
    }
    return acc;
}

bool ComplexPolynomial::is_hermitian(double tol) const {
    const double scale = std::max(max_abs_coeff(), 1.0);
    for (const auto& [e, c] : terms_) {
        Exponents f;
        f.a = e.b;
        f.b = e.a;
        auto it = terms_.find(f);
        const Cplx other = (it == terms_.end()) ? Cplx(0.0, 0.0) : it->second;
        if (std::abs(c - std::conj(other)) > tol * scale) return false;
    }
    return true;
}

double ComplexPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void ComplexPolynomial::normalize() {
    const double cutoff = 1e-15 * max_abs_coeff();
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= cutoff)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::string ComplexPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real();
        if (c.imag() >= 0)
            os << "+" << c.imag() << "i)";
        else
            os << c.imag() << "i)";
        for (int i = 0; i < n_; ++i) {
            if (e.a[i]) {
                os << "*z" << (i + 1);
                if (e.a[i] > 1) os << "^" << e.a[i];
            }
            if (e.b[i]) {
                os << "*conj(z" << (i + 1) << ")";
                if (e.b[i] > 1) os << "^" << e.b[i];
            }
        }
    }
    return os.str();
}

HermitianPolynomial::HermitianPolynomial(ComplexPolynomial p) : base_(std::move(p)) {
    if (!base_.is_hermitian())
        throw ValidationError("polynomial is not Hermitian: " + base_.to_string());
}

double HermitianPolynomial::eval_real(const std::vector<Cplx>& z) const {
    const Cplx v = base_.eval_point(z);
    return v.real();
}

std::vector<std::vector<ComplexPolynomial>> i_ddbar(const HermitianPolynomial& u) {
    const int n = u.vars();
    std::vector<std::vector<ComplexPolynomial>> h(n, std::vector<ComplexPolynomial>(n, ComplexPolynomial(n)));
    for (int i = 0; i < n; ++i) {
        ComplexPolynomial ui = u.poly().wirtinger(true, i + 1);
        for (int j = 0; j < n; ++j) h[i][j] = ui.wirtinger(false, j + 1);
    }
    return h;
}

std::vector<double> dc_form(const HermitianPolynomial& u, const std::vector<Cplx>& z) {
    const int n = u.vars();
    std::vector<double> cov(2 * n, 0.0);
    for (int j = 0; j < n; ++j) {
        const Cplx uz = u.poly().wirtinger(true, j + 1).eval_point(z);
        // u_x = 2 Re u_z, u_y = -2 Im u_z; d^c u = sum u_y dx - u_x dy
        cov[2 * j] = -2.0 * uz.imag();
        cov[2 * j + 1] = -2.0 * uz.real();
    }
    return cov;
}

Cplx bordered_det(const HermitianPolynomial& u, const std::vector<Cplx>& z) {
    const int n = u.vars();
    const int m = n + 1;
    std::vector<Cplx> M(m * m);
    M[0] = u.poly().eval_point(z);
    for (int j = 0; j < n; ++j)
        M[0 * m + (j + 1)] = u.poly().wirtinger(false, j + 1).eval_point(z);
    for (int i = 0; i < n; ++i)
        M[(i + 1) * m + 0] = u.poly().wirtinger(true, i + 1).eval_point(z);
    auto hess = i_ddbar(u);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[(i + 1) * m + (j + 1)] = hess[i][j].eval_point(z);

    // LU with partial pivoting
    std::vector<int> piv(m);
    for (int i = 0; i < m; ++i) piv[i] = i;
    Cplx det(1.0, 0.0);
    for (int col = 0; col < m; ++col) {
        int p = col;
        double best = std::abs(M[piv[col] * m + col]);
        for (int r = col + 1; r < m; ++r) {
            const double v = std::abs(M[piv[r] * m + col]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0) return Cplx(0.0, 0.0);
        if (p != col) {
            std::swap(piv[p], piv[col]);
            det = -det;
        }
        const Cplx d = M[piv[col] * m + col];
        det *= d;
        for (int r = col + 1; r < m; ++r) {
            const Cplx f = M[piv[r] * m + col] / d;
            for (int c = col; c < m; ++c) M[piv[r] * m + c] -= f * M[piv[col] * m + c];
        }
    }
    return det;
}

} // namespace crlab
