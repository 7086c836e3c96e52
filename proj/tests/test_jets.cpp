#include "doctest.h"

#include <cmath>

#include "crlab/polynomial.hpp"
#include "crlab/polynomial_parser.hpp"
#include "test_util.hpp"

using namespace crlab;
using testutil::DetRng;

namespace {

// Central finite-difference Wirtinger quotient: d/dz = (d/dx - i d/dy)/2.
Cplx fd_wirtinger(const ComplexPolynomial& p, bool holo, int idx, const std::vector<Cplx>& z,
                  double h = 1e-5) {
    auto shift = [&](double dx, double dy) {
        std::vector<Cplx> w = z;
        w[idx - 1] += Cplx(dx, dy);
        return p.eval_oracle(w);
    };
    const Cplx ddx = (shift(h, 0) - shift(-h, 0)) / (2.0 * h);
    const Cplx ddy = (shift(0, h) - shift(0, -h)) / (2.0 * h);
    const Cplx I(0.0, 1.0);
    return holo ? 0.5 * (ddx - I * ddy) : 0.5 * (ddx + I * ddy);
}

} // namespace

TEST_CASE("wirtinger: monomial rules") {
    // d/dz1 (z1 conj z1) = conj z1
    ComplexPolynomial p = ComplexPolynomial::variable(2, 1) * ComplexPolynomial::variable(2, 1, true);
    ComplexPolynomial d = p.wirtinger(true, 1);
    ComplexPolynomial expect = ComplexPolynomial::variable(2, 1, true);
    CHECK((d - expect).empty());

    // dbar/dz1 (z1) = 0
    CHECK(ComplexPolynomial::variable(2, 1).wirtinger(false, 1).empty());

    CHECK_THROWS_AS(p.wirtinger(true, 3), Error);
}

TEST_CASE("wirtinger: finite-difference oracle on random degree-6 polynomial") {
    DetRng rng(7);
    ComplexPolynomial p = testutil::random_polynomial(rng, 2, 6);
    for (int trial = 0; trial < 5; ++trial) {
        auto z = testutil::random_point(rng, 2, 0.8);
        for (int idx = 1; idx <= 2; ++idx) {
            for (bool holo : {true, false}) {
                const Cplx exact = p.wirtinger(holo, idx).eval_point(z);
                const Cplx fd = fd_wirtinger(p, holo, idx, z);
                CHECK(std::abs(exact - fd) < 1e-7 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("wirtinger derivatives commute exactly") {
    DetRng rng(11);
    ComplexPolynomial p = testutil::random_polynomial(rng, 3, 5);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            ComplexPolynomial a = p.wirtinger(true, i).wirtinger(false, j);
            ComplexPolynomial b = p.wirtinger(false, j).wirtinger(true, i);
            CHECK((a - b).empty());
        }
}

TEST_CASE("evaluation matches independent term-by-term oracle") {
    DetRng rng(13);
    ComplexPolynomial p = testutil::random_polynomial(rng, 3, 6);
    for (int trial = 0; trial < 10; ++trial) {
        auto z = testutil::random_point(rng, 3, 1.2);
        const Cplx a = p.eval_point(z);
        const Cplx b = p.eval_oracle(z);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("hermitian polynomials evaluate real") {
    DetRng rng(17);
    for (int rep = 0; rep < 4; ++rep) {
        HermitianPolynomial h = testutil::random_hermitian(rng, 2, 5);
        const double scale = std::max(1.0, h.poly().max_abs_coeff());
        for (int trial = 0; trial < 8; ++trial) {
            auto z = testutil::random_point(rng, 2, 1.0);
            CHECK(std::abs(h.poly().eval_point(z).imag()) < 1e-12 * scale);
        }
    }
    // non-Hermitian rejected
    CHECK_THROWS_AS(HermitianPolynomial(ComplexPolynomial::variable(2, 1)), ValidationError);
}

TEST_CASE("dc_form: |z1|^2 at (1,0) and constants") {
    // u = z1 conj z1 on C^2
    ComplexPolynomial p = ComplexPolynomial::variable(2, 1) * ComplexPolynomial::variable(2, 1, true);
    HermitianPolynomial u(p);
    auto cov = dc_form(u, {Cplx(1, 0), Cplx(0, 0)});
    // i(conj z1 dz1 - z1 dzbar1) at z1=1: on d/dx1 -> 0, on d/dy1 -> -2
    CHECK(cov[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cov[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(cov[2] == doctest::Approx(0.0));
    CHECK(cov[3] == doctest::Approx(0.0));

    HermitianPolynomial c(ComplexPolynomial::constant(2, Cplx(3.5, 0)));
    auto cz = dc_form(c, {Cplx(0.3, 0.1), Cplx(-0.2, 0.4)});
    for (double v : cz) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("d(d^c u) equals kDDcFactor * i del delbar u (FD oracle on d^c)") {
    DetRng rng(19);
    HermitianPolynomial u = testutil::random_hermitian(rng, 2, 4);
    auto hess = i_ddbar(u);
    const double h = 1e-5;
    for (int trial = 0; trial < 5; ++trial) {
        auto z = testutil::random_point(rng, 2, 0.7);
        // FD exterior derivative of the d^c covector field
        auto dc_at = [&](const std::vector<Cplx>& w) { return dc_form(u, w); };
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                auto shift = [&](int dir, double step) {
                    std::vector<Cplx> w = z;
                    const int j = dir / 2;
                    if (dir % 2 == 0)
                        w[j] += Cplx(step, 0);
                    else
                        w[j] += Cplx(0, step);
                    return w;
                };
                const double dab = (dc_at(shift(a, h))[b] - dc_at(shift(a, -h))[b]) / (2 * h) -
                                   (dc_at(shift(b, h))[a] - dc_at(shift(b, -h))[a]) / (2 * h);
                // real-coordinate matrix of i del delbar u on (e_a, e_b)
                auto basis = [&](int dir) {
                    std::array<Cplx, 2> v{};
                    v[dir / 2] = (dir % 2 == 0) ? Cplx(1, 0) : Cplx(0, 1);
                    return v;
                };
                const auto va = basis(a);
                const auto vb = basis(b);
                Cplx val(0, 0);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const Cplx hij = hess[i][j].eval_point(z);
                        // i h_ij (dz_i ^ dzbar_j)(va, vb)
                        val += Cplx(0, 1) * hij *
                               (va[i] * std::conj(vb[j]) - vb[i] * std::conj(va[j]));
                    }
                CHECK(std::abs(dab - kDDcFactor * val.real()) < 2e-6 * std::max(1.0, std::abs(val)));
                CHECK(std::abs(val.imag()) < 1e-9 * std::max(1.0, std::abs(val)));
            }
    }
}

TEST_CASE("i_ddbar examples") {
    // u = |z|^2 - 1 on C^2 -> identity
    ComplexPolynomial zz(2);
    for (int i = 1; i <= 2; ++i)
        zz += ComplexPolynomial::variable(2, i) * ComplexPolynomial::variable(2, i, true);
    zz -= ComplexPolynomial::constant(2, 1.0);
    auto h1 = i_ddbar(HermitianPolynomial(zz));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == j)
                CHECK((h1[i][j] - ComplexPolynomial::constant(2, 1.0)).empty());
            else
                CHECK(h1[i][j].empty());
        }

    // u = Re(z1^2) pluriharmonic -> zero matrix
    ComplexPolynomial z1sq = ComplexPolynomial::variable(2, 1) * ComplexPolynomial::variable(2, 1);
    ComplexPolynomial re = (z1sq + z1sq.conjugate()) * Cplx(0.5, 0);
    auto h2 = i_ddbar(HermitianPolynomial(re));
    for (auto& row : h2)
        for (auto& e : row) CHECK(e.empty());

    // u = |z1|^4 -> (1,1) entry 4 |z1|^2
    ComplexPolynomial q = ComplexPolynomial::variable(1, 1) * ComplexPolynomial::variable(1, 1) *
                          ComplexPolynomial::variable(1, 1, true) *
                          ComplexPolynomial::variable(1, 1, true);
    auto h3 = i_ddbar(HermitianPolynomial(q));
    ComplexPolynomial expect =
        ComplexPolynomial::variable(1, 1) * ComplexPolynomial::variable(1, 1, true) * Cplx(4.0, 0);
    CHECK((h3[0][0] - expect).empty());
}

TEST_CASE("i_ddbar matrix is Hermitian at points and closed coefficient-wise") {
    DetRng rng(23);
    HermitianPolynomial u = testutil::random_hermitian(rng, 3, 5);
    auto hess = i_ddbar(u);
    for (int trial = 0; trial < 5; ++trial) {
        auto z = testutil::random_point(rng, 3, 0.9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Cplx a = hess[i][j].eval_point(z);
                const Cplx b = std::conj(hess[j][i].eval_point(z));
                CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
            }
    }
    // d(i del delbar u) = 0: del_k u_{i jbar} antisymmetrized in (k,i) vanishes
    // exactly at the coefficient level, and likewise for the conjugate slot.
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                ComplexPolynomial diff =
                    hess[i][j].wirtinger(true, k + 1) - hess[k][j].wirtinger(true, i + 1);
                CHECK(diff.empty());
                ComplexPolynomial diffb =
                    hess[i][j].wirtinger(false, k + 1) - hess[i][k].wirtinger(false, j + 1);
                CHECK(diffb.empty());
            }
}

TEST_CASE("bordered determinant") {
    // ball, n = 2: det = 1 at any z
    ComplexPolynomial ball(2);
    ball += ComplexPolynomial::constant(2, 1.0);
    for (int i = 1; i <= 2; ++i)
        ball -= ComplexPolynomial::variable(2, i) * ComplexPolynomial::variable(2, i, true);
    HermitianPolynomial u(ball);
    DetRng rng(29);
    for (int trial = 0; trial < 6; ++trial) {
        auto z = testutil::random_point(rng, 2, 0.9);
        CHECK(std::abs(bordered_det(u, z) - Cplx(1.0, 0.0)) < 1e-12);
    }

    // scaling: bordered(c u) = c^{n+1} bordered(u)
    DetRng rng2(31);
    HermitianPolynomial w = testutil::random_hermitian(rng2, 2, 3);
    const double c = 1.5;
    HermitianPolynomial cw = w * c;
    for (int trial = 0; trial < 5; ++trial) {
        auto z = testutil::random_point(rng2, 2, 0.8);
        const Cplx lhs = bordered_det(cw, z);
        const Cplx rhs = std::pow(c, 3) * bordered_det(w, z);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }

    // n = 1, u = 1 - |z1|^2 at 0: det [[1,0],[0,-1]] = -1
    ComplexPolynomial b1(1);
    b1 += ComplexPolynomial::constant(1, 1.0);
    b1 -= ComplexPolynomial::variable(1, 1) * ComplexPolynomial::variable(1, 1, true);
    CHECK(std::abs(bordered_det(HermitianPolynomial(b1), {Cplx(0, 0)}) - Cplx(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("polynomial literal parser") {
    // sphere literal
    ComplexPolynomial p =
        parse_polynomial("z1*conj(z1) + z2*conj(z2) - 1", 2);
    ComplexPolynomial expect(2);
    for (int i = 1; i <= 2; ++i)
        expect += ComplexPolynomial::variable(2, i) * ComplexPolynomial::variable(2, i, true);
    expect -= ComplexPolynomial::constant(2, 1.0);
    CHECK((p - expect).empty());

    // whitespace-insensitive, explicit coefficients and powers
    ComplexPolynomial q = parse_polynomial("  2.5 * z1 ^ 2 * conj( z2 ) - 0.5i * z2  ", 2);
    CHECK(q.term_count() == 2);
    CHECK(std::abs(q.eval_point({Cplx(1, 0), Cplx(1, 0)}) - (Cplx(2.5, 0) - Cplx(0, 0.5))) < 1e-14);

    // hermitian acceptance and rejection naming the offending term
    CHECK_NOTHROW(parse_hermitian("0.05*z1 + 0.05*conj(z1)", 2));
    CHECK_THROWS_WITH_AS(parse_hermitian("z1*conj(z2)", 2),
                         doctest::Contains("offending term"), ValidationError);

    // syntax errors carry a position
    CHECK_THROWS_AS(parse_polynomial("z1 + + z2", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z3", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("", 2), ParseError);

    // complex coefficient forms and hermitian pairing
    ComplexPolynomial r = parse_polynomial("(1+2i)*z1*conj(z2) + (1-2i)*z2*conj(z1)", 2);
    CHECK(r.is_hermitian());
}
