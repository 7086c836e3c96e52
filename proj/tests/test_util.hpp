#ifndef CRLAB_TEST_UTIL_HPP
#define CRLAB_TEST_UTIL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "crlab/polynomial.hpp"

namespace crlab::testutil {

// Deterministic deviates, bit-stable across runs.
struct DetRng {
    std::mt19937_64 g;
    explicit DetRng(std::uint64_t seed) : g(seed) {}
    double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    double sym() { return 2.0 * u01() - 1.0; }
    Cplx csym() { return Cplx(sym(), sym()); }
};

inline std::vector<Cplx> random_point(DetRng& rng, int n, double radius = 1.0) {
    std::vector<Cplx> z(n);
    for (int i = 0; i < n; ++i) z[i] = radius * rng.csym();
    return z;
}

// Random dense polynomial of total degree <= d.
inline ComplexPolynomial random_polynomial(DetRng& rng, int n, int d) {
    ComplexPolynomial p(n);
    std::vector<Exponents> all;
    // enumerate all bidegrees with total <= d
    std::vector<std::array<int, 2 * 4>> stack;
    std::array<int, 8> cur{};
    // simple odometer over 2n slots
    const int slots = 2 * n;
    std::vector<int> e(slots, 0);
    while (true) {
        int tot = 0;
        for (int v : e) tot += v;
        if (tot <= d) {
            Exponents ex;
            for (int i = 0; i < n; ++i) {
                ex.a[i] = static_cast<std::uint16_t>(e[i]);
                ex.b[i] = static_cast<std::uint16_t>(e[n + i]);
            }
            all.push_back(ex);
        }
        int k = 0;
        while (k < slots) {
            if (++e[k] <= d) break;
            e[k] = 0;
            ++k;
        }
        if (k == slots) break;
    }
    (void)stack;
    (void)cur;
    for (const auto& ex : all)
        if (ex.total() <= d) p.add_term(ex, rng.csym());
    p.normalize();
    return p;
}

// Random real-valued (Hermitian) polynomial of total degree <= d.
inline HermitianPolynomial random_hermitian(DetRng& rng, int n, int d) {
    ComplexPolynomial p = random_polynomial(rng, n, d);
    ComplexPolynomial h = (p + p.conjugate()) * Cplx(0.5, 0.0);
    return HermitianPolynomial(h);
}

} // namespace crlab::testutil

#endif
