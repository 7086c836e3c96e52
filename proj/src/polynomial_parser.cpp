#include "crlab/polynomial_parser.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace crlab {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        std::ostringstream os;
        os << "polynomial literal: " << what << " at position " << i << " in \"" << s << "\"";
        throw ParseError(os.str());
    }
};

bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

double parse_float(Cursor& cur) {
    cur.skip_ws();
    const char* begin = cur.s.c_str() + cur.i;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) cur.fail("expected number");
    cur.i += static_cast<std::size_t>(end - begin);
    return v;
}

int parse_uint(Cursor& cur) {
    cur.skip_ws();
    if (cur.i >= cur.s.size() || !std::isdigit(static_cast<unsigned char>(cur.s[cur.i])))
        cur.fail("expected integer");
    int v = 0;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) {
        v = v * 10 + (cur.s[cur.i] - '0');
        ++cur.i;
    }
    return v;
}

// zK or conj(zK), with optional ^power
void parse_factor(Cursor& cur, int n, Exponents& e) {
    cur.skip_ws();
    bool conjugated = false;
    if (cur.s.compare(cur.i, 5, "conj(") == 0) {
        conjugated = true;
        cur.i += 5;
    }
    if (!cur.accept('z')) cur.fail("expected variable 'z<k>'");
    const int idx = parse_uint(cur);
    if (idx < 1 || idx > n) cur.fail("variable index out of range");
    if (conjugated && !cur.accept(')')) cur.fail("expected ')'");
    int pow = 1;
    if (cur.accept('^')) pow = parse_uint(cur);
    if (conjugated)
        e.b[idx - 1] = static_cast<std::uint16_t>(e.b[idx - 1] + pow);
    else
        e.a[idx - 1] = static_cast<std::uint16_t>(e.a[idx - 1] + pow);
}

// coeff := float ['i'] | '(' float [('+'|'-') float 'i'] ')'
Cplx parse_coeff(Cursor& cur) {
    if (cur.accept('(')) {
        const double re = parse_float(cur);
        double im = 0.0;
        cur.skip_ws();
        if (cur.peek() == '+' || cur.peek() == '-') {
            const bool neg = cur.peek() == '-';
            ++cur.i;
            im = parse_float(cur);
            if (neg) im = -im;
            if (!cur.accept('i')) cur.fail("expected 'i' in complex coefficient");
        } else if (cur.accept('i')) {
            // "(2.5i)" form
            return Cplx(0.0, re);
        }
        if (!cur.accept(')')) cur.fail("expected ')'");
        return Cplx(re, im);
    }
    const double v = parse_float(cur);
    if (cur.accept('i')) return Cplx(0.0, v);
    return Cplx(v, 0.0);
}

Cplx parse_term(Cursor& cur, int n, Exponents& e) {
    Cplx coeff(1.0, 0.0);
    cur.skip_ws();
    bool saw_anything = false;
    if (starts_number(cur.peek()) || cur.peek() == '(') {
        coeff = parse_coeff(cur);
        saw_anything = true;
        if (!cur.accept('*')) return coeff; // bare constant term
    }
    while (true) {
        parse_factor(cur, n, e);
        saw_anything = true;
        if (!cur.accept('*')) break;
        cur.skip_ws();
        if (starts_number(cur.peek()) || cur.peek() == '(') {
            coeff *= parse_coeff(cur);
            if (!cur.accept('*')) break;
        }
    }
    if (!saw_anything) cur.fail("empty term");
    return coeff;
}

} // namespace

ComplexPolynomial parse_polynomial(const std::string& text, int n) {
    if (n < 1 || n > kMaxVars) throw ParseError("unsupported variable count");
    ComplexPolynomial p(n);
    Cursor cur{text};
    if (cur.done()) throw ParseError("polynomial literal: empty input");
    double sign = 1.0;
    if (cur.accept('-'))
        sign = -1.0;
    else
        cur.accept('+');
    while (true) {
        Exponents e;
        const Cplx c = parse_term(cur, n, e);
        p.add_term(e, sign * c);
        if (cur.done()) break;
        if (cur.accept('+'))
            sign = 1.0;
        else if (cur.accept('-'))
            sign = -1.0;
        else
            cur.fail("expected '+' or '-' between terms");
    }
    p.normalize();
    return p;
}

HermitianPolynomial parse_hermitian(const std::string& text, int n) {
    ComplexPolynomial p = parse_polynomial(text, n);
    if (!p.is_hermitian()) {
        // name the first offending term for the diagnostic
        for (const auto& [e, c] : p.terms()) {
            Exponents f;
            f.a = e.b;
            f.b = e.a;
            auto it = p.terms().find(f);
            const Cplx other = (it == p.terms().end()) ? Cplx(0, 0) : it->second;
            if (std::abs(c - std::conj(other)) > 1e-12 * std::max(1.0, p.max_abs_coeff())) {
                ComplexPolynomial offending(n);
                offending.add_term(e, c);
                throw ValidationError("literal is not Hermitian, offending term: " +
                                      offending.to_string());
            }
        }
        throw ValidationError("literal is not Hermitian");
    }
    return HermitianPolynomial(p);
}

} // namespace crlab
