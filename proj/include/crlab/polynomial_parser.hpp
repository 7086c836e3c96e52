#ifndef CRLAB_POLYNOMIAL_PARSER_HPP
#define CRLAB_POLYNOMIAL_PARSER_HPP

#include <string>

#include "crlab/polynomial.hpp"

namespace crlab {

// Parses the polynomial literal grammar used in config files:
//
//   poly   := [sign] term { ('+'|'-') term }
//   term   := coeff { '*' factor } | factor { '*' factor }
//   factor := 'z'K [ '^' uint ] | 'conj(' 'z'K ')' [ '^' uint ]
//   coeff  := float | float 'i' | '(' float [('+'|'-') float 'i'] ')'
//
// Whitespace is insignificant. K is a 1-based variable index <= n.
ComplexPolynomial parse_polynomial(const std::string& text, int n);

// Same grammar, then checks the Hermitian constraint; the error message
// names the first offending term.
HermitianPolynomial parse_hermitian(const std::string& text, int n);

} // namespace crlab

#endif
