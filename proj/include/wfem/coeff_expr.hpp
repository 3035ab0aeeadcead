#pragma once
// Tiny closed-form coefficient grammar for inline problem definitions:
// polynomials in x plus sin/cos/exp, combined with + - * ^ and parentheses,
// e.g. "1+x^2", "sin(pi*x)", "2*(1-x)*sin(pi*x)", "exp(-0.5*x)".

#include <string>

#include "wfem/problem.hpp"

namespace wfem {

// Throws std::invalid_argument with a position message on malformed input.
ScalarFn parse_coefficient(const std::string& text);

}  // namespace wfem
