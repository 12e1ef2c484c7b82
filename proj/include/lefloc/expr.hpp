#pragma once

#include <string>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Parses a symbolic expression over the table's variables into an exact
// rational value, e.g.
//
//   (1 + lambda*mu) / ((1 - lambda^2)(1 - mu^2))
//   2/(1-lambda) + 2b^2
//   -lambda^-2 - lambda^-3
//
// Grammar: + - * / ^ ( ), nonnegative integer literals, variable names,
// unary minus, juxtaposition as multiplication ("2b^2", "(1-a)(1-b)"),
// exponents n, -n, (n/2) and (-n/2).  Half exponents apply to monomial
// bases only.
//
// Division keeps the factored shape exact: a divisor is decomposed
// structurally into a product of monomials and binomials (1 - m); any other
// divisor raises std::domain_error.  Malformed input raises
// std::invalid_argument with the offending position.
RatFun parse_ratfun(const VarTablePtr& t, const std::string& text);

// The value as a plain Laurent polynomial; requires an empty denominator.
LaurentPoly to_laurent(const RatFun& f);

// The value as a polynomial in the reserved grading variable b alone;
// requires an empty denominator and no other variables.
BSeries to_bseries(const RatFun& f);

}  // namespace lefloc
