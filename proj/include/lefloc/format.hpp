#pragma once

#include <string>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Canonical human-readable renderings.  The same strings are embedded in the
// JSON reports so both output modes carry identical values.
std::string to_string(const VarTablePtr& t, const Monomial& m);
std::string to_string(const LaurentPoly& p);
std::string to_string(const RatFun& f);
// Polynomial form when the denominator divides out exactly, else to_string.
std::string display(const RatFun& f);
std::string to_string(const BSeries& p);

}  // namespace lefloc
