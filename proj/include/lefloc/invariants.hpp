#pragma once

#include <map>
#include <utility>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Polynomial in the reserved variable y whose coefficients are rational
// functions of the torus variables; n is the complex dimension, bounding the
// y-degree and fixing the (-y)^n duality twist.
struct ChiY {
    RatFun value;
    int n = 0;
};

// sum_p y^p * per_p[p]
ChiY chi_y_assemble(const std::map<int, RatFun>& per_p, int n);

// value == (-y)^n * subst(value, inversion + {y -> 1/y})  ?
bool chi_y_duality_check(const ChiY& c, const SubstMap& inversion);

// y := y0 coefficient-wise; y0 = 1, 0, -1 give the signature-type,
// Riemann-Roch and Euler specializations.
RatFun specialize(const ChiY& c, const Rat& y0);

// (chi_{-1} + chi_1)/2 and (chi_{-1} - chi_1)/2.
std::pair<RatFun, RatFun> sd_asd_indices(const ChiY& c);

// asd == subst(sd, {var -> 1/var})  ?  (unit-circle conjugation in one
// variable realized as inversion)
bool sd_asd_duality_check(const ChiY& c, const std::string& var);

// Holomorphic local number twisted by the square root of the canonical
// character (half-integer exponents allowed).
RatFun spin_local(const RatFun& hol, const Monomial& half_char);

}  // namespace lefloc
