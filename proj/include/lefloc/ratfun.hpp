#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lefloc/laurent.hpp"

namespace lefloc {

// One denominator factor (1 - m).  m must be non-unital and canonically
// oriented: its first nonzero doubled exponent is positive.  Factors with the
// opposite orientation are rewritten via (1 - m) = -m * (1 - m^-1).
struct DenomFactor {
    Monomial m;
    auto operator<=>(const DenomFactor&) const = default;
};

// value = sign * unit * num / prod_i (1 - den[i].m)
//
// No polynomial GCD anywhere: the denominator is kept as a factor multiset and
// equality is decided by cross-multiplication.  Zero is canonically
// (sign=+1, unit=1, num=0, den={}).
struct RatFun {
    VarTablePtr table;
    int sign = 1;           // +1 or -1
    Monomial unit;          // pure monomial prefactor
    LaurentPoly num;
    std::vector<DenomFactor> den;  // sorted multiset, all factors canonical

    static RatFun zero(const VarTablePtr& t);
    static RatFun constant(const VarTablePtr& t, const Rat& c);
    static RatFun from_poly(const VarTablePtr& t, const LaurentPoly& p);
    static RatFun monomial(const VarTablePtr& t, const Monomial& m);
    // c / prod (1 - d_i), the shape of every local fixed-point number.
    static RatFun quotient(const VarTablePtr& t, const LaurentPoly& numerator,
                           const std::vector<Monomial>& den_monomials);

    bool is_zero() const { return num.is_zero(); }
};

using SubstMap = std::map<std::string, Monomial>;
enum class Region { inside, outside };

RatFun rf_canonicalize(RatFun f);
RatFun rf_add(const RatFun& a, const RatFun& b);
RatFun rf_mul(const RatFun& a, const RatFun& b);
RatFun rf_neg(const RatFun& a);
RatFun rf_scale(const RatFun& a, const Rat& c);
bool rf_eq(const RatFun& a, const RatFun& b);
RatFun rf_subst(const RatFun& f, const SubstMap& map);
Rat rf_eval(const RatFun& f, const std::map<std::string, Rat>& point);
LaurentPoly rf_expand(const RatFun& f, const std::map<Monomial, Region>& region,
                      long order);
LaurentPoly rf_expand(const RatFun& f, Region all_factors, long order);

LaurentPoly elementary_symmetric(const VarTablePtr& t,
                                 const std::vector<Monomial>& chars, std::size_t p);

// Full torus inversion v -> v^-1 for every torus variable (y, b untouched).
SubstMap torus_inversion(const VarTablePtr& t);

// If every denominator factor divides the numerator exactly, the polynomial
// value; nullopt otherwise.  Display-only helper: equality always goes
// through rf_eq, never through this.
std::optional<LaurentPoly> rf_try_polynomial(const RatFun& f);

// Substitute an exact numeric value for one variable, folding its powers into
// the coefficients.  The variable must not occur in any denominator factor
// (that would leave the factor form) nor with half-integer exponents.
RatFun rf_specialize(const RatFun& f, const std::string& var, const Rat& value);

// Univariate polynomials in the reserved variable b, exact coefficients.
using BSeries = std::map<std::int64_t, Rat>;

struct LinearDivision {
    BSeries quotient;
    Rat remainder;
};

// Synthetic division of P(b) by (b - root); remainder is P(root).
// The Morse-inequality use divides by (1 + b), i.e. root = -1 (the default).
LinearDivision poly_divide_linear(const BSeries& p, const Rat& root = Rat(-1));

Rat bseries_eval(const BSeries& p, const Rat& b);

BSeries bseries_add(const BSeries& a, const BSeries& b);
BSeries bseries_sub(const BSeries& a, const BSeries& b);
BSeries bseries_mul(const BSeries& a, const BSeries& b);

}  // namespace lefloc
