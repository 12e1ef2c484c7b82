#include "lefloc/laurent.hpp"

namespace lefloc {

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_table(a.table(), b.table());
    LaurentPoly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_table(a.table(), b.table());
    LaurentPoly r(a.table());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) r.add_term(ma.mul(mb), ca * cb);
    return r;
}

LaurentPoly lp_neg(const LaurentPoly& a) { return lp_scale(a, Rat(-1)); }

LaurentPoly lp_scale(const LaurentPoly& a, const Rat& c) {
    LaurentPoly r(a.table());
    if (c == 0) return r;
    for (const auto& [m, coeff] : a.terms()) r.add_term(m, coeff * c);
    return r;
}

LaurentPoly lp_shift(const LaurentPoly& a, const Monomial& m) {
    LaurentPoly r(a.table());
    for (const auto& [mm, c] : a.terms()) r.add_term(mm.mul(m), c);
    return r;
}

}  // namespace lefloc
