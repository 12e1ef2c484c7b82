#include "lefloc/invariants.hpp"

#include <stdexcept>

namespace lefloc {

ChiY chi_y_assemble(const std::map<int, RatFun>& per_p, int n) {
    if (per_p.empty()) throw std::invalid_argument("no Hodge-degree data to assemble");
    const VarTablePtr& t = per_p.begin()->second.table;
    RatFun acc = RatFun::zero(t);
    for (const auto& [p, l] : per_p) {
        if (p < 0 || p > n) throw std::out_of_range("Hodge degree outside [0, n]");
        acc = rf_add(acc, rf_mul(RatFun::monomial(t, var_monomial(t, "y", p)), l));
    }
    return ChiY{acc, n};
}

bool chi_y_duality_check(const ChiY& c, const SubstMap& inversion) {
    const VarTablePtr& t = c.value.table;
    SubstMap full = inversion;
    full["y"] = var_monomial(t, "y", -1);
    RatFun rhs = rf_mul(RatFun::monomial(t, var_monomial(t, "y", c.n)),
                        rf_subst(c.value, full));
    if (c.n % 2 != 0) rhs = rf_neg(rhs);
    return rf_eq(c.value, rhs);
}

RatFun specialize(const ChiY& c, const Rat& y0) {
    return rf_specialize(c.value, "y", y0);
}

std::pair<RatFun, RatFun> sd_asd_indices(const ChiY& c) {
    RatFun minus = specialize(c, Rat(-1));
    RatFun plus = specialize(c, Rat(1));
    Rat half(1, 2);
    return {rf_scale(rf_add(minus, plus), half),
            rf_scale(rf_add(minus, rf_neg(plus)), half)};
}

bool sd_asd_duality_check(const ChiY& c, const std::string& var) {
    const VarTablePtr& t = c.value.table;
    if (t->index(var) >= t->torus_count())
        throw std::invalid_argument("conjugation variable must be a torus variable");
    auto [sd, asd] = sd_asd_indices(c);
    SubstMap conj;
    conj[var] = var_monomial(t, var, -1);
    return rf_eq(asd, rf_subst(sd, conj));
}

RatFun spin_local(const RatFun& hol, const Monomial& half_char) {
    return rf_mul(hol, RatFun::monomial(hol.table, half_char));
}

}  // namespace lefloc
