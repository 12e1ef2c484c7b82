#include "lefloc/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace lefloc {

RatFun RatFun::zero(const VarTablePtr& t) {
    RatFun f;
    f.table = t;
    f.unit = unit_monomial(t);
    f.num = LaurentPoly(t);
    return f;
}

RatFun RatFun::constant(const VarTablePtr& t, const Rat& c) {
    RatFun f = zero(t);
    f.num = LaurentPoly::constant(t, c);
    return rf_canonicalize(std::move(f));
}

RatFun RatFun::from_poly(const VarTablePtr& t, const LaurentPoly& p) {
    RatFun f = zero(t);
    f.num = p;
    return rf_canonicalize(std::move(f));
}

RatFun RatFun::monomial(const VarTablePtr& t, const Monomial& m) {
    RatFun f = zero(t);
    f.num = LaurentPoly::constant(t, Rat(1));
    f.unit = m;
    return f;
}

RatFun RatFun::quotient(const VarTablePtr& t, const LaurentPoly& numerator,
                        const std::vector<Monomial>& den_monomials) {
    RatFun f = zero(t);
    f.num = numerator;
    for (const auto& m : den_monomials) {
        if (m.is_unital()) throw std::invalid_argument("denominator factor (1 - 1) vanishes");
        f.den.push_back(DenomFactor{m});
    }
    return rf_canonicalize(std::move(f));
}

// (1 - m) with lex-negative m is rewritten as -m * (1 - m^-1): the -m goes
// into sign/unit and the factor flips orientation.  Zero numerator collapses
// to the canonical zero.
RatFun rf_canonicalize(RatFun f) {
    if (f.num.is_zero()) {
        RatFun z = RatFun::zero(f.table);
        return z;
    }
    for (auto& d : f.den) {
        if (d.m.is_unital()) throw std::invalid_argument("denominator factor (1 - 1) vanishes");
        if (d.m.lex_sign() < 0) {
            f.sign = -f.sign;
            f.unit = f.unit.mul(d.m.inverse());
            d.m = d.m.inverse();
        }
    }
    std::sort(f.den.begin(), f.den.end());
    return f;
}

RatFun rf_neg(const RatFun& a) {
    if (a.is_zero()) return a;
    RatFun r = a;
    r.sign = -r.sign;
    return r;
}

RatFun rf_scale(const RatFun& a, const Rat& c) {
    if (c == 0) return RatFun::zero(a.table);
    RatFun r = a;
    r.num = lp_scale(r.num, c);
    return r;
}

namespace {

// sign * unit * num flattened into a plain Laurent polynomial.
LaurentPoly flatten_numerator(const RatFun& f) {
    LaurentPoly n = lp_shift(f.num, f.unit);
    return f.sign < 0 ? lp_neg(n) : n;
}

LaurentPoly one_minus(const VarTablePtr& t, const Monomial& m) {
    LaurentPoly p = LaurentPoly::constant(t, Rat(1));
    p.add_term(m, Rat(-1));
    return p;
}

// Multiset difference b \ a of sorted factor vectors.
std::vector<DenomFactor> factor_difference(const std::vector<DenomFactor>& b,
                                           const std::vector<DenomFactor>& a) {
    std::vector<DenomFactor> out;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(out));
    return out;
}

}  // namespace

// Common denominator = multiset maximum (shared factors counted once); no
// cancellation afterwards, equality stays cross-multiplicative.
RatFun rf_add(const RatFun& a, const RatFun& b) {
    require_same_table(a.table, b.table);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;

    std::vector<DenomFactor> common;
    std::set_union(a.den.begin(), a.den.end(), b.den.begin(), b.den.end(),
                   std::back_inserter(common));

    LaurentPoly na = flatten_numerator(a);
    for (const auto& d : factor_difference(common, a.den))
        na = lp_mul(na, one_minus(a.table, d.m));
    LaurentPoly nb = flatten_numerator(b);
    for (const auto& d : factor_difference(common, b.den))
        nb = lp_mul(nb, one_minus(a.table, d.m));

    RatFun r = RatFun::zero(a.table);
    r.num = lp_add(na, nb);
    r.den = std::move(common);
    if (r.num.is_zero()) return RatFun::zero(a.table);
    return rf_canonicalize(std::move(r));
}

RatFun rf_mul(const RatFun& a, const RatFun& b) {
    require_same_table(a.table, b.table);
    if (a.is_zero() || b.is_zero()) return RatFun::zero(a.table);
    RatFun r = RatFun::zero(a.table);
    r.sign = a.sign * b.sign;
    r.unit = a.unit.mul(b.unit);
    r.num = lp_mul(a.num, b.num);
    r.den = a.den;
    r.den.insert(r.den.end(), b.den.begin(), b.den.end());
    return rf_canonicalize(std::move(r));
}

// Cross-multiplication: a.num * prod(b.den) == b.num * prod(a.den), with signs
// and units folded in.  Exact and GCD-free.
bool rf_eq(const RatFun& a, const RatFun& b) {
    require_same_table(a.table, b.table);
    LaurentPoly lhs = flatten_numerator(a);
    for (const auto& d : b.den) lhs = lp_mul(lhs, one_minus(a.table, d.m));
    LaurentPoly rhs = flatten_numerator(b);
    for (const auto& d : a.den) rhs = lp_mul(rhs, one_minus(a.table, d.m));
    return lhs == rhs;
}

namespace {

// Image of one monomial under a substitution map: exponents distribute over
// the image monomials.  Doubled bookkeeping: m = prod v_i^(e_i/2) maps to
// prod image(v_i)^(e_i/2), so image exp2 entries pick up e_i * s_exp2 / 2 —
// requiring the product to stay integral (it always is: e_i and s_exp2 are
// both doubled, product of halves is e_i*s_exp2/4... kept exact by checking
// divisibility).
Monomial subst_monomial(const VarTablePtr& t, const Monomial& m,
                        const std::vector<Monomial>& images) {
    Monomial out = unit_monomial(t);
    for (std::size_t i = 0; i < m.exp2.size(); ++i) {
        std::int64_t e2 = m.exp2[i];
        if (e2 == 0) continue;
        const Monomial& img = images[i];
        for (std::size_t j = 0; j < out.exp2.size(); ++j) {
            std::int64_t prod = e2 * img.exp2[j];  // 4x the true exponent
            if (prod % 2 != 0)
                throw std::domain_error(
                    "substitution produces a quarter-integer exponent");
            out.exp2[j] += prod / 2;
        }
    }
    return out;
}

}  // namespace

RatFun rf_subst(const RatFun& f, const SubstMap& map) {
    const VarTablePtr& t = f.table;
    std::vector<Monomial> images;
    images.reserve(t->size());
    for (std::size_t i = 0; i < t->size(); ++i) {
        auto it = map.find(t->names()[i]);
        if (it == map.end()) {
            Monomial self = unit_monomial(t);
            self.exp2[i] = 2;
            images.push_back(self);
        } else {
            if (it->second.exp2.size() != t->size())
                throw std::invalid_argument("substitution image has wrong table size");
            images.push_back(it->second);
        }
    }
    for (const auto& [name, _] : map)
        if (!t->has(name)) throw std::invalid_argument("unknown variable '" + name + "'");

    RatFun r = RatFun::zero(t);
    r.sign = f.sign;
    r.unit = subst_monomial(t, f.unit, images);
    LaurentPoly num(t);
    for (const auto& [m, c] : f.num.terms()) num.add_term(subst_monomial(t, m, images), c);
    r.num = num;
    for (const auto& d : f.den) {
        Monomial img = subst_monomial(t, d.m, images);
        if (img.is_unital())
            throw std::domain_error("substitution maps a denominator factor to 1");
        r.den.push_back(DenomFactor{img});
    }
    return rf_canonicalize(std::move(r));
}

namespace {

// Evaluate a monomial at a rational point.  Odd doubled exponents need an
// exact square root of the assigned value.
Rat eval_monomial(const VarTablePtr& t, const Monomial& m,
                  const std::vector<Rat>& values,
                  std::vector<std::optional<Rat>>& sqrt_cache) {
    Rat acc(1);
    for (std::size_t i = 0; i < m.exp2.size(); ++i) {
        std::int64_t e2 = m.exp2[i];
        if (e2 == 0) continue;
        if (e2 % 2 == 0) {
            acc *= rat_pow(values[i], e2 / 2);
        } else {
            if (!sqrt_cache[i].has_value())
                throw std::domain_error("half exponent on '" + t->names()[i] +
                                        "' needs a perfect-square value");
            acc *= rat_pow(*sqrt_cache[i], e2);
        }
    }
    return acc;
}

}  // namespace

Rat rf_eval(const RatFun& f, const std::map<std::string, Rat>& point) {
    const VarTablePtr& t = f.table;
    std::vector<Rat> values(t->size());
    for (std::size_t i = 0; i < t->size(); ++i) {
        auto it = point.find(t->names()[i]);
        if (it == point.end())
            throw std::invalid_argument("no value for variable '" + t->names()[i] + "'");
        values[i] = it->second;
    }
    std::vector<std::optional<Rat>> sqrt_cache(t->size());
    for (std::size_t i = 0; i < t->size(); ++i) sqrt_cache[i] = rat_sqrt(values[i]);

    Rat acc(1);
    if (f.sign < 0) acc = -acc;
    acc *= eval_monomial(t, f.unit, values, sqrt_cache);
    Rat n(0);
    for (const auto& [m, c] : f.num.terms())
        n += c * eval_monomial(t, m, values, sqrt_cache);
    acc *= n;
    for (const auto& d : f.den) {
        Rat dv = Rat(1) - eval_monomial(t, d.m, values, sqrt_cache);
        if (dv == 0) throw std::domain_error("pole: denominator factor vanishes at the point");
        acc /= dv;
    }
    return acc;
}

// Region-wise geometric expansion.
//
// Each factor 1/(1-m) expands inside as sum_k m^k, outside as
// -m^-1 * sum_k m^-k.  The product is truncated to the fixed window
//   -2*(order+1) <= total doubled torus degree <= 2*order,
// i.e. plain degrees -(order+1) .. order, which reproduces the order-3
// reference expansions and is symmetric enough for both regions.  Per factor,
// enough series terms are taken that any term landing in the window is
// present, provided the factor degrees all point in one direction; factors of
// torus degree 0 are rejected since no finite window captures them.
LaurentPoly rf_expand(const RatFun& f, const std::map<Monomial, Region>& region,
                      long order) {
    if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
    const VarTablePtr& t = f.table;
    const std::size_t tc = t->torus_count();
    const std::int64_t hi = 2 * order, lo = -2 * (order + 1);

    LaurentPoly acc = lp_shift(f.num, f.unit);
    if (f.sign < 0) acc = lp_neg(acc);

    const std::int64_t span = hi - lo;
    for (const auto& d : f.den) {
        std::int64_t deg = d.m.torus_degree2(tc);
        if (deg == 0)
            throw std::domain_error(
                "cannot expand: denominator factor has total torus degree 0");
        auto it = region.find(d.m);
        Region side = it == region.end() ? Region::inside : it->second;
        std::int64_t k_max =
            span / std::llabs(deg) + order + 2;  // deterministic over-cover
        LaurentPoly series(t);
        if (side == Region::inside) {
            Monomial mk = unit_monomial(t);
            for (std::int64_t k = 0; k <= k_max; ++k, mk = mk.mul(d.m))
                series.add_term(mk, Rat(1));
        } else {
            // 1/(1-m) = -m^-1/(1-m^-1) = -(m^-1 + m^-2 + ...)
            Monomial inv = d.m.inverse();
            Monomial mk = inv;
            for (std::int64_t k = 1; k <= k_max + 1; ++k, mk = mk.mul(inv))
                series.add_term(mk, Rat(-1));
        }
        acc = lp_mul(acc, series);
    }

    LaurentPoly out(t);
    for (const auto& [m, c] : acc.terms()) {
        std::int64_t dd = m.torus_degree2(tc);
        if (dd >= lo && dd <= hi) out.add_term(m, c);
    }
    return out;
}

LaurentPoly rf_expand(const RatFun& f, Region all_factors, long order) {
    std::map<Monomial, Region> region;
    for (const auto& d : f.den) region[d.m] = all_factors;
    return rf_expand(f, region, order);
}

LaurentPoly elementary_symmetric(const VarTablePtr& t,
                                 const std::vector<Monomial>& chars, std::size_t p) {
    if (p > chars.size()) throw std::invalid_argument("symmetric degree out of range");
    // e_p via the usual DP over prefix products
    std::vector<LaurentPoly> e(p + 1, LaurentPoly(t));
    e[0] = LaurentPoly::constant(t, Rat(1));
    for (const auto& c : chars)
        for (long j = static_cast<long>(p); j >= 1; --j)
            e[j] = lp_add(e[j], lp_shift(e[j - 1], c));
    return e[p];
}

SubstMap torus_inversion(const VarTablePtr& t) {
    SubstMap m;
    for (std::size_t i = 0; i < t->torus_count(); ++i) {
        Monomial inv = unit_monomial(t);
        inv.exp2[i] = -2;
        m[t->names()[i]] = inv;
    }
    return m;
}

LinearDivision poly_divide_linear(const BSeries& p, const Rat& root) {
    // Horner/synthetic division of P(b) by (b - root), lowest-degree form:
    // track coefficients from the top down.
    LinearDivision out;
    if (p.empty()) {
        out.remainder = Rat(0);
        return out;
    }
    std::int64_t deg = p.rbegin()->first;
    if (deg < 0) throw std::invalid_argument("negative powers of b are not divisible here");
    Rat carry(0);
    for (std::int64_t k = deg; k >= 1; --k) {
        auto it = p.find(k);
        Rat ck = it == p.end() ? Rat(0) : it->second;
        carry = ck + root * carry;  // coefficient of b^(k-1) in the quotient
        if (carry != 0) out.quotient[k - 1] = carry;
    }
    {
        auto it = p.find(0);
        Rat c0 = it == p.end() ? Rat(0) : it->second;
        out.remainder = c0 + root * carry;
    }
    return out;
}

Rat bseries_eval(const BSeries& p, const Rat& b) {
    Rat acc(0);
    for (const auto& [k, c] : p) acc += c * rat_pow(b, k);
    return acc;
}

BSeries bseries_add(const BSeries& a, const BSeries& b) {
    BSeries r = a;
    for (const auto& [k, c] : b) {
        auto& slot = r[k];
        slot += c;
        if (slot == 0) r.erase(k);
    }
    return r;
}

BSeries bseries_sub(const BSeries& a, const BSeries& b) {
    BSeries r = a;
    for (const auto& [k, c] : b) {
        auto& slot = r[k];
        slot -= c;
        if (slot == 0) r.erase(k);
    }
    return r;
}

BSeries bseries_mul(const BSeries& a, const BSeries& b) {
    BSeries r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto key = ka + kb;
            auto& slot = r[key];
            slot += ca * cb;
            if (slot == 0) r.erase(key);
        }
    return r;
}

namespace {

// Exact division of P by (1 - m) with m canonically oriented (so the unit
// monomial is lexicographically below m, and below mu*m for every mu).
// Peeling the smallest term of the running remainder keeps the process
// strictly increasing; a step cap bounds the non-divisible case.
std::optional<LaurentPoly> divide_one_minus(const LaurentPoly& p, const Monomial& m) {
    LaurentPoly q(p.table());
    LaurentPoly r = p;
    long guard = 4096 + 64 * static_cast<long>(p.terms().size());
    while (!r.is_zero()) {
        if (--guard < 0) return std::nullopt;
        auto [mu, c] = *r.terms().begin();
        q.add_term(mu, c);
        r.add_term(mu, -c);
        r.add_term(mu.mul(m), c);
    }
    return q;
}

}  // namespace

std::optional<LaurentPoly> rf_try_polynomial(const RatFun& f) {
    LaurentPoly p = flatten_numerator(f);
    for (const auto& d : f.den) {
        auto q = divide_one_minus(p, d.m);
        if (!q) return std::nullopt;
        p = std::move(*q);
    }
    return p;
}

RatFun rf_specialize(const RatFun& f, const std::string& var, const Rat& value) {
    const std::size_t vi = f.table->index(var);
    for (const auto& d : f.den)
        if (d.m.exp2[vi] != 0)
            throw std::domain_error("cannot specialize a variable occurring in a denominator factor");

    auto fold = [&](const Monomial& m, Rat& scale) {
        std::int64_t e2 = m.exp2[vi];
        if (e2 % 2 != 0)
            throw std::domain_error("cannot specialize a half-integer exponent to a number");
        scale *= rat_pow(value, e2 / 2);
        Monomial r = m;
        r.exp2[vi] = 0;
        return r;
    };

    RatFun out = f;
    Rat unit_scale(1);
    out.unit = fold(f.unit, unit_scale);
    LaurentPoly num(f.table);
    for (const auto& [m, c] : f.num.terms()) {
        Rat scale = unit_scale;
        Monomial folded = fold(m, scale);
        num.add_term(folded, c * scale);
    }
    out.num = std::move(num);
    return rf_canonicalize(std::move(out));
}

}  // namespace lefloc
