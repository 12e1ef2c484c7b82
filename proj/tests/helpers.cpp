#include "helpers.hpp"

#include <stdexcept>

namespace testutil {

using namespace lefloc;

namespace {

int uniform(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rat small_rat(std::mt19937& rng, bool nonzero = false) {
    int n = uniform(rng, -3, 3);
    if (nonzero && n == 0) n = 1;
    int d = uniform(rng, 1, 3);
    return Rat(n, d);
}

// Random unimodular integer matrix with its exact inverse, as a product of
// elementary row operations applied to the identity.
std::pair<MatQ, MatQ> random_unimodular(std::mt19937& rng, std::size_t n) {
    MatQ u = MatQ::identity(n);
    MatQ uinv = MatQ::identity(n);
    if (n == 0) return {u, uinv};
    int ops = uniform(rng, 0, static_cast<int>(3 * n));
    for (int k = 0; k < ops; ++k) {
        std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
        if (i == j) continue;
        Rat c(uniform(rng, -2, 2));
        if (c == 0) continue;
        // row_i += c * row_j  (and the inverse op accumulated on the right)
        for (std::size_t col = 0; col < n; ++col) u.at(i, col) += c * u.at(j, col);
        for (std::size_t row = 0; row < n; ++row) uinv.at(row, j) -= c * uinv.at(row, i);
    }
    return {u, uinv};
}

}  // namespace

RandomComplex random_complex(std::mt19937& rng, int max_degrees, int max_rank, int max_harm) {
    int degrees = uniform(rng, 1, max_degrees);  // number of graded pieces
    std::vector<int> harm(degrees), rank(degrees, 0);
    for (int k = 0; k < degrees; ++k) harm[k] = uniform(rng, 0, max_harm);
    for (int k = 0; k + 1 < degrees; ++k) rank[k] = uniform(rng, 0, max_rank);

    RandomComplex out;
    out.cohomology = harm;
    // Degree layout: [boundary block | harmonic block | transfer block].
    auto dim_of = [&](int k) { return (k > 0 ? rank[k - 1] : 0) + harm[k] + rank[k]; };
    for (int k = 0; k < degrees; ++k) out.c.dims.push_back(dim_of(k));

    // Standard-form differentials: transfer block of degree k maps to the
    // boundary block of degree k+1 identically.
    for (int k = 0; k + 1 < degrees; ++k) {
        MatQ d(static_cast<std::size_t>(dim_of(k + 1)), static_cast<std::size_t>(dim_of(k)));
        int src = (k > 0 ? rank[k - 1] : 0) + harm[k];
        for (int i = 0; i < rank[k]; ++i)
            d.at(static_cast<std::size_t>(i), static_cast<std::size_t>(src + i)) = 1;
        out.c.differentials.push_back(std::move(d));
    }

    // Block upper-triangular endomorphism; the transfer diagonal block of
    // degree k equals the boundary diagonal block of degree k+1 so that the
    // differentials intertwine.  The harmonic diagonal block is free and
    // carries the graded trace.
    std::vector<MatQ> transfer(degrees);  // C_k = B_{k+1}, rank[k] x rank[k]
    for (int k = 0; k + 1 < degrees; ++k) {
        transfer[k] = MatQ(static_cast<std::size_t>(rank[k]), static_cast<std::size_t>(rank[k]));
        for (int i = 0; i < rank[k]; ++i)
            for (int j = 0; j < rank[k]; ++j)
                transfer[k].at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    small_rat(rng);
    }
    for (int k = 0; k < degrees; ++k) {
        int nb = k > 0 ? rank[k - 1] : 0, nh = harm[k], nc = rank[k];
        int n = nb + nh + nc;
        MatQ t(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        Rat harmonic_trace(0);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j)
                t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    transfer[k - 1].at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        for (int i = 0; i < nh; ++i)
            for (int j = 0; j < nh; ++j) {
                Rat v = small_rat(rng);
                t.at(static_cast<std::size_t>(nb + i), static_cast<std::size_t>(nb + j)) = v;
                if (i == j) harmonic_trace += v;
            }
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < nc; ++j)
                t.at(static_cast<std::size_t>(nb + nh + i),
                     static_cast<std::size_t>(nb + nh + j)) =
                    transfer[k].at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        // strictly-upper mixing that the differentials cannot see:
        // boundary <- harmonic, boundary <- transfer, harmonic <- transfer
        // would break intertwining through the transfer columns, so only the
        // boundary <- harmonic block is filled.
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nh; ++j)
                t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(nb + j)) =
                    small_rat(rng);
        out.t.maps.push_back(std::move(t));
        if (harmonic_trace != 0) out.expected_lefschetz[k] = harmonic_trace;
    }

    // Conjugate everything by random unimodular changes of basis.
    std::vector<MatQ> u(degrees), uinv(degrees);
    for (int k = 0; k < degrees; ++k) {
        auto [a, b] = random_unimodular(rng, static_cast<std::size_t>(out.c.dims[k]));
        u[k] = std::move(a);
        uinv[k] = std::move(b);
    }
    for (int k = 0; k + 1 < degrees; ++k)
        out.c.differentials[static_cast<std::size_t>(k)] = mat_mul(
            u[k + 1], mat_mul(out.c.differentials[static_cast<std::size_t>(k)], uinv[k]));
    for (int k = 0; k < degrees; ++k)
        out.t.maps[static_cast<std::size_t>(k)] =
            mat_mul(u[k], mat_mul(out.t.maps[static_cast<std::size_t>(k)], uinv[k]));
    return out;
}

RatFun random_ratfun(const VarTablePtr& t, std::mt19937& rng) {
    LaurentPoly num(t);
    int terms = uniform(rng, 1, 3);
    for (int i = 0; i < terms; ++i) {
        Monomial m = unit_monomial(t);
        for (std::size_t v = 0; v < t->torus_count(); ++v)
            m.exp2[v] = 2 * uniform(rng, -2, 2);
        num.add_term(m, small_rat(rng, /*nonzero=*/true));
    }
    if (num.is_zero()) num = LaurentPoly::constant(t, 1);
    std::vector<Monomial> den;
    int factors = uniform(rng, 0, 2);
    for (int i = 0; i < factors; ++i) {
        Monomial m = unit_monomial(t);
        for (std::size_t v = 0; v < t->torus_count(); ++v) m.exp2[v] = 2 * uniform(rng, -2, 2);
        if (m.is_unital()) m.exp2[0] = 2;
        den.push_back(m);
    }
    return RatFun::quotient(t, num, den);
}

PropertyStats prop_ring_axioms(unsigned seed, int instances) {
    PropertyStats stats;
    std::mt19937 rng(seed);
    auto t = VarTable::make({"lambda", "mu"});
    for (int i = 0; i < instances; ++i) {
        RatFun a = random_ratfun(t, rng), b = random_ratfun(t, rng), c = random_ratfun(t, rng);
        bool ok = rf_eq(rf_add(a, b), rf_add(b, a)) &&
                  rf_eq(rf_add(rf_add(a, b), c), rf_add(a, rf_add(b, c))) &&
                  rf_eq(rf_mul(a, b), rf_mul(b, a)) &&
                  rf_eq(rf_mul(rf_mul(a, b), c), rf_mul(a, rf_mul(b, c))) &&
                  rf_eq(rf_mul(a, rf_add(b, c)), rf_add(rf_mul(a, b), rf_mul(a, c))) &&
                  rf_eq(rf_add(a, rf_neg(a)), RatFun::zero(t));
        stats.count(ok, "ring axiom instance " + std::to_string(i));
    }
    return stats;
}

namespace {

bool ratfun_identical(const RatFun& a, const RatFun& b) {
    return a.sign == b.sign && a.unit == b.unit && a.num == b.num && a.den == b.den;
}

}  // namespace

PropertyStats prop_canonical_idempotent(unsigned seed, int instances) {
    PropertyStats stats;
    std::mt19937 rng(seed);
    auto t = VarTable::make({"lambda", "mu"});
    for (int i = 0; i < instances; ++i) {
        RatFun a = random_ratfun(t, rng);
        RatFun once = rf_canonicalize(a);
        RatFun twice = rf_canonicalize(once);
        stats.count(ratfun_identical(once, twice),
                    "canonicalization instance " + std::to_string(i));
    }
    return stats;
}

PropertyStats prop_subst_homomorphism(unsigned seed, int instances) {
    PropertyStats stats;
    std::mt19937 rng(seed);
    auto t = VarTable::make({"lambda", "mu"});
    // Bijective monomial substitutions keep denominator factors non-unital.
    std::vector<SubstMap> maps = {
        {{"lambda", var_monomial(t, "mu")}, {"mu", var_monomial(t, "lambda")}},
        {{"lambda", var_monomial(t, "lambda", -1)}, {"mu", var_monomial(t, "mu", -1)}},
        {{"lambda", var_monomial(t, "mu", -1)}, {"mu", var_monomial(t, "lambda")}},
        {{"lambda", var_monomial(t, "lambda").mul(var_monomial(t, "mu"))},
         {"mu", var_monomial(t, "mu")}},
    };
    for (int i = 0; i < instances; ++i) {
        RatFun a = random_ratfun(t, rng), b = random_ratfun(t, rng);
        const SubstMap& m = maps[static_cast<std::size_t>(i) % maps.size()];
        bool ok = rf_eq(rf_subst(rf_mul(a, b), m), rf_mul(rf_subst(a, m), rf_subst(b, m))) &&
                  rf_eq(rf_subst(rf_add(a, b), m), rf_add(rf_subst(a, m), rf_subst(b, m)));
        stats.count(ok, "substitution instance " + std::to_string(i));
    }
    return stats;
}

PropertyStats prop_eq_vs_eval(unsigned seed, int instances) {
    PropertyStats stats;
    std::mt19937 rng(seed);
    auto t = VarTable::make({"lambda", "mu"});
    for (int i = 0; i < instances; ++i) {
        RatFun a = random_ratfun(t, rng);
        RatFun b;
        bool expect_equal = i % 2 == 0;
        if (expect_equal) {
            // Same value through a different representation: multiply
            // numerator and denominator by the same (1 - m).
            Monomial m = unit_monomial(t);
            m.exp2[0] = 2 * uniform(rng, 1, 2);
            m.exp2[1] = 2 * uniform(rng, -1, 1);
            LaurentPoly factor = LaurentPoly::constant(t, 1);
            factor.add_term(m, Rat(-1));
            b = rf_mul(rf_mul(a, RatFun::from_poly(t, factor)),
                       RatFun::quotient(t, LaurentPoly::constant(t, 1), {m}));
        } else {
            b = rf_add(a, RatFun::constant(t, Rat(uniform(rng, 1, 3))));
        }
        bool eq = rf_eq(a, b);
        // 20-point randomized evaluation with pole redraws.
        int agreements = 0, checked = 0;
        for (unsigned s = 0; checked < 20 && s < 400; ++s) {
            auto point = random_point(t, seed * 7919u + static_cast<unsigned>(i) * 131u + s);
            try {
                Rat va = rf_eval(a, point);
                Rat vb = rf_eval(b, point);
                checked += 1;
                agreements += va == vb ? 1 : 0;
            } catch (const std::domain_error&) {
                continue;
            }
        }
        bool eval_equal = checked == 20 && agreements == 20;
        bool eval_diff = checked == 20 && agreements < 20;
        bool ok = expect_equal ? (eq && eval_equal) : (!eq && eval_diff);
        stats.count(ok, "eq-vs-eval instance " + std::to_string(i));
    }
    return stats;
}

}  // namespace testutil
