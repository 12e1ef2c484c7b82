#include "lefloc/localization.hpp"

#include <random>
#include <stdexcept>

namespace lefloc {

namespace {

LaurentPoly trace_or_one(const VarTablePtr& t, const LaurentPoly& trace) {
    // A default-constructed bundle trace (no table) means the trivial bundle.
    if (!trace.table()) return LaurentPoly::constant(t, Rat(1));
    require_same_table(t, trace.table());
    return trace;
}

void require_non_unital(const std::vector<Monomial>& ms, const char* what) {
    for (const auto& m : ms)
        if (m.is_unital())
            throw std::invalid_argument(std::string(what) + " contains a unit character");
}

LaurentPoly one_minus_product(const VarTablePtr& t, const std::vector<Monomial>& ms) {
    LaurentPoly acc = LaurentPoly::constant(t, Rat(1));
    for (const auto& m : ms) {
        LaurentPoly f = LaurentPoly::constant(t, Rat(1));
        f.add_term(m, Rat(-1));
        acc = lp_mul(acc, f);
    }
    return acc;
}

}  // namespace

RatFun woods_hole(const VarTablePtr& t, const SmoothWeights& w, std::size_t p) {
    if (p > w.weights.size())
        throw std::out_of_range("form degree exceeds the number of weights");
    require_non_unital(w.weights, "weights");
    LaurentPoly num = lp_mul(trace_or_one(t, w.bundle_trace),
                             elementary_symmetric(t, w.weights, p));
    return RatFun::quotient(t, num, w.weights);
}

RatFun module_lefschetz(const VarTablePtr& t, const ModuleDatum& m) {
    RatFun acc = RatFun::zero(t);
    for (const auto& [q, summands] : m.per_degree) {
        if (q < 0) throw std::invalid_argument("negative cohomology degree");
        for (const auto& s : summands) {
            require_non_unital(s.ring_chars, "ring characters");
            RatFun term = RatFun::quotient(
                t, LaurentPoly::monomial(t, s.generator), s.ring_chars);
            acc = rf_add(acc, q % 2 == 0 ? term : rf_neg(term));
        }
    }
    return acc;
}

RatFun module_poly_lefschetz(const VarTablePtr& t, const ModuleDatum& m) {
    RatFun acc = RatFun::zero(t);
    for (const auto& [q, summands] : m.per_degree) {
        if (q < 0) throw std::invalid_argument("negative cohomology degree");
        Monomial bq = var_monomial(t, "b", q);
        for (const auto& s : summands) {
            require_non_unital(s.ring_chars, "ring characters");
            RatFun term = RatFun::quotient(
                t, LaurentPoly::monomial(t, s.generator.mul(bq)), s.ring_chars);
            acc = rf_add(acc, term);
        }
    }
    return acc;
}

RatFun bfq_local(const VarTablePtr& t, const CompleteIntersectionDatum& c) {
    require_non_unital(c.ambient_weights, "ambient weights");
    require_non_unital(c.defining_weights, "defining weights");
    LaurentPoly num = lp_mul(trace_or_one(t, c.bundle_trace),
                             one_minus_product(t, c.defining_weights));
    return RatFun::quotient(t, num, c.ambient_weights);
}

RatFun dualize(const RatFun& local, int n_parity, const SubstMap& inversion) {
    RatFun r = rf_subst(local, inversion);
    return (n_parity % 2 != 0) ? rf_neg(r) : r;
}

RatFun product_local(const RatFun& l1, const RatFun& l2, int m) {
    RatFun r = rf_mul(l1, l2);
    return (m % 2 != 0) ? rf_neg(r) : r;
}

RatFun global_sum(const std::vector<RatFun>& locals) {
    if (locals.empty())
        throw std::invalid_argument("cannot sum an empty list without a variable table");
    return global_sum(locals.front().table, locals);
}

RatFun global_sum(const VarTablePtr& t, const std::vector<RatFun>& locals) {
    RatFun acc = RatFun::zero(t);
    for (const auto& l : locals) acc = rf_add(acc, l);
    return acc;
}

bool has_degree(const FixedPointDatum& fp, int p) {
    if (fp.split) return has_degree(fp.split->factor1, p);
    switch (fp.kind) {
        case FixedPointDatum::Kind::Smooth:
            if (fp.smooth.hodge_p) return *fp.smooth.hodge_p == p;
            return p >= 0 && p <= static_cast<int>(fp.smooth.weights.size());
        case FixedPointDatum::Kind::Module:
            return fp.module_per_p.count(p) > 0;
        case FixedPointDatum::Kind::Bfq:
            return p == 0;
    }
    return false;
}

RatFun local_lefschetz(const VarTablePtr& t, const FixedPointDatum& fp, int p) {
    if (fp.split) {
        // Degree lives on the first factor; the second factor's data is
        // declared in dual form, so only the top-degree sign remains.
        RatFun l1 = local_lefschetz(t, fp.split->factor1, p);
        RatFun l2 = local_lefschetz(t, fp.split->factor2, 0);
        return product_local(l1, l2, fp.split->dual_top_dim);
    }
    if (!has_degree(fp, p)) return RatFun::zero(t);
    switch (fp.kind) {
        case FixedPointDatum::Kind::Smooth:
            return woods_hole(t, fp.smooth, static_cast<std::size_t>(p));
        case FixedPointDatum::Kind::Module:
            return module_lefschetz(t, fp.module_per_p.at(p));
        case FixedPointDatum::Kind::Bfq:
            return bfq_local(t, fp.ci);
    }
    return RatFun::zero(t);
}

std::map<std::string, Rat> random_point(const VarTablePtr& t, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(2, 19);
    std::map<std::string, Rat> point;
    for (const auto& name : t->names()) {
        int a = num(rng), b = num(rng);
        while (b == a) b = num(rng);
        Rat r(a, b);
        point[name] = r * r;  // perfect square: half exponents stay exact
    }
    return point;
}

VerificationReport verify_identity(const RatFun& lhs, const RatFun& rhs,
                                   unsigned seed) {
    require_same_table(lhs.table, rhs.table);
    VerificationReport report;
    report.exact = rf_eq(lhs, rhs);
    unsigned draw = seed;
    for (int i = 0; i < 5; ++i) {
        for (int attempt = 0;; ++attempt) {
            auto point = random_point(lhs.table, draw++);
            try {
                Rat a = rf_eval(lhs, point);
                Rat b = rf_eval(rhs, point);
                report.witnesses.push_back({std::move(point), a, b});
                break;
            } catch (const std::domain_error&) {
                if (attempt > 100)
                    throw std::runtime_error(
                        "could not find a pole-free evaluation point");
            }
        }
    }
    return report;
}

}  // namespace lefloc
