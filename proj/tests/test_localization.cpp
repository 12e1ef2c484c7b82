#include <catch2/catch_amalgamated.hpp>

#include "lefloc/expr.hpp"
#include "lefloc/format.hpp"
#include "lefloc/localization.hpp"

using namespace lefloc;

namespace {

Monomial mono(const VarTablePtr& t, const std::string& name, std::int64_t n = 1,
              std::int64_t d = 1) {
    return var_monomial(t, name, n, d);
}

RatFun parse(const VarTablePtr& t, const std::string& s) { return parse_ratfun(t, s); }

}  // namespace

TEST_CASE("smooth local numbers across form degrees") {
    auto t = VarTable::make({"lambda", "mu"});
    SmoothWeights w;
    w.weights = {mono(t, "lambda", -2), mono(t, "mu").mul(mono(t, "lambda", -1))};
    CHECK(rf_eq(woods_hole(t, w, 0),
                parse(t, "1/((1-lambda^-2)(1-lambda^-1 mu))")));
    CHECK(rf_eq(woods_hole(t, w, 1),
                parse(t, "(lambda^-2 + lambda^-1 mu)/((1-lambda^-2)(1-lambda^-1 mu))")));
    CHECK(rf_eq(woods_hole(t, w, 2),
                parse(t, "lambda^-3 mu/((1-lambda^-2)(1-lambda^-1 mu))")));
    CHECK_THROWS_AS(woods_hole(t, w, 3), std::out_of_range);
}

TEST_CASE("alternating sum of smooth local numbers collapses to 1") {
    auto t = VarTable::make({"lambda", "mu", "gamma"});
    SmoothWeights w;
    w.weights = {mono(t, "lambda", 2), mono(t, "mu", -1), mono(t, "gamma", 3)};
    RatFun acc = RatFun::zero(t);
    int sign = 1;
    for (std::size_t p = 0; p <= w.weights.size(); ++p) {
        RatFun term = woods_hole(t, w, p);
        acc = rf_add(acc, sign > 0 ? term : rf_neg(term));
        sign = -sign;
    }
    CHECK(rf_eq(acc, RatFun::constant(t, 1)));
}

TEST_CASE("bundle trace multiplies the smooth local number") {
    auto t = VarTable::make({"lambda"});
    SmoothWeights w;
    w.weights = {mono(t, "lambda")};
    w.bundle_trace = to_laurent(parse(t, "1 + lambda^3"));
    CHECK(rf_eq(woods_hole(t, w, 0), parse(t, "(1 + lambda^3)/(1-lambda)")));
}

TEST_CASE("module local numbers") {
    auto t = VarTable::make({"lambda", "mu"});
    ModuleDatum m;
    m.per_degree[0] = {
        {unit_monomial(t), {mono(t, "lambda", 2), mono(t, "mu", 2)}},
        {mono(t, "lambda").mul(mono(t, "mu")), {mono(t, "lambda", 2), mono(t, "mu", 2)}}};
    CHECK(rf_eq(module_lefschetz(t, m),
                parse(t, "(1 + lambda*mu)/((1-lambda^2)(1-mu^2))")));

    ModuleDatum only_q1;
    only_q1.per_degree[1] = {{unit_monomial(t), {mono(t, "lambda")}}};
    CHECK(rf_eq(module_lefschetz(t, only_q1), parse(t, "-1/(1-lambda)")));

    ModuleDatum negative;
    negative.per_degree[-1] = {{unit_monomial(t), {mono(t, "lambda")}}};
    CHECK_THROWS_AS(module_lefschetz(t, negative), std::invalid_argument);
}

TEST_CASE("graded module trace specializes to the alternating one") {
    auto t = VarTable::make({"lambda"});
    ModuleDatum m;
    m.per_degree[0] = {{unit_monomial(t), {mono(t, "lambda")}}};
    m.per_degree[1] = {{mono(t, "lambda", -1), {}}};
    m.per_degree[2] = {{mono(t, "lambda", 3), {mono(t, "lambda")}}};
    RatFun graded = module_poly_lefschetz(t, m);
    CHECK(rf_eq(rf_specialize(graded, "b", Rat(-1)), module_lefschetz(t, m)));
    CHECK(rf_eq(rf_specialize(graded, "b", Rat(1)),
                parse(t, "1/(1-lambda) + lambda^-1 + lambda^3/(1-lambda)")));
}

TEST_CASE("complete-intersection local numbers") {
    auto t = VarTable::make({"lambda"});
    CompleteIntersectionDatum c;
    c.ambient_weights = {mono(t, "lambda", 2), mono(t, "lambda", 3)};
    c.defining_weights = {mono(t, "lambda", 6)};
    RatFun l = bfq_local(t, c);
    CHECK(rf_eq(l, parse(t, "(1 - lambda^6)/((1-lambda^2)(1-lambda^3))")));
    // not a polynomial, but the two-point global is
    RatFun smooth = parse(t, "1/(1-lambda^-1)");
    CHECK(rf_eq(global_sum({l, smooth}), parse(t, "1 - lambda")));
}

TEST_CASE("dual local numbers") {
    auto t = VarTable::make({"lambda"});
    SubstMap inv = torus_inversion(t);
    RatFun f = parse(t, "1/(1-lambda)");
    // odd parity flips the sign: -1/(1-lambda^-1) = lambda/(1-lambda)
    CHECK(rf_eq(dualize(f, 1, inv), parse(t, "lambda/(1-lambda)")));
    CHECK(rf_eq(dualize(f, 0, inv), parse(t, "1/(1-lambda^-1)")));
    // a fixed point and its dual sum to the constant for the two-sphere
    CHECK(rf_eq(rf_add(f, dualize(f, 1, inv)), parse(t, "(1+lambda)/(1-lambda)")));
}

TEST_CASE("product of attracting and dualized expanding factors") {
    auto t = VarTable::make({"lambda", "mu"});
    RatFun l1 = parse(t, "1/(1-lambda)");
    RatFun l2 = parse(t, "mu/(1-mu)");
    CHECK(rf_eq(product_local(l1, l2, 0), rf_mul(l1, l2)));
    CHECK(rf_eq(product_local(l1, l2, 1), rf_neg(rf_mul(l1, l2))));
    CHECK(rf_eq(product_local(l1, l2, 2), rf_mul(l1, l2)));
}

TEST_CASE("split fixed points multiply their factor numbers") {
    auto t = VarTable::make({"lambda", "mu"});
    FixedPointDatum f1;
    f1.name = "att";
    f1.smooth.weights = {mono(t, "lambda")};
    FixedPointDatum f2;
    f2.name = "exp";
    f2.smooth.weights = {mono(t, "mu", -1)};
    FixedPointDatum fp;
    fp.name = "prod";
    fp.split = std::make_shared<FixedPointDatum::Split>();
    fp.split->factor1 = f1;
    fp.split->factor2 = f2;
    fp.split->dual_top_dim = 1;
    RatFun expect = product_local(local_lefschetz(t, f1, 0), local_lefschetz(t, f2, 0), 1);
    CHECK(rf_eq(local_lefschetz(t, fp, 0), expect));
    CHECK(rf_eq(expect, rf_neg(parse(t, "1/((1-lambda)(1-mu^-1))"))));
}

TEST_CASE("per-degree availability") {
    auto t = VarTable::make({"lambda"});
    FixedPointDatum smooth;
    smooth.smooth.weights = {mono(t, "lambda")};
    CHECK(has_degree(smooth, 0));
    CHECK(has_degree(smooth, 1));
    CHECK_FALSE(has_degree(smooth, 2));

    FixedPointDatum restricted = smooth;
    restricted.smooth.hodge_p = 1;
    CHECK_FALSE(has_degree(restricted, 0));
    CHECK(has_degree(restricted, 1));
    CHECK(rf_eq(local_lefschetz(t, restricted, 0), RatFun::zero(t)));

    FixedPointDatum mod;
    mod.kind = FixedPointDatum::Kind::Module;
    mod.module_per_p[2].per_degree[0] = {{unit_monomial(t), {mono(t, "lambda")}}};
    CHECK(has_degree(mod, 2));
    CHECK_FALSE(has_degree(mod, 0));

    FixedPointDatum ci;
    ci.kind = FixedPointDatum::Kind::Bfq;
    ci.ci.ambient_weights = {mono(t, "lambda")};
    CHECK(has_degree(ci, 0));
    CHECK_FALSE(has_degree(ci, 1));
}

TEST_CASE("global sums") {
    auto t = VarTable::make({"lambda"});
    CHECK_THROWS_AS(global_sum({}), std::invalid_argument);
    CHECK(global_sum(t, {}).is_zero());
    RatFun north = parse(t, "1/(1-lambda)");
    RatFun south = parse(t, "1/(1-lambda^-1)");
    CHECK(rf_eq(global_sum({north, south}), RatFun::constant(t, 1)));
}

TEST_CASE("identity verification produces matching witnesses") {
    auto t = VarTable::make({"lambda"});
    RatFun lhs = rf_add(parse(t, "1/(1-lambda)"), parse(t, "1/(1-lambda^-1)"));
    RatFun rhs = RatFun::constant(t, 1);
    auto report = verify_identity(lhs, rhs, 7);
    CHECK(report.exact);
    REQUIRE(report.witnesses.size() == 5);
    for (const auto& w : report.witnesses) {
        CHECK(w.lhs == w.rhs);
        CHECK(w.point.count("lambda") == 1);
    }
    auto bad = verify_identity(lhs, RatFun::constant(t, 2), 7);
    CHECK_FALSE(bad.exact);
    for (const auto& w : bad.witnesses) CHECK(w.lhs != w.rhs);
}

TEST_CASE("random evaluation points are perfect squares") {
    auto t = VarTable::make({"lambda", "mu"});
    for (unsigned seed = 1; seed <= 5; ++seed) {
        auto pt = random_point(t, seed);
        REQUIRE(pt.size() == 4);  // lambda, mu, y, b
        RatFun half = parse(t, "(lambda*mu)^(1/2)");
        CHECK_NOTHROW(rf_eval(half, pt));  // exact square roots exist
        for (const auto& [name, v] : pt) CHECK(v > 0);
    }
}

TEST_CASE("module and smooth data agree on the teardrop south pole") {
    auto t = VarTable::make({"lambda"});
    // module presentation: one generator over char lambda^-1
    ModuleDatum m;
    m.per_degree[0] = {{unit_monomial(t), {mono(t, "lambda", -1)}}};
    SmoothWeights w;
    w.weights = {mono(t, "lambda", -1)};
    CHECK(rf_eq(module_lefschetz(t, m), woods_hole(t, w, 0)));
}
