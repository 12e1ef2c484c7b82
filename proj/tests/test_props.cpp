#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

namespace {

void require_clean(const testutil::PropertyStats& stats) {
    INFO("first failure: " << stats.first_failure);
    CHECK(stats.instances == 200);
    CHECK(stats.failures == 0);
}

}  // namespace

TEST_CASE("ring axioms hold on random values") {
    require_clean(testutil::prop_ring_axioms(101, 200));
}

TEST_CASE("canonicalization is idempotent") {
    require_clean(testutil::prop_canonical_idempotent(202, 200));
}

TEST_CASE("substitution is a ring homomorphism") {
    require_clean(testutil::prop_subst_homomorphism(303, 200));
}

TEST_CASE("structural equality agrees with numeric evaluation") {
    require_clean(testutil::prop_eq_vs_eval(404, 200));
}
