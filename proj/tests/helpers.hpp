#pragma once

// Shared test utilities: random generators and reusable property suites.

#include <random>
#include <string>
#include <vector>

#include "lefloc/complexlab.hpp"
#include "lefloc/format.hpp"
#include "lefloc/localization.hpp"
#include "lefloc/ratfun.hpp"

namespace testutil {

// ------------------------------------------------------------ complexes

struct RandomComplex {
    lefloc::FiniteComplex c;
    lefloc::ComplexEndomorphism t;
    std::vector<int> cohomology;         // expected cohomology dimensions
    lefloc::BSeries expected_lefschetz;  // expected graded trace
};

// A random valid (complex, endomorphism) pair of known cohomology, built in a
// split basis (boundaries | harmonic | transfers) and conjugated degreewise
// by random unimodular matrices.  Total dimension <= degrees * (2*max_rank +
// max_harm).
RandomComplex random_complex(std::mt19937& rng, int max_degrees = 4, int max_rank = 2,
                             int max_harm = 2);

// ------------------------------------------------------------ rational funs

// Random exact rational function over {lambda, mu}: small Laurent numerator,
// up to two denominator factors.
lefloc::RatFun random_ratfun(const lefloc::VarTablePtr& t, std::mt19937& rng);

// ------------------------------------------------------------ property suites

struct PropertyStats {
    int instances = 0;
    int failures = 0;
    std::string first_failure;

    void count(bool ok, const std::string& what) {
        instances += 1;
        if (!ok) {
            failures += 1;
            if (first_failure.empty()) first_failure = what;
        }
    }
};

PropertyStats prop_ring_axioms(unsigned seed, int instances);
PropertyStats prop_canonical_idempotent(unsigned seed, int instances);
PropertyStats prop_subst_homomorphism(unsigned seed, int instances);
PropertyStats prop_eq_vs_eval(unsigned seed, int instances);

// ------------------------------------------------------------ paths

inline std::string corpus_path(const std::string& file) {
#ifdef LEFLOC_CORPUS_DIR
    return std::string(LEFLOC_CORPUS_DIR) + "/" + file;
#else
    return "corpus/" + file;
#endif
}

}  // namespace testutil
