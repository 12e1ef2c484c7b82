#pragma once

#include <string>
#include <vector>

#include "lefloc/invariants.hpp"
#include "lefloc/scenario.hpp"

namespace lefloc {

// One checked "LHS == RHS" line.
struct ExpectationOutcome {
    std::string text;      // the expectation as written
    bool pass = false;
    std::string actual;    // printed left-side value (or the error message)
    std::string expected;  // printed right-side value
};

struct ScenarioReport {
    std::string name;
    std::vector<std::string> warnings;
    std::vector<ExpectationOutcome> outcomes;
    bool ok = true;  // every outcome passed
};

// Evaluate every expectation of the scenario.  Evaluation errors (unknown
// point, malformed key, non-computable value) mark the outcome failed with
// the message in `actual`; only scenario-independent bugs throw.
ScenarioReport run_expectations(const Scenario& s);

// --- building blocks shared by the runner and the CLI ---

const FixedPointDatum& find_fixed_point(const Scenario& s, const std::string& name);

// A point participates in a variant if it is untagged or tagged with it;
// the empty variant selects every point.
bool variant_includes(const FixedPointDatum& fp, const std::string& variant);
// All distinct variant tags, in first-appearance order (may be empty).
std::vector<std::string> scenario_variants(const Scenario& s);

// Declared complex dimension, or the largest degree any point carries.
int scenario_dim(const Scenario& s);

RatFun scenario_local(const Scenario& s, const FixedPointDatum& fp, int p);
RatFun scenario_global(const Scenario& s, int p, const std::string& variant = "");
ChiY scenario_chi_y_point(const Scenario& s, const FixedPointDatum& fp);
ChiY scenario_chi_y_global(const Scenario& s, const std::string& variant = "");
RatFun scenario_spin_local(const Scenario& s, const FixedPointDatum& fp);
// Sum of the spin-twisted locals; every fixed point must carry a half
// character.
RatFun scenario_spin_sum(const Scenario& s);
BPoly scenario_morse(const Scenario& s);
LaurentPoly scenario_expand(const Scenario& s, const FixedPointDatum& fp, int p,
                            Region region, long order);

// chi_{-1} evaluated at a random torus point equals the Morse polynomial
// at b = -1 (both sides exact rationals).
bool euler_vs_lefschetz(const Scenario& s);

}  // namespace lefloc
