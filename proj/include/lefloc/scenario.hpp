#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefloc/complexlab.hpp"
#include "lefloc/localization.hpp"
#include "lefloc/morse.hpp"

namespace lefloc {

// Malformed scenario input (JSON syntax, missing field, bad value); the
// message names the offending field path.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optional finite-complex section: a graded complex with an endomorphism.
struct ComplexSection {
    FiniteComplex complex;
    ComplexEndomorphism endo;
};

// One declarative scenario: fixed-point data, Morse data, an optional finite
// complex, and the list of "LHS == RHS" expectations to check against them.
struct Scenario {
    std::string name;
    VarTablePtr table;
    std::vector<FixedPointDatum> fixed_points;
    std::vector<CriticalPointDatum> critical_points;
    std::optional<BPoly> poincare;     // global Poincare polynomial, if declared
    std::optional<int> complex_dim;    // complex dimension n, if declared
    std::optional<ComplexSection> complexlab;
    std::vector<std::string> expectations;
    std::vector<std::string> warnings;  // non-fatal data oddities
};

// Parse scenario JSON text; `origin` names the source in error messages.
Scenario parse_scenario(const std::string& json_text, const std::string& origin);

// Read and parse a scenario file.
Scenario load_scenario(const std::string& path);

}  // namespace lefloc
