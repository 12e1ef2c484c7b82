#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Simple (non-degenerate) smooth fixed point: characters of the differential
// on the holomorphic tangent directions, an optional bundle character trace,
// and the form degree p ("all" = the whole per-p family, the usual case).
struct SmoothWeights {
    std::vector<Monomial> weights;   // all non-unital
    LaurentPoly bundle_trace;        // defaults to 1
    std::optional<int> hodge_p;      // nullopt = "all"
};

// One free summand of a local cohomology module: generator / prod(1 - chars).
struct FreeModuleSummand {
    Monomial generator;
    std::vector<Monomial> ring_chars;  // non-unital
};

// Local cohomology presented degree-by-degree as free monomial summands.
struct ModuleDatum {
    std::map<int, std::vector<FreeModuleSummand>> per_degree;  // q >= 0
};

// Local complete-intersection data: ambient coordinate characters a_i and one
// defining-equation character b_j per equation.
struct CompleteIntersectionDatum {
    std::vector<Monomial> ambient_weights;
    std::vector<Monomial> defining_weights;
    LaurentPoly bundle_trace;  // defaults to 1
};

enum class Side { attracting, expanding };

struct FixedPointDatum {
    enum class Kind { Smooth, Module, Bfq };

    std::string name;
    Kind kind = Kind::Smooth;
    Side side = Side::attracting;

    // kind == smooth
    SmoothWeights smooth;
    // kind == module: per Hodge degree p
    std::map<int, ModuleDatum> module_per_p;
    // kind == bfq (degree p = 0 only)
    CompleteIntersectionDatum ci;

    // Optional product decomposition: two factor data with their own sides;
    // factor 2 carries the already-dualized expanding data, and dual_top_dim
    // is the top degree m of the dual factor's complex.
    struct Split;
    std::shared_ptr<Split> split;

    std::optional<Monomial> spin_half_char;
    std::optional<std::string> variant;  // scenario variant tag, empty = all
};

struct FixedPointDatum::Split {
    FixedPointDatum factor1;
    FixedPointDatum factor2;
    int dual_top_dim = 0;
};

// Woods Hole local number: bundle_trace * e_p(weights) / prod(1 - w_i).
RatFun woods_hole(const VarTablePtr& t, const SmoothWeights& w, std::size_t p);

// Alternating-sign trace over the module degrees.
RatFun module_lefschetz(const VarTablePtr& t, const ModuleDatum& m);

// Graded variant: b^q instead of (-1)^q; b = -1 recovers module_lefschetz.
RatFun module_poly_lefschetz(const VarTablePtr& t, const ModuleDatum& m);

// Baum-Fulton-Quart number: trace * prod(1 - b_j) / prod(1 - a_i).
RatFun bfq_local(const VarTablePtr& t, const CompleteIntersectionDatum& c);

// (-1)^n_parity * subst(local, inversion): the dual-complex local number.
RatFun dualize(const RatFun& local, int n_parity, const SubstMap& inversion);

// l1 * (-1)^m * l2 with l2 the already-dualized expanding-factor number.
RatFun product_local(const RatFun& l1, const RatFun& l2, int m);

RatFun global_sum(const std::vector<RatFun>& locals);
// Empty-tolerant overload: an empty list sums to zero over t.
RatFun global_sum(const VarTablePtr& t, const std::vector<RatFun>& locals);

// Local value of a fixed point at Hodge degree p (whatever its kind).
RatFun local_lefschetz(const VarTablePtr& t, const FixedPointDatum& fp, int p);
// True if the datum carries data for degree p.
bool has_degree(const FixedPointDatum& fp, int p);

struct EvalWitness {
    std::map<std::string, Rat> point;
    Rat lhs;
    Rat rhs;
};

struct VerificationReport {
    bool exact = false;                 // rf_eq verdict
    std::vector<EvalWitness> witnesses; // 5 randomized evaluations
};

VerificationReport verify_identity(const RatFun& lhs, const RatFun& rhs,
                                   unsigned seed = 0);

// Random evaluation point for a table: positive rationals, squared so that
// half exponents always evaluate (perfect squares); y and b included.
std::map<std::string, Rat> random_point(const VarTablePtr& t, unsigned seed);

}  // namespace lefloc
