#pragma once

#include <string>
#include <vector>

#include "lefloc/ratfun.hpp"

namespace lefloc {

// Betti numbers beta_0..beta_l of the link of a conical stratum.
struct LinkData {
    int dim_l = 0;
    std::vector<std::int64_t> betti;
};

// Betti vector length and non-negativity; throws on violation.
void validate_link(const LinkData& link);
// Poincare duality beta_k == beta_{l-k}; a false return is worth a warning
// (the reflection convention in the dual polynomial assumes it).
bool link_witt_symmetric(const LinkData& link);

// One factor of a critical point's product neighborhood: either a smooth
// disc of the given real dimension or a cone over a link.
struct FactorDatum {
    enum class Type { disc, cone };
    Type type = Type::disc;
    int real_dim = 0;  // disc only
    LinkData link;     // cone only

    static FactorDatum smooth_disc(int real_dim) {
        FactorDatum f;
        f.real_dim = real_dim;
        return f;
    }
    static FactorDatum cone(LinkData link) {
        FactorDatum f;
        f.type = Type::cone;
        f.link = std::move(link);
        return f;
    }
    bool is_trivial_disc() const { return type == Type::disc && real_dim == 0; }
};

struct CriticalPointDatum {
    std::string name;
    FactorDatum attracting;
    FactorDatum expanding;
};

// Morse/Poincare polynomials share the exact b-polynomial representation.
using BPoly = BSeries;

// Coefficients are non-negative integers (Morse/Poincare polynomials).
void validate_bpoly(const BPoly& p);

// sum_{k <= floor((l-1)/2)} beta_k b^k : the low half of the link cohomology
// survives on the cone.
BPoly cone_local_poincare(const LinkData& link);
// The same range reflected to degree l+1-k: the dual complex's contribution.
BPoly cone_dual_poincare(const LinkData& link);

// attracting polynomial x expanding dual polynomial.
BPoly local_morse_poly(const CriticalPointDatum& cp);

BPoly global_morse(const std::vector<CriticalPointDatum>& points);

struct MorseInequalityReport {
    BSeries Q;         // (M - N) / (1 + b)
    bool divisible = false;
    bool nonneg = false;
    bool euler_match = false;
    bool ok() const { return divisible && nonneg && euler_match; }
};

MorseInequalityReport morse_inequality_check(const BPoly& M, const BPoly& N);

// No two consecutive degrees with nonzero coefficients: the inequalities
// then force M == N.
bool lacunary_check(const BPoly& M);

}  // namespace lefloc
