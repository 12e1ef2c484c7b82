#include "lefloc/morse.hpp"

#include <stdexcept>

namespace lefloc {

void validate_link(const LinkData& link) {
    if (link.dim_l < 0) throw std::invalid_argument("negative link dimension");
    if (link.betti.size() != static_cast<std::size_t>(link.dim_l) + 1)
        throw std::invalid_argument("betti vector must list degrees 0..l");
    for (auto b : link.betti)
        if (b < 0) throw std::invalid_argument("negative Betti number");
}

bool link_witt_symmetric(const LinkData& link) {
    for (std::size_t k = 0; k < link.betti.size(); ++k)
        if (link.betti[k] != link.betti[link.betti.size() - 1 - k]) return false;
    return true;
}

void validate_bpoly(const BPoly& p) {
    for (const auto& [k, c] : p) {
        if (k < 0) throw std::invalid_argument("negative degree in a Morse polynomial");
        if (c < 0 || denominator(c) != 1)
            throw std::invalid_argument("Morse polynomial coefficients must be non-negative integers");
    }
}

BPoly cone_local_poincare(const LinkData& link) {
    validate_link(link);
    BPoly p;
    // low-degree half: k from 0 through floor((l-1)/2)
    for (int k = 0; 2 * k <= link.dim_l - 1; ++k)
        if (link.betti[k] != 0) p[k] = Rat(link.betti[k]);
    return p;
}

BPoly cone_dual_poincare(const LinkData& link) {
    validate_link(link);
    BPoly p;
    for (int k = 0; 2 * k <= link.dim_l - 1; ++k)
        if (link.betti[k] != 0) p[link.dim_l + 1 - k] = Rat(link.betti[k]);
    return p;
}

namespace {

BPoly attracting_poly(const FactorDatum& f) {
    if (f.type == FactorDatum::Type::disc) return BPoly{{0, Rat(1)}};
    return cone_local_poincare(f.link);
}

BPoly expanding_dual_poly(const FactorDatum& f) {
    if (f.type == FactorDatum::Type::disc) return BPoly{{f.real_dim, Rat(1)}};
    return cone_dual_poincare(f.link);
}

}  // namespace

BPoly local_morse_poly(const CriticalPointDatum& cp) {
    if (cp.attracting.is_trivial_disc() && cp.expanding.is_trivial_disc())
        throw std::invalid_argument(
            "critical point '" + cp.name + "': both factors are trivial discs");
    if (cp.attracting.type == FactorDatum::Type::disc && cp.attracting.real_dim < 0)
        throw std::invalid_argument("negative disc dimension");
    if (cp.expanding.type == FactorDatum::Type::disc && cp.expanding.real_dim < 0)
        throw std::invalid_argument("negative disc dimension");
    return bseries_mul(attracting_poly(cp.attracting), expanding_dual_poly(cp.expanding));
}

BPoly global_morse(const std::vector<CriticalPointDatum>& points) {
    BPoly acc;
    for (const auto& cp : points) acc = bseries_add(acc, local_morse_poly(cp));
    return acc;
}

MorseInequalityReport morse_inequality_check(const BPoly& M, const BPoly& N) {
    MorseInequalityReport rep;
    BPoly diff = bseries_sub(M, N);
    LinearDivision div = poly_divide_linear(diff);
    rep.Q = std::move(div.quotient);
    rep.divisible = div.remainder == 0;
    rep.nonneg = true;
    for (const auto& [k, c] : rep.Q)
        if (c < 0) rep.nonneg = false;
    rep.euler_match = bseries_eval(M, Rat(-1)) == bseries_eval(N, Rat(-1));
    return rep;
}

bool lacunary_check(const BPoly& M) {
    for (const auto& [k, c] : M)
        if (c != 0 && M.count(k + 1) && M.at(k + 1) != 0) return false;
    return true;
}

}  // namespace lefloc
