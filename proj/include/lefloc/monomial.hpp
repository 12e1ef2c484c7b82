#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lefloc/vartable.hpp"

namespace lefloc {

// A character monomial.  Exponents are stored DOUBLED (exp2), so half-integer
// exponents of spin characters stay exact integers: lambda^(1/2) has exp2 = 1.
struct Monomial {
    std::vector<std::int64_t> exp2;

    auto operator<=>(const Monomial&) const = default;

    bool is_unital() const {
        for (auto e : exp2)
            if (e != 0) return false;
        return true;
    }

    // Sign of the first nonzero doubled exponent; 0 for the unit monomial.
    int lex_sign() const {
        for (auto e : exp2)
            if (e != 0) return e > 0 ? 1 : -1;
        return 0;
    }

    Monomial inverse() const {
        Monomial r = *this;
        for (auto& e : r.exp2) e = -e;
        return r;
    }

    Monomial mul(const Monomial& o) const {
        if (exp2.size() != o.exp2.size())
            throw std::invalid_argument("monomial size mismatch");
        Monomial r = *this;
        for (std::size_t i = 0; i < r.exp2.size(); ++i) r.exp2[i] += o.exp2[i];
        return r;
    }

    Monomial pow(std::int64_t k) const {
        Monomial r = *this;
        for (auto& e : r.exp2) e *= k;
        return r;
    }

    // Total doubled degree over the torus variables only (y and b excluded):
    // the grading used by expansion truncation.
    std::int64_t torus_degree2(std::size_t torus_count) const {
        std::int64_t d = 0;
        for (std::size_t i = 0; i < torus_count && i < exp2.size(); ++i) d += exp2[i];
        return d;
    }
};

inline Monomial unit_monomial(const VarTablePtr& t) {
    return Monomial{std::vector<std::int64_t>(t->size(), 0)};
}

// exp_num/exp_den in lowest terms with exp_den in {1, 2}.
inline Monomial var_monomial(const VarTablePtr& t, const std::string& name,
                             std::int64_t exp_num = 1, std::int64_t exp_den = 1) {
    if (exp_den != 1 && exp_den != 2)
        throw std::invalid_argument("exponent denominator must be 1 or 2");
    Monomial m = unit_monomial(t);
    m.exp2[t->index(name)] = exp_den == 1 ? 2 * exp_num : exp_num;
    return m;
}

}  // namespace lefloc
