#pragma once

#include <map>
#include <string>

#include "lefloc/monomial.hpp"
#include "lefloc/rational.hpp"
#include "lefloc/vartable.hpp"

namespace lefloc {

// Finite Laurent polynomial: map monomial -> nonzero rational coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(VarTablePtr table) : table_(std::move(table)) {}

    static LaurentPoly constant(const VarTablePtr& t, const Rat& c) {
        LaurentPoly p(t);
        if (c != 0) p.terms_[unit_monomial(t)] = c;
        return p;
    }
    static LaurentPoly monomial(const VarTablePtr& t, const Monomial& m,
                                const Rat& c = Rat(1)) {
        LaurentPoly p(t);
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const VarTablePtr& table() const { return table_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unital());
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw std::domain_error("polynomial is not constant");
        return terms_.begin()->second;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

private:
    VarTablePtr table_;
    std::map<Monomial, Rat> terms_;
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_neg(const LaurentPoly& a);
LaurentPoly lp_scale(const LaurentPoly& a, const Rat& c);
// Multiply every term by a fixed monomial (exponent shift).
LaurentPoly lp_shift(const LaurentPoly& a, const Monomial& m);

}  // namespace lefloc
