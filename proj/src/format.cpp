#include "lefloc/format.hpp"

#include <sstream>

namespace lefloc {

namespace {

void append_exponent(std::ostream& os, std::int64_t e2) {
    if (e2 == 2) return;                       // ^1 omitted
    if (e2 % 2 == 0) os << "^" << e2 / 2;      // integer exponent
    else os << "^(" << e2 << "/2)";            // half-integer, kept exact
}

}  // namespace

std::string to_string(const VarTablePtr& t, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.exp2.size(); ++i) {
        if (m.exp2[i] == 0) continue;
        if (!first) os << "*";
        os << t->names()[i];
        append_exponent(os, m.exp2[i]);
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (m.is_unital()) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << to_string(p.table(), m);
        }
        first = false;
    }
    return os.str();
}

std::string to_string(const RatFun& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    if (f.sign < 0) os << "-";
    bool have_unit = !f.unit.is_unital();
    bool num_is_one = f.num.is_constant() && f.num.constant_value() == 1;
    if (have_unit) {
        os << to_string(f.table, f.unit);
        if (!num_is_one) os << " * ";
    }
    if (!num_is_one || !have_unit) {
        bool paren = f.num.terms().size() > 1 && (have_unit || !f.den.empty());
        if (paren) os << "(";
        os << to_string(f.num);
        if (paren) os << ")";
    }
    if (!f.den.empty()) {
        os << " / ";
        if (f.den.size() > 1) os << "[";
        for (std::size_t i = 0; i < f.den.size(); ++i) {
            if (i) os << " ";
            os << "(1 - " << to_string(f.table, f.den[i].m) << ")";
        }
        if (f.den.size() > 1) os << "]";
    }
    return os.str();
}

std::string to_string(const BSeries& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (k == 0) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << "b";
            if (k != 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

std::string display(const RatFun& f) {
    if (auto p = rf_try_polynomial(f)) return to_string(*p);
    return to_string(f);
}

}  // namespace lefloc
