#include "lefloc/expr.hpp"

#include <cctype>
#include <memory>
#include <stdexcept>
#include <utility>

#include "lefloc/format.hpp"

namespace lefloc {

namespace {

struct Node {
    enum class K { Num, Var, Add, Sub, Mul, Div, Neg, Pow };
    K k = K::Num;
    Rat value;                  // Num
    std::string name;           // Var
    std::unique_ptr<Node> a, b; // operands (Pow uses a only)
    std::int64_t en = 1;        // Pow exponent numerator
    std::int64_t ed = 1;        // Pow exponent denominator, 1 or 2
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::K k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_unique<Node>();
    n->k = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

[[noreturn]] void fail(const std::string& text, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("expression error at position " + std::to_string(pos) +
                                ": " + what + " in '" + text + "'");
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (i_ != s_.size()) fail(s_, i_, "unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++i_;
                lhs = make(Node::K::Add, std::move(lhs), term());
            } else if (c == '-') {
                ++i_;
                lhs = make(Node::K::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    // '*' and '/' bind tighter than +/-; juxtaposition counts as '*'.
    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++i_;
                lhs = make(Node::K::Mul, std::move(lhs), unary());
            } else if (c == '/') {
                ++i_;
                lhs = make(Node::K::Div, std::move(lhs), unary());
            } else if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                       std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                lhs = make(Node::K::Mul, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        char c = peek();
        if (c == '-') {
            ++i_;
            return make(Node::K::Neg, unary());
        }
        if (c == '+') {
            ++i_;
            return unary();
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (peek() != '^') return base;
        ++i_;
        auto n = make(Node::K::Pow, std::move(base));
        parse_exponent(*n);
        return n;
    }

    void parse_exponent(Node& n) {
        bool paren = eat('(');
        bool negative = eat('-');
        n.en = integer("exponent");
        n.ed = 1;
        if (paren && eat('/')) {
            n.ed = integer("exponent denominator");
            if (n.ed != 1 && n.ed != 2) fail(s_, i_, "exponent denominator must be 1 or 2");
        }
        if (negative) n.en = -n.en;
        if (paren && !eat(')')) fail(s_, i_, "expected ')' closing exponent");
    }

    std::int64_t integer(const char* what) {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail(s_, start, std::string("expected ") + what);
        if (i_ - start > 9) fail(s_, start, std::string(what) + " out of range");
        return std::stoll(s_.substr(start, i_ - start));
    }

    NodePtr atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            auto n = make(Node::K::Num);
            n->value = Rat(s_.substr(start, i_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            auto n = make(Node::K::Var);
            n->name = s_.substr(start, i_ - start);
            return n;
        }
        if (c == '(') {
            ++i_;
            NodePtr e = expr();
            if (!eat(')')) fail(s_, i_, "expected ')'");
            return e;
        }
        fail(s_, i_, "expected a number, variable, or '('");
    }
};

RatFun eval(const VarTablePtr& t, const Node& n);
RatFun divide(RatFun f, const Node& d, const VarTablePtr& t);

// The divisor flattened to sign * unit * num as one Laurent polynomial.
LaurentPoly flat_value(const RatFun& g) {
    LaurentPoly out(g.table);
    for (const auto& [m, c] : g.num.terms())
        out.add_term(m.mul(g.unit), g.sign < 0 ? Rat(-c) : c);
    return out;
}

// Exact division by an evaluated value: the value must be a monomial or a
// two-term binomial c*m1*(1 - m2/m1); its own denominator factors multiply
// back into the numerator.
RatFun divide_primitive(RatFun f, const RatFun& g) {
    if (g.is_zero()) throw std::domain_error("division by zero");
    for (const auto& d : g.den) {
        LaurentPoly factor = LaurentPoly::constant(g.table, 1);
        factor.add_term(d.m, Rat(-1));
        f = rf_mul(f, RatFun::from_poly(g.table, factor));
    }
    LaurentPoly flat = flat_value(g);
    const auto& terms = flat.terms();
    if (terms.size() == 1) {
        const auto& [m, c] = *terms.begin();
        return rf_mul(f, rf_scale(RatFun::monomial(g.table, m.inverse()), Rat(1) / c));
    }
    if (terms.size() == 2) {
        auto it = terms.begin();
        const auto& [m1, c1] = *it;
        ++it;
        const auto& [m2, c2] = *it;
        if (c2 == -c1) {
            // c1*m1 + c2*m2 = c1 * m1 * (1 - m2/m1), and m2/m1 is already
            // canonically oriented because m1 < m2 in monomial order.
            RatFun inv = RatFun::quotient(
                g.table, LaurentPoly::monomial(g.table, m1.inverse(), Rat(1) / c1),
                {m2.mul(m1.inverse())});
            return rf_mul(f, inv);
        }
    }
    throw std::domain_error("cannot divide by '" + to_string(g) +
                            "': not a monomial or a product of (1 - monomial) factors");
}

RatFun divide(RatFun f, const Node& d, const VarTablePtr& t) {
    switch (d.k) {
        case Node::K::Mul:
            return divide(divide(std::move(f), *d.a, t), *d.b, t);
        case Node::K::Div:  // f / (x / y) = (f * y) / x
            return divide(rf_mul(f, eval(t, *d.b)), *d.a, t);
        case Node::K::Neg:
            return rf_neg(divide(std::move(f), *d.a, t));
        case Node::K::Pow:
            if (d.ed == 1 && d.a->k != Node::K::Var) {
                if (d.en >= 0) {
                    for (std::int64_t i = 0; i < d.en; ++i) f = divide(std::move(f), *d.a, t);
                    return f;
                }
                RatFun base = eval(t, *d.a);
                for (std::int64_t i = 0; i < -d.en; ++i) f = rf_mul(f, base);
                return f;
            }
            return divide_primitive(std::move(f), eval(t, d));
        default:
            return divide_primitive(std::move(f), eval(t, d));
    }
}

RatFun eval(const VarTablePtr& t, const Node& n) {
    switch (n.k) {
        case Node::K::Num:
            return RatFun::constant(t, n.value);
        case Node::K::Var:
            return RatFun::monomial(t, var_monomial(t, n.name));
        case Node::K::Add:
            return rf_add(eval(t, *n.a), eval(t, *n.b));
        case Node::K::Sub:
            return rf_add(eval(t, *n.a), rf_neg(eval(t, *n.b)));
        case Node::K::Mul:
            return rf_mul(eval(t, *n.a), eval(t, *n.b));
        case Node::K::Neg:
            return rf_neg(eval(t, *n.a));
        case Node::K::Div:
            return divide(eval(t, *n.a), *n.b, t);
        case Node::K::Pow: {
            if (n.a->k == Node::K::Var)
                return RatFun::monomial(t, var_monomial(t, n.a->name, n.en, n.ed));
            if (n.ed == 1) {
                if (std::abs(n.en) > 256) throw std::domain_error("exponent too large");
                RatFun acc = RatFun::constant(t, 1);
                if (n.en >= 0) {
                    RatFun base = eval(t, *n.a);
                    for (std::int64_t i = 0; i < n.en; ++i) acc = rf_mul(acc, base);
                } else {
                    for (std::int64_t i = 0; i < -n.en; ++i)
                        acc = divide(std::move(acc), *n.a, t);
                }
                return acc;
            }
            // Half exponent on a compound base: the base must evaluate to a
            // single scaled monomial whose square root is exact.
            RatFun v = eval(t, *n.a);
            LaurentPoly flat = flat_value(v);
            if (!v.den.empty() || flat.terms().size() != 1)
                throw std::domain_error("half exponent requires a monomial base");
            const auto& [m, c] = *flat.terms().begin();
            Monomial h = m;
            for (auto& e : h.exp2) {
                if ((e * n.en) % 2 != 0)
                    throw std::domain_error("half exponent produces a quarter power");
                e = e * n.en / 2;
            }
            auto root = rat_sqrt(c);
            if (!root || *root == 0)
                throw std::domain_error("half exponent requires a perfect-square coefficient");
            return rf_scale(RatFun::monomial(t, h), rat_pow(*root, n.en));
        }
    }
    throw std::logic_error("unreachable expression node");
}

}  // namespace

RatFun parse_ratfun(const VarTablePtr& t, const std::string& text) {
    Parser p(text);
    NodePtr root = p.parse();
    return eval(t, *root);
}

LaurentPoly to_laurent(const RatFun& f) {
    if (!f.den.empty())
        throw std::domain_error("value is not a Laurent polynomial: " + to_string(f));
    LaurentPoly out(f.table);
    for (const auto& [m, c] : f.num.terms())
        out.add_term(m.mul(f.unit), f.sign < 0 ? Rat(-c) : c);
    return out;
}

BSeries to_bseries(const RatFun& f) {
    LaurentPoly p = to_laurent(f);
    const std::size_t bi = f.table->b_index();
    BSeries out;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.exp2.size(); ++i)
            if (i != bi && m.exp2[i] != 0)
                throw std::domain_error("value is not a polynomial in b: " + to_string(f));
        if (m.exp2[bi] % 2 != 0)
            throw std::domain_error("half power of b: " + to_string(f));
        out[m.exp2[bi] / 2] = c;
    }
    return out;
}

}  // namespace lefloc
