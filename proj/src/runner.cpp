#include "lefloc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lefloc/expr.hpp"
#include "lefloc/format.hpp"

namespace lefloc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

struct ExpectationKey {
    std::string name;
    std::vector<std::string> args;
    std::string rhs;
};

ExpectationKey split_expectation(const std::string& text) {
    std::size_t eq = text.find("==");
    if (eq == std::string::npos)
        throw std::invalid_argument("expectation must have the form 'LHS == RHS'");
    ExpectationKey key;
    key.rhs = trim(text.substr(eq + 2));
    std::string lhs = trim(text.substr(0, eq));
    std::size_t open = lhs.find('[');
    if (open == std::string::npos) {
        key.name = lhs;
    } else {
        if (lhs.empty() || lhs.back() != ']')
            throw std::invalid_argument("unbalanced '[' in expectation left side");
        key.name = trim(lhs.substr(0, open));
        std::string inner = lhs.substr(open + 1, lhs.size() - open - 2);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = inner.find(',', start);
            std::string piece =
                trim(comma == std::string::npos ? inner.substr(start)
                                                : inner.substr(start, comma - start));
            if (piece.empty()) throw std::invalid_argument("empty selector argument");
            key.args.push_back(piece);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (key.name.empty()) throw std::invalid_argument("empty expectation name");
    return key;
}

int parse_int_arg(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
    }
}

// Degree suffix of "global_p<K>" / "local_p<K>".
int degree_suffix(const std::string& name, const std::string& prefix) {
    return parse_int_arg(name.substr(prefix.size()), "degree suffix");
}

void need_args(const ExpectationKey& k, std::size_t lo, std::size_t hi) {
    if (k.args.size() < lo || k.args.size() > hi)
        throw std::invalid_argument("wrong number of selector arguments for '" + k.name + "'");
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

bool parse_bool_rhs(const std::string& rhs) {
    if (rhs == "true") return true;
    if (rhs == "false") return false;
    throw std::invalid_argument("expected 'true' or 'false', got '" + rhs + "'");
}

std::vector<int> parse_int_list(const std::string& rhs) {
    std::string s = trim(rhs);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("expected a list '[a, b, ...]'");
    std::vector<int> out;
    std::string inner = s.substr(1, s.size() - 2);
    if (trim(inner).empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = inner.find(',', start);
        out.push_back(parse_int_arg(
            trim(comma == std::string::npos ? inner.substr(start)
                                            : inner.substr(start, comma - start)),
            "list entry"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string int_list_str(const std::vector<int>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

const ComplexSection& need_complex(const Scenario& s) {
    if (!s.complexlab) throw std::invalid_argument("scenario has no complexlab section");
    return *s.complexlab;
}

BPoly need_poincare(const Scenario& s) {
    if (!s.poincare) throw std::invalid_argument("scenario declares no poincare polynomial");
    return *s.poincare;
}

Region parse_region(const std::string& s) {
    if (s == "inside") return Region::inside;
    if (s == "outside") return Region::outside;
    throw std::invalid_argument("region must be 'inside' or 'outside', got '" + s + "'");
}

// The variant argument "" is spelled explicitly in keys as "*"; absent = all.
std::string variant_arg(const ExpectationKey& k, std::size_t pos) {
    return k.args.size() > pos ? k.args[pos] : "";
}

ExpectationOutcome check_ratfun(const std::string& text, const Scenario& s,
                                const RatFun& actual, const std::string& rhs) {
    RatFun expected = parse_ratfun(s.table, rhs);
    ExpectationOutcome o;
    o.text = text;
    o.actual = display(actual);
    o.expected = display(expected);
    o.pass = rf_eq(actual, expected);
    return o;
}

ExpectationOutcome check_bool(const std::string& text, bool actual, const std::string& rhs) {
    ExpectationOutcome o;
    o.text = text;
    o.actual = bool_str(actual);
    o.expected = bool_str(parse_bool_rhs(rhs));
    o.pass = actual == parse_bool_rhs(rhs);
    return o;
}

ExpectationOutcome check_bpoly(const std::string& text, const Scenario& s,
                               const BPoly& actual, const std::string& rhs) {
    BPoly expected = to_bseries(parse_ratfun(s.table, rhs));
    ExpectationOutcome o;
    o.text = text;
    o.actual = to_string(actual);
    o.expected = to_string(expected);
    o.pass = actual == expected;
    return o;
}

ExpectationOutcome check_laurent(const std::string& text, const Scenario& s,
                                 const LaurentPoly& actual, const std::string& rhs) {
    LaurentPoly expected = to_laurent(parse_ratfun(s.table, rhs));
    ExpectationOutcome o;
    o.text = text;
    o.actual = to_string(actual);
    o.expected = to_string(expected);
    o.pass = actual == expected;
    return o;
}

ExpectationOutcome evaluate_expectation(const Scenario& s, const std::string& text) {
    ExpectationKey k = split_expectation(text);
    const std::string& name = k.name;

    if (name.rfind("global_p", 0) == 0 && name.size() > 8) {
        need_args(k, 0, 1);
        int p = degree_suffix(name, "global_p");
        return check_ratfun(text, s, scenario_global(s, p, variant_arg(k, 0)), k.rhs);
    }
    if (name.rfind("local_p", 0) == 0 && name.size() > 7) {
        need_args(k, 1, 1);
        int p = degree_suffix(name, "local_p");
        const FixedPointDatum& fp = find_fixed_point(s, k.args[0]);
        return check_ratfun(text, s, scenario_local(s, fp, p), k.rhs);
    }
    if (name == "chi_y_duality") {
        need_args(k, 0, 1);
        SubstMap inv = torus_inversion(s.table);
        bool v = k.args.empty()
                     ? chi_y_duality_check(scenario_chi_y_global(s), inv)
                     : chi_y_duality_check(
                           scenario_chi_y_point(s, find_fixed_point(s, k.args[0])), inv);
        return check_bool(text, v, k.rhs);
    }
    if (name == "signature" || name == "riemann_roch" || name == "euler") {
        need_args(k, 0, 1);
        ChiY c = scenario_chi_y_global(s, variant_arg(k, 0));
        Rat y0 = name == "signature" ? Rat(1) : name == "euler" ? Rat(-1) : Rat(0);
        return check_ratfun(text, s, specialize(c, y0), k.rhs);
    }
    if (name == "sd" || name == "asd") {
        need_args(k, 0, 1);
        auto [sd, asd] = sd_asd_indices(scenario_chi_y_global(s, variant_arg(k, 0)));
        return check_ratfun(text, s, name == "sd" ? sd : asd, k.rhs);
    }
    if (name == "sd_asd_duality") {
        need_args(k, 1, 2);
        ChiY c = k.args.size() == 2
                     ? scenario_chi_y_point(s, find_fixed_point(s, k.args[0]))
                     : scenario_chi_y_global(s);
        return check_bool(text, sd_asd_duality_check(c, k.args.back()), k.rhs);
    }
    if (name == "spin_sum") {
        need_args(k, 0, 0);
        return check_ratfun(text, s, scenario_spin_sum(s), k.rhs);
    }
    if (name == "spin_local") {
        need_args(k, 1, 1);
        return check_ratfun(
            text, s, scenario_spin_local(s, find_fixed_point(s, k.args[0])), k.rhs);
    }
    if (name == "spin_self_dual") {
        need_args(k, 1, 1);
        RatFun v = scenario_spin_local(s, find_fixed_point(s, k.args[0]));
        RatFun dual = dualize(v, scenario_dim(s), torus_inversion(s.table));
        return check_bool(text, rf_eq(v, dual), k.rhs);
    }
    if (name == "morse") {
        need_args(k, 0, 0);
        return check_bpoly(text, s, scenario_morse(s), k.rhs);
    }
    if (name == "local_morse") {
        need_args(k, 1, 1);
        for (const auto& cp : s.critical_points)
            if (cp.name == k.args[0]) return check_bpoly(text, s, local_morse_poly(cp), k.rhs);
        throw std::invalid_argument("unknown critical point '" + k.args[0] + "'");
    }
    if (name == "morse_inequalities") {
        need_args(k, 0, 0);
        auto report = morse_inequality_check(scenario_morse(s), need_poincare(s));
        return check_bool(text, report.ok(), k.rhs);
    }
    if (name == "lacunary") {
        need_args(k, 0, 0);
        return check_bool(text, lacunary_check(scenario_morse(s)), k.rhs);
    }
    if (name == "euler_vs_lefschetz") {
        need_args(k, 0, 0);
        return check_bool(text, euler_vs_lefschetz(s), k.rhs);
    }
    if (name == "expand") {
        need_args(k, 4, 4);
        const FixedPointDatum& fp = find_fixed_point(s, k.args[0]);
        int p = parse_int_arg(k.args[1], "degree");
        Region region = parse_region(k.args[2]);
        long order = parse_int_arg(k.args[3], "order");
        return check_laurent(text, s, scenario_expand(s, fp, p, region, order), k.rhs);
    }
    if (name == "complexlab_valid") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        return check_bool(text, validate(cs.complex, cs.endo), k.rhs);
    }
    if (name == "cohomology") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        std::vector<int> dims = cohomology_dims(cs.complex);
        ExpectationOutcome o;
        o.text = text;
        o.actual = int_list_str(dims);
        std::vector<int> expected = parse_int_list(k.rhs);
        o.expected = int_list_str(expected);
        o.pass = dims == expected;
        return o;
    }
    if (name == "lefschetz_poly") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        return check_bpoly(text, s, lefschetz_poly(cs.complex, cs.endo), k.rhs);
    }
    if (name == "mckean_singer") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        double exact =
            static_cast<double>(bseries_eval(lefschetz_poly(cs.complex, cs.endo), Rat(-1)));
        bool v = true;
        for (double time : {0.05, 0.5, 5.0, 50.0})
            v = v && std::abs(heat_supertrace(cs.complex, cs.endo, time, -1.0) - exact) <= 1e-9;
        return check_bool(text, v, k.rhs);
    }
    if (name == "supersymmetry") {
        need_args(k, 0, 0);
        return check_bool(text, supersymmetry_check(need_complex(s).complex), k.rhs);
    }
    if (name == "duality") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        return check_bool(text, duality_check(cs.complex, cs.endo), k.rhs);
    }
    if (name == "kunneth_self") {
        need_args(k, 0, 0);
        const ComplexSection& cs = need_complex(s);
        return check_bool(
            text, kunneth_check(cs.complex, cs.endo, cs.complex, cs.endo, -0.5, 0.7), k.rhs);
    }
    throw std::invalid_argument("unknown expectation '" + name + "'");
}

}  // namespace

ScenarioReport run_expectations(const Scenario& s) {
    ScenarioReport report;
    report.name = s.name;
    report.warnings = s.warnings;
    for (const auto& text : s.expectations) {
        ExpectationOutcome o;
        try {
            o = evaluate_expectation(s, text);
        } catch (const std::exception& e) {
            o.text = text;
            o.pass = false;
            o.actual = std::string("error: ") + e.what();
            o.expected = "";
        }
        report.outcomes.push_back(std::move(o));
        report.ok = report.ok && report.outcomes.back().pass;
    }
    return report;
}

const FixedPointDatum& find_fixed_point(const Scenario& s, const std::string& name) {
    for (const auto& fp : s.fixed_points)
        if (fp.name == name) return fp;
    throw std::invalid_argument("unknown fixed point '" + name + "'");
}

bool variant_includes(const FixedPointDatum& fp, const std::string& variant) {
    return variant.empty() || !fp.variant || *fp.variant == variant;
}

std::vector<std::string> scenario_variants(const Scenario& s) {
    std::vector<std::string> tags;
    for (const auto& fp : s.fixed_points)
        if (fp.variant && std::find(tags.begin(), tags.end(), *fp.variant) == tags.end())
            tags.push_back(*fp.variant);
    return tags;
}

namespace {

int datum_dim(const FixedPointDatum& fp) {
    if (fp.split) return datum_dim(fp.split->factor1);
    switch (fp.kind) {
        case FixedPointDatum::Kind::Smooth:
            return static_cast<int>(fp.smooth.weights.size());
        case FixedPointDatum::Kind::Module:
            return fp.module_per_p.empty() ? 0 : fp.module_per_p.rbegin()->first;
        case FixedPointDatum::Kind::Bfq:
            return std::max<int>(0, static_cast<int>(fp.ci.ambient_weights.size()) -
                                        static_cast<int>(fp.ci.defining_weights.size()));
    }
    return 0;
}

}  // namespace

int scenario_dim(const Scenario& s) {
    if (s.complex_dim) return *s.complex_dim;
    int n = 0;
    for (const auto& fp : s.fixed_points) n = std::max(n, datum_dim(fp));
    return n;
}

RatFun scenario_local(const Scenario& s, const FixedPointDatum& fp, int p) {
    return local_lefschetz(s.table, fp, p);
}

RatFun scenario_global(const Scenario& s, int p, const std::string& variant) {
    std::vector<RatFun> locals;
    for (const auto& fp : s.fixed_points)
        if (variant_includes(fp, variant)) locals.push_back(local_lefschetz(s.table, fp, p));
    return global_sum(s.table, locals);
}

ChiY scenario_chi_y_point(const Scenario& s, const FixedPointDatum& fp) {
    int n = scenario_dim(s);
    std::map<int, RatFun> per_p;
    for (int p = 0; p <= n; ++p) per_p[p] = local_lefschetz(s.table, fp, p);
    return chi_y_assemble(per_p, n);
}

ChiY scenario_chi_y_global(const Scenario& s, const std::string& variant) {
    int n = scenario_dim(s);
    std::map<int, RatFun> per_p;
    for (int p = 0; p <= n; ++p) per_p[p] = scenario_global(s, p, variant);
    return chi_y_assemble(per_p, n);
}

RatFun scenario_spin_local(const Scenario& s, const FixedPointDatum& fp) {
    if (!fp.spin_half_char)
        throw std::invalid_argument("fixed point '" + fp.name + "' has no spin half character");
    return spin_local(local_lefschetz(s.table, fp, 0), *fp.spin_half_char);
}

RatFun scenario_spin_sum(const Scenario& s) {
    if (s.fixed_points.empty()) throw std::invalid_argument("scenario has no fixed points");
    std::vector<RatFun> locals;
    for (const auto& fp : s.fixed_points) locals.push_back(scenario_spin_local(s, fp));
    return global_sum(s.table, locals);
}

BPoly scenario_morse(const Scenario& s) {
    if (s.critical_points.empty())
        throw std::invalid_argument("scenario has no critical points");
    return global_morse(s.critical_points);
}

LaurentPoly scenario_expand(const Scenario& s, const FixedPointDatum& fp, int p,
                            Region region, long order) {
    return rf_expand(local_lefschetz(s.table, fp, p), region, order);
}

bool euler_vs_lefschetz(const Scenario& s) {
    RatFun chi = scenario_chi_y_global(s).value;
    Rat morse_side = bseries_eval(scenario_morse(s), Rat(-1));
    for (unsigned seed = 1; seed <= 32; ++seed) {
        auto point = random_point(s.table, seed);
        point["y"] = Rat(-1);
        try {
            return rf_eval(chi, point) == morse_side;
        } catch (const std::domain_error&) {
            continue;  // random point hit a pole; redraw
        }
    }
    throw std::runtime_error("no pole-free evaluation point found");
}

}  // namespace lefloc
