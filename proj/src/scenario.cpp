#include "lefloc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "lefloc/expr.hpp"

namespace lefloc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ScenarioError(path + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path + "." + key, "missing required field");
    return *it;
}

const json* find(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string need_string(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_string()) bad(path + "." + key, "expected a string");
    return v.get<std::string>();
}

int need_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<int>();
}

// Exponents: integers, or strings "n", "-n", "n/2", "-n/2".
std::pair<std::int64_t, std::int64_t> parse_exponent(const json& v, const std::string& path) {
    if (v.is_number_integer()) return {v.get<std::int64_t>(), 1};
    if (v.is_string()) {
        Rat r;
        try {
            r = parse_rat(v.get<std::string>());
        } catch (const std::exception& e) {
            bad(path, e.what());
        }
        Int den = denominator(r);
        if (den != 1 && den != 2) bad(path, "exponent denominator must be 1 or 2");
        return {static_cast<std::int64_t>(numerator(r)), static_cast<std::int64_t>(den)};
    }
    bad(path, "expected an integer or a rational exponent string");
}

// {"lambda": 2, "mu": "-1/2"} -> lambda^2 * mu^(-1/2).  {} is the unit.
Monomial parse_monomial(const VarTablePtr& t, const json& j, const std::string& path) {
    if (!j.is_object()) bad(path, "expected a monomial object {var: exponent}");
    Monomial m = unit_monomial(t);
    for (const auto& [key, val] : j.items()) {
        if (!t->has(key)) bad(path, "unknown variable '" + key + "'");
        auto [en, ed] = parse_exponent(val, path + "." + key);
        m = m.mul(var_monomial(t, key, en, ed));
    }
    return m;
}

std::vector<Monomial> parse_monomial_list(const VarTablePtr& t, const json& j,
                                          const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of monomials");
    std::vector<Monomial> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_monomial(t, j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Bundle traces are written as expression strings, e.g. "1 + lambda".
LaurentPoly parse_trace(const VarTablePtr& t, const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected an expression string");
    try {
        return to_laurent(parse_ratfun(t, v.get<std::string>()));
    } catch (const std::exception& e) {
        bad(path, e.what());
    }
}

int parse_degree_key(const std::string& key, const std::string& path) {
    try {
        std::size_t used = 0;
        int k = std::stoi(key, &used);
        if (used != key.size() || k < 0) throw std::invalid_argument("");
        return k;
    } catch (const std::exception&) {
        bad(path, "degree key '" + key + "' is not a nonnegative integer");
    }
}

FixedPointDatum parse_fixed_point(const VarTablePtr& t, const json& j,
                                  const std::string& path);

FixedPointDatum::Kind parse_kind(const std::string& kind, const std::string& path) {
    if (kind == "smooth") return FixedPointDatum::Kind::Smooth;
    if (kind == "module") return FixedPointDatum::Kind::Module;
    if (kind == "bfq") return FixedPointDatum::Kind::Bfq;
    bad(path + ".kind", "unknown kind '" + kind + "' (smooth, module, bfq, product)");
}

void parse_module_section(const VarTablePtr& t, const json& j, FixedPointDatum& fp,
                          const std::string& path) {
    const json& mods = need(j, "modules", path);
    if (!mods.is_object()) bad(path + ".modules", "expected an object {p: [summands]}");
    std::vector<Monomial> shared_chars;
    if (const json* c = find(j, "chars")) shared_chars = parse_monomial_list(t, *c, path + ".chars");
    for (const auto& [pkey, summands] : mods.items()) {
        std::string ppath = path + ".modules." + pkey;
        int p = parse_degree_key(pkey, ppath);
        if (!summands.is_array()) bad(ppath, "expected an array of summands");
        ModuleDatum datum;
        for (std::size_t i = 0; i < summands.size(); ++i) {
            std::string spath = ppath + "[" + std::to_string(i) + "]";
            const json& s = summands[i];
            FreeModuleSummand summand;
            summand.generator = parse_monomial(t, need(s, "gen", spath), spath + ".gen");
            if (const json* c = find(s, "chars"))
                summand.ring_chars = parse_monomial_list(t, *c, spath + ".chars");
            else
                summand.ring_chars = shared_chars;
            int q = 0;
            if (const json* qv = find(s, "q")) q = need_int(*qv, spath + ".q");
            if (q < 0) bad(spath + ".q", "module degree must be nonnegative");
            datum.per_degree[q].push_back(std::move(summand));
        }
        fp.module_per_p[p] = std::move(datum);
    }
    if (fp.module_per_p.empty()) bad(path + ".modules", "at least one degree is required");
}

FixedPointDatum parse_fixed_point(const VarTablePtr& t, const json& j,
                                  const std::string& path) {
    FixedPointDatum fp;
    fp.name = need_string(j, "name", path);
    std::string kind = need_string(j, "kind", path);

    if (const json* side = find(j, "side")) {
        if (!side->is_string()) bad(path + ".side", "expected a string");
        std::string s = side->get<std::string>();
        if (s == "attracting")
            fp.side = Side::attracting;
        else if (s == "expanding")
            fp.side = Side::expanding;
        else
            bad(path + ".side", "expected 'attracting' or 'expanding'");
    }
    if (const json* v = find(j, "variant")) {
        if (!v->is_string()) bad(path + ".variant", "expected a string");
        fp.variant = v->get<std::string>();
    }
    if (const json* s = find(j, "spin_half_char"))
        fp.spin_half_char = parse_monomial(t, *s, path + ".spin_half_char");

    if (kind == "product") {
        fp.split = std::make_shared<FixedPointDatum::Split>();
        fp.split->factor1 =
            parse_fixed_point(t, need(j, "factor1", path), path + ".factor1");
        fp.split->factor2 =
            parse_fixed_point(t, need(j, "factor2", path), path + ".factor2");
        fp.split->dual_top_dim = need_int(need(j, "dual_top_dim", path), path + ".dual_top_dim");
        fp.kind = fp.split->factor1.kind;
        return fp;
    }

    fp.kind = parse_kind(kind, path);
    switch (fp.kind) {
        case FixedPointDatum::Kind::Smooth: {
            fp.smooth.weights = parse_monomial_list(t, need(j, "weights", path), path + ".weights");
            for (std::size_t i = 0; i < fp.smooth.weights.size(); ++i)
                if (fp.smooth.weights[i].is_unital())
                    bad(path + ".weights[" + std::to_string(i) + "]",
                        "weight must be a nontrivial character");
            if (const json* bt = find(j, "bundle_trace"))
                fp.smooth.bundle_trace = parse_trace(t, *bt, path + ".bundle_trace");
            if (const json* hp = find(j, "hodge_p")) {
                int p = need_int(*hp, path + ".hodge_p");
                if (p < 0) bad(path + ".hodge_p", "degree must be nonnegative");
                fp.smooth.hodge_p = p;
            }
            break;
        }
        case FixedPointDatum::Kind::Module:
            parse_module_section(t, j, fp, path);
            break;
        case FixedPointDatum::Kind::Bfq: {
            fp.ci.ambient_weights =
                parse_monomial_list(t, need(j, "ambient", path), path + ".ambient");
            fp.ci.defining_weights =
                parse_monomial_list(t, need(j, "defining", path), path + ".defining");
            if (const json* bt = find(j, "bundle_trace"))
                fp.ci.bundle_trace = parse_trace(t, *bt, path + ".bundle_trace");
            break;
        }
    }
    return fp;
}

FactorDatum parse_factor(const json& j, const std::string& path,
                         const std::string& point_name, std::vector<std::string>& warnings) {
    if (!j.is_object()) bad(path, "expected {\"disc\": dim} or {\"cone\": {...}}");
    if (const json* d = find(j, "disc")) {
        int dim = need_int(*d, path + ".disc");
        if (dim < 0) bad(path + ".disc", "dimension must be nonnegative");
        return FactorDatum::smooth_disc(dim);
    }
    if (const json* c = find(j, "cone")) {
        LinkData link;
        link.dim_l = need_int(need(*c, "link_dim", path + ".cone"), path + ".cone.link_dim");
        const json& betti = need(*c, "betti", path + ".cone");
        if (!betti.is_array()) bad(path + ".cone.betti", "expected an array of integers");
        for (std::size_t i = 0; i < betti.size(); ++i)
            link.betti.push_back(
                need_int(betti[i], path + ".cone.betti[" + std::to_string(i) + "]"));
        try {
            validate_link(link);
        } catch (const std::exception& e) {
            bad(path + ".cone", e.what());
        }
        if (!link_witt_symmetric(link))
            warnings.push_back("critical point '" + point_name +
                               "': link Betti numbers are not Poincare-symmetric");
        return FactorDatum::cone(std::move(link));
    }
    bad(path, "expected a 'disc' or 'cone' factor");
}

MatQ parse_matrix(const json& j, std::size_t rows, std::size_t cols,
                  const std::string& path) {
    MatQ m(rows, cols);
    if (!j.is_array()) bad(path, "expected an array of rows");
    if (j.empty() && (rows == 0 || cols == 0)) return m;
    if (j.size() != rows)
        bad(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        std::string rpath = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols)
            bad(rpath, "expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& e = row[k];
            std::string epath = rpath + "[" + std::to_string(k) + "]";
            if (e.is_number_integer())
                m.at(i, k) = Rat(e.get<std::int64_t>());
            else if (e.is_string()) {
                try {
                    m.at(i, k) = parse_rat(e.get<std::string>());
                } catch (const std::exception& ex) {
                    bad(epath, ex.what());
                }
            } else
                bad(epath, "expected an integer or a rational string");
        }
    }
    return m;
}

ComplexSection parse_complex_section(const json& j, const std::string& path) {
    ComplexSection cs;
    const json& dims = need(j, "dims", path);
    if (!dims.is_array() || dims.empty()) bad(path + ".dims", "expected a nonempty array");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int d = need_int(dims[i], path + ".dims[" + std::to_string(i) + "]");
        if (d < 0) bad(path + ".dims[" + std::to_string(i) + "]", "dimension must be nonnegative");
        cs.complex.dims.push_back(d);
    }
    const std::size_t N = cs.complex.dims.size();
    const json& diffs = need(j, "differentials", path);
    if (!diffs.is_array() || diffs.size() != N - 1)
        bad(path + ".differentials", "expected " + std::to_string(N - 1) + " matrices");
    for (std::size_t k = 0; k + 1 < N; ++k)
        cs.complex.differentials.push_back(
            parse_matrix(diffs[k], static_cast<std::size_t>(cs.complex.dims[k + 1]),
                         static_cast<std::size_t>(cs.complex.dims[k]),
                         path + ".differentials[" + std::to_string(k) + "]"));
    const json& endo = need(j, "endomorphism", path);
    if (!endo.is_array() || endo.size() != N)
        bad(path + ".endomorphism", "expected " + std::to_string(N) + " matrices");
    for (std::size_t k = 0; k < N; ++k)
        cs.endo.maps.push_back(parse_matrix(endo[k], static_cast<std::size_t>(cs.complex.dims[k]),
                                            static_cast<std::size_t>(cs.complex.dims[k]),
                                            path + ".endomorphism[" + std::to_string(k) + "]"));
    return cs;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw ScenarioError(origin + ": top level must be an object");

    Scenario s;
    s.name = need_string(j, "name", origin);

    std::vector<std::string> vars;
    const json& jv = need(j, "variables", origin);
    if (!jv.is_array()) bad(origin + ".variables", "expected an array of names");
    for (std::size_t i = 0; i < jv.size(); ++i) {
        if (!jv[i].is_string())
            bad(origin + ".variables[" + std::to_string(i) + "]", "expected a string");
        vars.push_back(jv[i].get<std::string>());
    }
    try {
        s.table = VarTable::make(std::move(vars));
    } catch (const std::exception& e) {
        bad(origin + ".variables", e.what());
    }

    if (const json* cd = find(j, "complex_dim")) {
        int n = need_int(*cd, origin + ".complex_dim");
        if (n < 0) bad(origin + ".complex_dim", "dimension must be nonnegative");
        s.complex_dim = n;
    }

    if (const json* fps = find(j, "fixed_points")) {
        if (!fps->is_array()) bad(origin + ".fixed_points", "expected an array");
        for (std::size_t i = 0; i < fps->size(); ++i)
            s.fixed_points.push_back(parse_fixed_point(
                s.table, (*fps)[i], origin + ".fixed_points[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < s.fixed_points.size(); ++i)
        for (std::size_t k = i + 1; k < s.fixed_points.size(); ++k)
            if (s.fixed_points[i].name == s.fixed_points[k].name)
                bad(origin + ".fixed_points",
                    "duplicate fixed point name '" + s.fixed_points[i].name + "'");

    if (const json* cps = find(j, "critical_points")) {
        if (!cps->is_array()) bad(origin + ".critical_points", "expected an array");
        for (std::size_t i = 0; i < cps->size(); ++i) {
            std::string path = origin + ".critical_points[" + std::to_string(i) + "]";
            const json& cj = (*cps)[i];
            CriticalPointDatum cp;
            cp.name = need_string(cj, "name", path);
            cp.attracting =
                parse_factor(need(cj, "attracting", path), path + ".attracting", cp.name,
                             s.warnings);
            cp.expanding = parse_factor(need(cj, "expanding", path), path + ".expanding",
                                        cp.name, s.warnings);
            if (cp.attracting.is_trivial_disc() && cp.expanding.is_trivial_disc())
                bad(path, "attracting and expanding factors cannot both be trivial discs");
            s.critical_points.push_back(std::move(cp));
        }
    }

    if (const json* pj = find(j, "poincare")) {
        if (!pj->is_object()) bad(origin + ".poincare", "expected an object {degree: coeff}");
        BPoly N;
        for (const auto& [key, val] : pj->items()) {
            std::string path = origin + ".poincare." + key;
            int k = parse_degree_key(key, path);
            int c = need_int(val, path);
            if (c < 0) bad(path, "coefficient must be nonnegative");
            if (c != 0) N[k] = c;
        }
        s.poincare = std::move(N);
    }

    if (const json* cj = find(j, "complexlab"))
        s.complexlab = parse_complex_section(*cj, origin + ".complexlab");

    if (const json* ej = find(j, "expectations")) {
        if (!ej->is_array()) bad(origin + ".expectations", "expected an array of strings");
        for (std::size_t i = 0; i < ej->size(); ++i) {
            if (!(*ej)[i].is_string())
                bad(origin + ".expectations[" + std::to_string(i) + "]", "expected a string");
            s.expectations.push_back((*ej)[i].get<std::string>());
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

}  // namespace lefloc
