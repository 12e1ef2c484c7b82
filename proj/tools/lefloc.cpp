// lefloc - exact localization workbench command line.
//
// Every command loads one declarative scenario (JSON) and prints exact
// symbolic results; --json emits the same values in a machine-readable
// envelope.  `verify` runs a scenario's own expectations, or the whole
// corpus when no file is given.
//
// Exit codes: 0 success, 1 failed expectations, 2 usage/input errors.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>
#include <vector>

#include "lefloc/expr.hpp"
#include "lefloc/format.hpp"
#include "lefloc/runner.hpp"

#ifndef LEFLOC_CORPUS_DIR
#define LEFLOC_CORPUS_DIR "corpus"
#endif

namespace {

using lefloc::Scenario;
using ojson = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Variant contexts to report: the declared tags, or the single "everything"
// context when the scenario has none.
std::vector<std::string> variant_contexts(const Scenario& s, const std::string& flag) {
    if (!flag.empty()) return {flag};
    std::vector<std::string> tags = lefloc::scenario_variants(s);
    if (tags.empty()) tags.push_back("");
    return tags;
}

std::string variant_label(const std::string& v) { return v.empty() ? "all" : v; }

// ---------------------------------------------------------------- commands

ojson cmd_local(const Scenario& s, const std::string& point, int p) {
    const auto& fp = lefloc::find_fixed_point(s, point);
    ojson out;
    out["command"] = "local";
    out["scenario"] = s.name;
    out["point"] = point;
    out["p"] = p;
    out["value"] = lefloc::display(lefloc::scenario_local(s, fp, p));
    return out;
}

void text_local(const ojson& o) {
    std::cout << "local[" << o["point"].get<std::string>() << ", p=" << o["p"]
              << "] = " << o["value"].get<std::string>() << "\n";
}

ojson cmd_global(const Scenario& s, std::optional<int> p_flag, const std::string& variant) {
    ojson out;
    out["command"] = "global";
    out["scenario"] = s.name;
    std::vector<int> degrees;
    if (p_flag)
        degrees.push_back(*p_flag);
    else
        for (int p = 0; p <= lefloc::scenario_dim(s); ++p) degrees.push_back(p);
    ojson values = ojson::array();
    for (int p : degrees)
        for (const auto& v : variant_contexts(s, variant)) {
            ojson e;
            e["p"] = p;
            if (!v.empty()) e["variant"] = v;
            e["value"] = lefloc::display(lefloc::scenario_global(s, p, v));
            values.push_back(std::move(e));
        }
    out["values"] = std::move(values);
    return out;
}

void text_global(const ojson& o) {
    for (const auto& e : o["values"]) {
        std::cout << "global[p=" << e["p"];
        if (e.contains("variant")) std::cout << ", " << e["variant"].get<std::string>();
        std::cout << "] = " << e["value"].get<std::string>() << "\n";
    }
}

ojson chi_entry(const Scenario& s, const lefloc::ChiY& c) {
    ojson e;
    e["value"] = lefloc::display(c.value);
    e["n"] = c.n;
    e["duality"] = lefloc::chi_y_duality_check(c, lefloc::torus_inversion(s.table));
    return e;
}

ojson cmd_chi_y(const Scenario& s, const std::string& point, const std::string& variant) {
    ojson out;
    out["command"] = "chi_y";
    out["scenario"] = s.name;
    ojson entries = ojson::array();
    if (!point.empty()) {
        ojson e = chi_entry(s, lefloc::scenario_chi_y_point(s, lefloc::find_fixed_point(s, point)));
        e["point"] = point;
        entries.push_back(std::move(e));
    } else {
        for (const auto& v : variant_contexts(s, variant)) {
            ojson e = chi_entry(s, lefloc::scenario_chi_y_global(s, v));
            e["variant"] = variant_label(v);
            entries.push_back(std::move(e));
        }
    }
    out["entries"] = std::move(entries);
    return out;
}

void text_chi_y(const ojson& o) {
    for (const auto& e : o["entries"]) {
        std::string scope = e.contains("point") ? e["point"].get<std::string>()
                                                : e["variant"].get<std::string>();
        std::cout << "chi_y[" << scope << "] = " << e["value"].get<std::string>() << "\n";
        std::cout << "  duality: " << (e["duality"].get<bool>() ? "true" : "false") << "\n";
    }
}

ojson cmd_invariants(const Scenario& s, const std::string& variant) {
    ojson out;
    out["command"] = "invariants";
    out["scenario"] = s.name;
    ojson entries = ojson::array();
    for (const auto& v : variant_contexts(s, variant)) {
        lefloc::ChiY c = lefloc::scenario_chi_y_global(s, v);
        auto [sd, asd] = lefloc::sd_asd_indices(c);
        ojson e;
        e["variant"] = variant_label(v);
        e["chi_y"] = lefloc::display(c.value);
        e["signature"] = lefloc::display(lefloc::specialize(c, lefloc::Rat(1)));
        e["riemann_roch"] = lefloc::display(lefloc::specialize(c, lefloc::Rat(0)));
        e["euler"] = lefloc::display(lefloc::specialize(c, lefloc::Rat(-1)));
        e["sd"] = lefloc::display(sd);
        e["asd"] = lefloc::display(asd);
        ojson duality;
        for (std::size_t i = 0; i < s.table->torus_count(); ++i) {
            const std::string& var = s.table->names()[i];
            duality[var] = lefloc::sd_asd_duality_check(c, var);
        }
        e["sd_asd_duality"] = std::move(duality);
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return out;
}

void text_invariants(const ojson& o) {
    for (const auto& e : o["entries"]) {
        std::cout << "variant " << e["variant"].get<std::string>() << ":\n";
        for (const char* key : {"chi_y", "signature", "riemann_roch", "euler", "sd", "asd"})
            std::cout << "  " << key << " = " << e[key].get<std::string>() << "\n";
        for (const auto& [var, ok] : e["sd_asd_duality"].items())
            std::cout << "  sd_asd duality in " << var << ": " << (ok.get<bool>() ? "true" : "false")
                      << "\n";
    }
}

ojson cmd_spin(const Scenario& s) {
    ojson out;
    out["command"] = "spin";
    out["scenario"] = s.name;
    ojson locals = ojson::array();
    bool all = !s.fixed_points.empty();
    for (const auto& fp : s.fixed_points) {
        if (!fp.spin_half_char) {
            all = false;
            continue;
        }
        ojson e;
        e["point"] = fp.name;
        e["value"] = lefloc::display(lefloc::scenario_spin_local(s, fp));
        locals.push_back(std::move(e));
    }
    out["locals"] = std::move(locals);
    if (all)
        out["sum"] = lefloc::display(lefloc::scenario_spin_sum(s));
    else
        out["note"] = "not every fixed point carries a spin half character";
    return out;
}

void text_spin(const ojson& o) {
    for (const auto& e : o["locals"])
        std::cout << "spin[" << e["point"].get<std::string>()
                  << "] = " << e["value"].get<std::string>() << "\n";
    if (o.contains("sum"))
        std::cout << "spin sum = " << o["sum"].get<std::string>() << "\n";
    else
        std::cout << o["note"].get<std::string>() << "\n";
}

ojson cmd_morse(const Scenario& s) {
    ojson out;
    out["command"] = "morse";
    out["scenario"] = s.name;
    ojson locals = ojson::array();
    for (const auto& cp : s.critical_points) {
        ojson e;
        e["point"] = cp.name;
        e["value"] = lefloc::to_string(lefloc::local_morse_poly(cp));
        locals.push_back(std::move(e));
    }
    out["locals"] = std::move(locals);
    lefloc::BPoly M = lefloc::scenario_morse(s);
    out["morse"] = lefloc::to_string(M);
    out["lacunary"] = lefloc::lacunary_check(M);
    if (s.poincare) {
        out["poincare"] = lefloc::to_string(*s.poincare);
        auto rep = lefloc::morse_inequality_check(M, *s.poincare);
        ojson ineq;
        ineq["quotient"] = lefloc::to_string(rep.Q);
        ineq["divisible"] = rep.divisible;
        ineq["nonnegative"] = rep.nonneg;
        ineq["euler_match"] = rep.euler_match;
        ineq["ok"] = rep.ok();
        out["inequalities"] = std::move(ineq);
    }
    return out;
}

void text_morse(const ojson& o) {
    for (const auto& e : o["locals"])
        std::cout << "local[" << e["point"].get<std::string>()
                  << "] = " << e["value"].get<std::string>() << "\n";
    std::cout << "morse = " << o["morse"].get<std::string>() << "\n";
    if (o.contains("poincare")) {
        std::cout << "poincare = " << o["poincare"].get<std::string>() << "\n";
        const auto& q = o["inequalities"];
        std::cout << "inequalities: (M - N)/(1 + b) = " << q["quotient"].get<std::string>()
                  << ", divisible " << (q["divisible"].get<bool>() ? "true" : "false")
                  << ", nonnegative " << (q["nonnegative"].get<bool>() ? "true" : "false")
                  << ", euler match " << (q["euler_match"].get<bool>() ? "true" : "false")
                  << " => " << (q["ok"].get<bool>() ? "true" : "false") << "\n";
    }
    std::cout << "lacunary: " << (o["lacunary"].get<bool>() ? "true" : "false") << "\n";
}

ojson cmd_expand(const Scenario& s, const std::string& point, int p,
                 const std::string& region, long order) {
    const auto& fp = lefloc::find_fixed_point(s, point);
    lefloc::Region r = region == "outside" ? lefloc::Region::outside : lefloc::Region::inside;
    if (region != "inside" && region != "outside")
        throw std::invalid_argument("region must be 'inside' or 'outside'");
    ojson out;
    out["command"] = "expand";
    out["scenario"] = s.name;
    out["point"] = point;
    out["p"] = p;
    out["region"] = region;
    out["order"] = order;
    out["value"] = lefloc::to_string(lefloc::scenario_expand(s, fp, p, r, order));
    return out;
}

void text_expand(const ojson& o) { std::cout << o["value"].get<std::string>() << "\n"; }

ojson cmd_complexlab(const Scenario& s) {
    if (!s.complexlab) throw std::invalid_argument("scenario has no complexlab section");
    const auto& cs = *s.complexlab;
    ojson out;
    out["command"] = "complexlab";
    out["scenario"] = s.name;
    out["valid"] = lefloc::validate(cs.complex, cs.endo);
    {
        std::vector<int> dims = lefloc::cohomology_dims(cs.complex);
        ojson arr = ojson::array();
        for (int d : dims) arr.push_back(d);
        out["cohomology"] = std::move(arr);
    }
    lefloc::BSeries L = lefloc::lefschetz_poly(cs.complex, cs.endo);
    out["lefschetz_poly"] = lefloc::to_string(L);
    double exact = static_cast<double>(lefloc::bseries_eval(L, lefloc::Rat(-1)));
    ojson heat = ojson::array();
    bool ms = true;
    for (double time : {0.05, 0.5, 5.0, 50.0}) {
        double v = lefloc::heat_supertrace(cs.complex, cs.endo, time, -1.0);
        ms = ms && std::abs(v - exact) <= 1e-9;
        ojson e;
        e["time"] = fmt_double(time);
        e["supertrace"] = fmt_double(v);
        heat.push_back(std::move(e));
    }
    out["heat"] = std::move(heat);
    out["mckean_singer"] = ms;
    out["supersymmetry"] = lefloc::supersymmetry_check(cs.complex);
    out["duality"] = lefloc::duality_check(cs.complex, cs.endo);
    out["kunneth_self"] =
        lefloc::kunneth_check(cs.complex, cs.endo, cs.complex, cs.endo, -0.5, 0.7);
    return out;
}

void text_complexlab(const ojson& o) {
    std::cout << "valid: " << (o["valid"].get<bool>() ? "true" : "false") << "\n";
    std::cout << "cohomology = [";
    bool first = true;
    for (const auto& d : o["cohomology"]) {
        if (!first) std::cout << ", ";
        std::cout << d.get<int>();
        first = false;
    }
    std::cout << "]\n";
    std::cout << "lefschetz_poly = " << o["lefschetz_poly"].get<std::string>() << "\n";
    for (const auto& e : o["heat"])
        std::cout << "heat supertrace (b=-1, t=" << e["time"].get<std::string>()
                  << ") = " << e["supertrace"].get<std::string>() << "\n";
    for (const char* key : {"mckean_singer", "supersymmetry", "duality", "kunneth_self"})
        std::cout << key << ": " << (o[key].get<bool>() ? "true" : "false") << "\n";
}

// ---------------------------------------------------------------- verify

std::vector<std::string> corpus_files() {
    std::string dir;
    if (const char* env = std::getenv("LEFLOC_CORPUS"))
        dir = env;
    else if (std::filesystem::is_directory("corpus"))
        dir = "corpus";
    else
        dir = LEFLOC_CORPUS_DIR;
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("corpus directory '" + dir + "' not found");
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("corpus directory '" + dir + "' has no scenarios");
    return files;
}

int cmd_verify(const std::vector<std::string>& files, int jobs, bool json_mode) {
    struct Entry {
        std::string file;
        std::optional<lefloc::ScenarioReport> report;
        std::string error;
    };
    std::vector<Entry> entries(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) entries[i].file = files[i];

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            try {
                Scenario s = lefloc::load_scenario(entries[i].file);
                entries[i].report = lefloc::run_expectations(s);
            } catch (const std::exception& e) {
                entries[i].error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ojson out;
    out["command"] = "verify";
    ojson scen = ojson::array();
    std::size_t passed = 0, total = 0;
    bool any_error = false;
    for (const auto& e : entries) {
        ojson se;
        se["file"] = e.file;
        if (!e.error.empty()) {
            se["error"] = e.error;
            any_error = true;
        } else {
            const auto& r = *e.report;
            se["name"] = r.name;
            ojson warn = ojson::array();
            for (const auto& w : r.warnings) warn.push_back(w);
            if (!warn.empty()) se["warnings"] = std::move(warn);
            ojson exps = ojson::array();
            for (const auto& o : r.outcomes) {
                ojson x;
                x["text"] = o.text;
                x["pass"] = o.pass;
                x["actual"] = o.actual;
                x["expected"] = o.expected;
                exps.push_back(std::move(x));
                total += 1;
                passed += o.pass ? 1 : 0;
            }
            se["expectations"] = std::move(exps);
            se["ok"] = r.ok;
        }
        scen.push_back(std::move(se));
    }
    out["scenarios"] = std::move(scen);
    out["passed"] = passed;
    out["total"] = total;
    bool ok = !any_error && passed == total;
    out["ok"] = ok;

    if (json_mode) {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& se : out["scenarios"]) {
            std::cout << se["file"].get<std::string>();
            if (se.contains("error")) {
                std::cout << ": ERROR\n  " << se["error"].get<std::string>() << "\n";
                continue;
            }
            std::cout << ": " << se["name"].get<std::string>() << "\n";
            if (se.contains("warnings"))
                for (const auto& w : se["warnings"])
                    std::cout << "  warning: " << w.get<std::string>() << "\n";
            std::size_t p = 0, t = 0;
            for (const auto& x : se["expectations"]) {
                bool pass = x["pass"].get<bool>();
                std::cout << (pass ? "  pass  " : "  FAIL  ") << x["text"].get<std::string>()
                          << "\n";
                if (!pass) {
                    std::cout << "        actual:   " << x["actual"].get<std::string>() << "\n";
                    if (!x["expected"].get<std::string>().empty())
                        std::cout << "        expected: " << x["expected"].get<std::string>()
                                  << "\n";
                }
                t += 1;
                p += pass ? 1 : 0;
            }
            std::cout << "  " << p << "/" << t << " passed\n";
        }
        std::cout << entries.size() << " scenario" << (entries.size() == 1 ? "" : "s") << ": "
                  << passed << "/" << total << " expectations passed"
                  << (ok ? "" : any_error ? ", with errors" : ", some FAILED") << "\n";
    }
    return any_error ? 2 : (ok ? 0 : 1);
}

void emit(const ojson& out, bool json_mode, void (*text)(const ojson&)) {
    if (json_mode)
        std::cout << out.dump(2) << "\n";
    else
        text(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact equivariant Lefschetz / Morse / finite-complex workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable output");

    std::string file, point, region = "inside", variant;
    int p = 0;
    long order = 5;
    int jobs = 1;
    std::optional<int> p_flag;

    auto add_file = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("scenario", file, "scenario JSON file");
        if (required) opt->required();
    };

    CLI::App* c_local = app.add_subcommand("local", "local fixed-point number");
    add_file(c_local);
    c_local->add_option("--point", point, "fixed point name")->required();
    c_local->add_option("--p", p, "form degree (default 0)");

    CLI::App* c_global = app.add_subcommand("global", "global sums over the fixed points");
    add_file(c_global);
    c_global->add_option("--p", p_flag, "single form degree (default: all)");
    c_global->add_option("--variant", variant, "variant tag");

    CLI::App* c_chi = app.add_subcommand("chi-y", "Hirzebruch-type genus and its duality");
    add_file(c_chi);
    c_chi->add_option("--point", point, "restrict to one fixed point");
    c_chi->add_option("--variant", variant, "variant tag");

    CLI::App* c_inv = app.add_subcommand("invariants", "specializations of the genus");
    add_file(c_inv);
    c_inv->add_option("--variant", variant, "variant tag");

    CLI::App* c_spin = app.add_subcommand("spin", "half-character twisted locals");
    add_file(c_spin);

    CLI::App* c_morse = app.add_subcommand("morse", "Morse polynomial and inequalities");
    add_file(c_morse);

    CLI::App* c_expand = app.add_subcommand("expand", "Laurent expansion of a local number");
    add_file(c_expand);
    c_expand->add_option("--point", point, "fixed point name")->required();
    c_expand->add_option("--p", p, "form degree (default 0)");
    c_expand->add_option("--order", order, "truncation order (default 5)");
    c_expand->add_option("--region", region, "inside | outside (default inside)");

    CLI::App* c_lab = app.add_subcommand("complexlab", "finite-complex checks");
    add_file(c_lab);

    CLI::App* c_verify = app.add_subcommand("verify", "run scenario expectations");
    add_file(c_verify, /*required=*/false);
    c_verify->add_option("--jobs", jobs, "parallel scenario workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(c_verify)) {
            std::vector<std::string> files =
                file.empty() ? corpus_files() : std::vector<std::string>{file};
            return cmd_verify(files, jobs, json_mode);
        }
        Scenario s = lefloc::load_scenario(file);
        if (app.got_subcommand(c_local))
            emit(cmd_local(s, point, p), json_mode, text_local);
        else if (app.got_subcommand(c_global))
            emit(cmd_global(s, p_flag, variant), json_mode, text_global);
        else if (app.got_subcommand(c_chi))
            emit(cmd_chi_y(s, point, variant), json_mode, text_chi_y);
        else if (app.got_subcommand(c_inv))
            emit(cmd_invariants(s, variant), json_mode, text_invariants);
        else if (app.got_subcommand(c_spin))
            emit(cmd_spin(s), json_mode, text_spin);
        else if (app.got_subcommand(c_morse))
            emit(cmd_morse(s), json_mode, text_morse);
        else if (app.got_subcommand(c_expand))
            emit(cmd_expand(s, point, p, region, order), json_mode, text_expand);
        else if (app.got_subcommand(c_lab))
            emit(cmd_complexlab(s), json_mode, text_complexlab);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
