#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "lefloc/expr.hpp"
#include "lefloc/format.hpp"
#include "lefloc/runner.hpp"
#include "lefloc/scenario.hpp"

using namespace lefloc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Scenario parse_text(const std::string& text) { return parse_scenario(text, "test"); }

void expect_parse_error(const std::string& text, const std::string& fragment) {
    try {
        parse_scenario(text, "test");
        FAIL("expected a parse error mentioning '" << fragment << "'");
    } catch (const ScenarioError& e) {
        INFO(e.what());
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

std::string corpus_text(const std::string& file) {
    std::ifstream in(testutil::corpus_path(file));
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool report_ok(const json& mutated) {
    Scenario s = parse_scenario(mutated.dump(), "mutated");
    return run_expectations(s).ok;
}

// run the CLI binary, capture stdout, return {exit code, output}
std::pair<int, std::string> run_cli(const std::string& args) {
    fs::path out = fs::temp_directory_path() / "lefloc_cli_out.txt";
    std::string cmd = std::string(LEFLOC_CLI) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

}  // namespace

TEST_CASE("minimal scenario and trivial expectation") {
    Scenario s = parse_text(R"({
        "name": "empty",
        "variables": ["lambda"],
        "fixed_points": [],
        "expectations": ["global_p0 == 0"]
    })");
    CHECK(s.name == "empty");
    auto report = run_expectations(s);
    CHECK(report.ok);
    REQUIRE(report.outcomes.size() == 1);
    CHECK(report.outcomes[0].pass);
    CHECK(report.outcomes[0].actual == "0");
}

TEST_CASE("monomial parsing accepts integers and rational strings") {
    Scenario s = parse_text(R"({
        "name": "m",
        "variables": ["lambda", "mu"],
        "fixed_points": [
            {"name": "a", "kind": "smooth",
             "weights": [{"lambda": 2, "mu": "-1/2"}],
             "spin_half_char": {"lambda": "3/2"}}
        ],
        "expectations": []
    })");
    const auto& fp = s.fixed_points.at(0);
    Monomial w = fp.smooth.weights.at(0);
    CHECK(w.exp2[0] == 4);
    CHECK(w.exp2[1] == -1);
    REQUIRE(fp.spin_half_char.has_value());
    CHECK(fp.spin_half_char->exp2[0] == 3);
}

TEST_CASE("parse errors carry field paths") {
    expect_parse_error(R"({"variables": []})", "name");
    expect_parse_error(R"({"name": "x", "variables": ["y"]})", "reserved");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [{"name": "p", "kind": "weird"}]})",
                       "kind");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [{"name": "p", "kind": "smooth",
                          "weights": [{"zeta": 1}]}]})",
                       "fixed_points[0].weights[0]");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [
            {"name": "p", "kind": "smooth", "weights": [{"a": 1}]},
            {"name": "p", "kind": "smooth", "weights": [{"a": -1}]}]})",
                       "duplicate");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [{"name": "p", "kind": "smooth",
                          "weights": [{"a": 1}],
                          "spin_half_char": {"a": "1/3"}}]})",
                       "spin_half_char");
    expect_parse_error(R"({"name": "x", "variables": ["a"], "fixed_points": [],
        "critical_points": [{"name": "c",
                             "attracting": {"disc": 0},
                             "expanding": {"disc": 0}}]})",
                       "critical_points[0]");
    expect_parse_error(R"({"name": "x", "variables": ["a"], "fixed_points": [],
        "poincare": {"0": -1}})",
                       "poincare");
    expect_parse_error(R"({"name": "x", "variables": ["a"], "fixed_points": [],
        "poincare": {"q": 1}})",
                       "poincare");
    expect_parse_error(R"({"name": "x", "variables": [], "fixed_points": [],
        "complexlab": {"dims": [1, 1],
                       "differentials": [[[0], [0]]],
                       "endomorphism": [[[1]], [[1]]]}})",
                       "differentials[0]");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [{"name": "p", "kind": "module",
                          "modules": {}}]})",
                       "modules");
    expect_parse_error(R"({"name": "x", "variables": ["a"],
        "fixed_points": [{"name": "p", "kind": "bfq",
                          "defining": [{"a": 6}]}]})",
                       "ambient");
    expect_parse_error("{", "parse");
}

TEST_CASE("asymmetric links warn but still parse") {
    Scenario s = parse_text(R"({
        "name": "w",
        "variables": ["a"],
        "fixed_points": [],
        "critical_points": [
            {"name": "c",
             "attracting": {"cone": {"link_dim": 3, "betti": [1, 1, 0, 1]}},
             "expanding": {"disc": 0}}
        ],
        "expectations": []
    })");
    REQUIRE(s.warnings.size() == 1);
    CHECK(s.warnings[0].find("'c'") != std::string::npos);
    CHECK(s.warnings[0].find("symmetric") != std::string::npos);
}

TEST_CASE("failing expectations are reported, not thrown") {
    Scenario s = parse_text(R"({
        "name": "f",
        "variables": ["lambda"],
        "fixed_points": [
            {"name": "n", "kind": "smooth", "weights": [{"lambda": 1}]}
        ],
        "expectations": ["global_p0 == 7", "local_p0[missing] == 1"]
    })");
    auto report = run_expectations(s);
    CHECK_FALSE(report.ok);
    REQUIRE(report.outcomes.size() == 2);
    CHECK_FALSE(report.outcomes[0].pass);
    CHECK(report.outcomes[0].expected == "7");
    CHECK_FALSE(report.outcomes[1].pass);
    CHECK(report.outcomes[1].actual.find("error") != std::string::npos);
}

TEST_CASE("the two cusp models have different globals") {
    Scenario vaps = load_scenario(testutil::corpus_path("cusp_vaps.json"));
    Scenario max = load_scenario(testutil::corpus_path("cusp_max.json"));
    RatFun g_vaps = scenario_global(vaps, 0);
    RatFun g_max = scenario_global(max, 0);
    CHECK(rf_eq(g_vaps, RatFun::constant(vaps.table, 1)));
    CHECK(rf_eq(g_max, parse_ratfun(max.table, "1 + lambda^-1")));
    CHECK_FALSE(rf_eq(g_max, RatFun::constant(max.table, 1)));
}

TEST_CASE("every corpus scenario passes its expectations") {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(LEFLOC_CORPUS_DIR))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    REQUIRE(files.size() == 11);
    for (const auto& f : files) {
        Scenario s = load_scenario(f.string());
        auto report = run_expectations(s);
        INFO(f.filename().string());
        for (const auto& o : report.outcomes) {
            INFO(o.text << "  actual=" << o.actual << "  expected=" << o.expected);
            CHECK(o.pass);
        }
        CHECK(report.ok);
        CHECK_FALSE(report.outcomes.empty());
    }
}

TEST_CASE("removing any fixed point breaks some expectation") {
    for (const auto& entry : fs::directory_iterator(LEFLOC_CORPUS_DIR)) {
        if (entry.path().extension() != ".json") continue;
        json base = json::parse(corpus_text(entry.path().filename().string()));
        if (!base.contains("fixed_points")) continue;
        auto& pts = base["fixed_points"];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            json mutated = base;
            mutated["fixed_points"].erase(i);
            INFO(entry.path().filename().string()
                 << " without point '" << pts[i]["name"].get<std::string>() << "'");
            CHECK_FALSE(report_ok(mutated));
        }
    }
}

TEST_CASE("removing any critical point breaks the declared polynomial") {
    for (const std::string file :
         {"quadric.json", "conifold.json", "two_spheres_vaps.json"}) {
        json base = json::parse(corpus_text(file));
        auto& pts = base["critical_points"];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            json mutated = base;
            mutated["critical_points"].erase(i);
            INFO(file << " without critical point "
                      << pts[i]["name"].get<std::string>());
            CHECK_FALSE(report_ok(mutated));
        }
    }
}

TEST_CASE("removing one module generator breaks the global") {
    json base = json::parse(corpus_text("quadric.json"));
    bool found = false;
    for (auto& fp : base["fixed_points"]) {
        if (fp["name"] != "sing") continue;
        fp["modules"]["0"].erase(0);
        found = true;
    }
    REQUIRE(found);
    CHECK_FALSE(report_ok(base));
}

TEST_CASE("perturbing the endomorphism breaks the supertrace checks") {
    json base = json::parse(corpus_text("torus_rotation.json"));
    base["complexlab"]["endomorphism"][1][0][0] = 5;
    CHECK_FALSE(report_ok(base));
}

TEST_CASE("cli text and json modes print identical values") {
    std::string corpus = std::string(LEFLOC_CORPUS_DIR);
    auto [jc, jout] = run_cli("local " + corpus + "/quadric.json --point sing --p 0 --json");
    REQUIRE(jc == 0);
    json j = json::parse(jout);
    std::string value = j["value"].get<std::string>();
    CHECK(value == "(1 + lambda*mu) / [(1 - mu^2) (1 - lambda^2)]");
    auto [tc, tout] = run_cli("local " + corpus + "/quadric.json --point sing --p 0");
    REQUIRE(tc == 0);
    CHECK(tout.find(value) != std::string::npos);

    auto [gc, gout] = run_cli("global " + corpus + "/quadric.json --json");
    REQUIRE(gc == 0);
    json g = json::parse(gout);
    auto [gtc, gtout] = run_cli("global " + corpus + "/quadric.json");
    REQUIRE(gtc == 0);
    for (const auto& e : g["values"]) {
        CHECK(gtout.find(e["value"].get<std::string>()) != std::string::npos);
    }
}

TEST_CASE("cli expansion matches the library") {
    std::string corpus = std::string(LEFLOC_CORPUS_DIR);
    auto [code, out] =
        run_cli("expand " + corpus + "/cusp_max.json --point a --order 3 --region inside");
    REQUIRE(code == 0);
    CHECK(out == "lambda^-1 + 1 + lambda + lambda^2 + lambda^3\n");
}

TEST_CASE("cli exit codes distinguish failure kinds") {
    std::string corpus = std::string(LEFLOC_CORPUS_DIR);
    CHECK(run_cli("verify " + corpus + "/quadric.json").first == 0);
    CHECK(run_cli("verify /nonexistent/nope.json").first == 2);
    CHECK(run_cli("local " + corpus + "/quadric.json --point nope --p 0").first == 2);
    CHECK(run_cli("bogus-command").first == 2);

    fs::path failing = fs::temp_directory_path() / "lefloc_failing.json";
    {
        std::ofstream o(failing);
        o << R"({"name": "fails", "variables": ["lambda"],
                 "fixed_points": [],
                 "expectations": ["global_p0 == 1"]})";
    }
    auto [code, out] = run_cli("verify " + failing.string());
    CHECK(code == 1);
    CHECK(out.find("FAIL") != std::string::npos);
    fs::remove(failing);
}

TEST_CASE("cli verify runs the whole corpus") {
    // corpus selected through the environment variable
    std::string cmd = "LEFLOC_CORPUS=" + std::string(LEFLOC_CORPUS_DIR) + " " +
                      std::string(LEFLOC_CLI) + " verify --jobs 4";
    fs::path outfile = fs::temp_directory_path() / "lefloc_cli_out.txt";
    int status = std::system((cmd + " > " + outfile.string() + " 2>&1").c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(outfile);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string out = ss.str();
    REQUIRE(code == 0);
    CHECK(out.find("11 scenarios") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
}
