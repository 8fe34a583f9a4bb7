#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "copulab/cli.hpp"
#include "copulab/constructions.hpp"
#include "copulab/copula.hpp"
#include "copulab/spec_io.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = copulab::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// spec file that lives for one test case
struct TempSpec {
    std::string path;
    TempSpec(const std::string& name, const std::string& text) : path(name) {
        std::ofstream f(path);
        f << text;
    }
    ~TempSpec() { std::remove(path.c_str()); }
};

const char* kThreeAtomMeasure =
    "{\"atoms\":[[0.25,0.2],[0.5,0.6],[0.75,0.2]]}";
const char* kThreeAtomEvc =
    "{\"family\":\"evc\",\"measure\":{\"atoms\":[[0.25,0.2],[0.5,0.6],[0.75,0.2]]}}";

int count_lines(const std::string& s) {
    int n = 0;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

} // namespace

TEST_CASE("pickands validate: clean measure passes, bad mean fails with exit 2") {
    TempSpec good("cli_measure_good.json", kThreeAtomMeasure);
    auto r = run_cli({"pickands", "validate", good.path});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["pass"].get<bool>());
    CHECK(std::fabs(rep["mass_residual"].get<double>()) <= 1e-14);
    CHECK(rep["structure_ok"].get<bool>());

    TempSpec bad("cli_measure_bad.json", "{\"atoms\":[[1.0,1.0]]}");
    auto rb = run_cli({"pickands", "validate", bad.path});
    CHECK(rb.code == 2);
    CHECK(rb.out.empty());
    json msg = json::parse(rb.err);
    CHECK(msg["error"].get<std::string>().find("measure invalid") != std::string::npos);
    CHECK(msg["error"].get<std::string>().find("mean residual") != std::string::npos);
}

TEST_CASE("pickands to-function: CSV shape and boundary values") {
    TempSpec spec("cli_measure_fn.json", kThreeAtomMeasure);
    auto r = run_cli({"pickands", "to-function", spec.path, "--grid", "10"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 12); // header + 11 grid rows
    std::istringstream in(r.out);
    std::string header, first;
    std::getline(in, header);
    CHECK(header == "t,A,DplusA,GA");
    std::getline(in, first);
    // t = 0: A = 1 and the one-sided slope is -1 left of the first atom
    CHECK(first.rfind("0,1,", 0) == 0);
}

TEST_CASE("evc eval: point mode emits JSON with the closed-form values") {
    TempSpec spec("cli_evc_eval.json", kThreeAtomEvc);
    auto r = run_cli({"evc", "eval", spec.path, "-x", "0.5", "-y", "0.5"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    double cdf = std::pow(0.25, 0.6);
    CHECK(std::fabs(rep["cdf"].get<double>() - cdf) <= 1e-14);
    CHECK(std::fabs(rep["kernel"].get<double>() - cdf / 0.5 * 0.9) <= 1e-14);
}

TEST_CASE("evc eval: section mode emits a CSV sweep") {
    auto r = run_cli({"evc", "eval", "Pi", "-x", "0.25", "--grid", "8"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 10);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "y,cdf,kernel");
}

TEST_CASE("evc sample: reproducible, seeded, n-controlled") {
    auto a = run_cli({"evc", "sample", "M", "-n", "5", "--seed", "12"});
    REQUIRE(a.code == 0);
    CHECK(count_lines(a.out) == 6);
    auto b = run_cli({"evc", "sample", "M", "-n", "5", "--seed", "12"});
    CHECK(a.out == b.out);
    auto c = run_cli({"evc", "sample", "M", "-n", "5", "--seed", "13"});
    CHECK(a.out != c.out);

    auto missing = run_cli({"evc", "sample", "M", "-n", "5"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("seed") != std::string::npos);
}

TEST_CASE("evc mass-decomp: atom table and the split") {
    TempSpec spec("cli_evc_mass.json", kThreeAtomEvc);
    auto r = run_cli({"evc", "mass-decomp", spec.path});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    REQUIRE(rep["per_atom"].size() == 3);
    CHECK(std::fabs(rep["per_atom"][1]["mass"].get<double>() - 0.5) <= 1e-12);
    CHECK(std::fabs(rep["discrete"].get<double>() - 0.7) <= 1e-12);
    CHECK(std::fabs(rep["rest"].get<double>() - 0.3) <= 1e-12);
}

TEST_CASE("evc support: endpoints and the band at x") {
    TempSpec spec("cli_evc_support.json", kThreeAtomEvc);
    auto r = run_cli({"evc", "support", spec.path, "-x", "0.5"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["L"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep["R"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(rep["y_lo"].get<double>() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(rep["y_hi"].get<double>() ==
          doctest::Approx(std::pow(2.0, -1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("metric: builtin pairs with known distances") {
    auto r = run_cli({"metric", "M", "W"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["metric"] == "d_inf");
    CHECK(rep["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(!rep.contains("p"));

    auto r1 = run_cli({"metric", "M", "Pi", "--metric", "dp", "-p", "1"});
    json rep1 = json::parse(r1.out);
    CHECK(rep1["metric"] == "d_p");
    CHECK(rep1["p"].get<double>() == 1.0);
    CHECK(rep1["value"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(2e-3));

    auto ri = run_cli({"metric", "M", "Pi", "--metric", "dp", "-p", "inf"});
    json repi = json::parse(ri.out);
    CHECK(repi["p"] == "inf");
    CHECK(repi["value"].get<double>() == doctest::Approx(0.5).epsilon(2e-3));

    auto bad = run_cli({"metric", "M", "Pi", "--metric", "bogus"});
    CHECK(bad.code == 2);
}

TEST_CASE("approx: emits a checkerboard spec that reproduces the library call") {
    auto r = run_cli({"approx", "M", "-N", "4"});
    REQUIRE(r.code == 0);
    copulab::Copula parsed = copulab::copula_from_json_text(r.out);
    auto direct = copulab::checkerboard_approx(copulab::minimum_copula(), 4,
                                               copulab::independence());
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j)
            CHECK(parsed.cdf(i / 8.0, j / 8.0) ==
                  doctest::Approx(direct.cdf(i / 8.0, j / 8.0)).epsilon(1e-14));
}

TEST_CASE("diagnose derivative: single point JSON and CSV grid") {
    auto r = run_cli({"diagnose", "derivative", "M", "-x", "0.3", "-y", "0.3"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    REQUIRE(rep["rows"].size() == 1);
    CHECK(rep["rows"][0]["gap"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));

    auto rc = run_cli({"diagnose", "derivative", "Pi", "-x", "0.5", "--csv",
                       "--grid", "10"});
    REQUIRE(rc.code == 0);
    CHECK(count_lines(rc.out) == 10); // header + interior points 1..9
    std::istringstream in(rc.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "y,plus,minus,gap");
}

TEST_CASE("diagnose scan: finds the three analytic jump points") {
    TempSpec spec("cli_scan.json", kThreeAtomEvc);
    auto r = run_cli({"diagnose", "scan", spec.path, "-x", "0.5"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    REQUIRE(rep["points"].size() == 3);
    for (const auto& p : rep["points"]) CHECK(p["analytic"].get<bool>());
    CHECK(rep["points"][0]["y"].get<double>() == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("diagnose schwarz: smooth copula has negligible residual") {
    auto r = run_cli({"diagnose", "schwarz", "Pi"});
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["max_residual"].get<double>() <= 1e-9);
    CHECK(rep["grid_n"].get<int>() == 21);
}

TEST_CASE("dump-spec: canonical echo re-parses to the same object") {
    TempSpec spec("cli_dump.json", kThreeAtomEvc);
    auto r = run_cli({"evc", "eval", spec.path, "-x", "0.5", "--dump-spec"});
    REQUIRE(r.code == 0);
    std::string canonical = r.out;
    TempSpec spec2("cli_dump2.json", canonical);
    auto r2 = run_cli({"evc", "eval", spec2.path, "-x", "0.5", "--dump-spec"});
    CHECK(r2.out == canonical);
}

TEST_CASE("output redirection: -o writes the file, bad paths exit 1") {
    const std::string path = "cli_out_tmp.json";
    auto r = run_cli({"metric", "M", "W", "-o", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    json rep = json::parse(in);
    CHECK(rep["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
    in.close();
    std::remove(path.c_str());

    auto bad = run_cli({"metric", "M", "W", "-o", "/nonexistent_dir_xyz/out.json"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("internal error") != std::string::npos);
}

TEST_CASE("argument errors and help paths") {
    auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("pickands") != std::string::npos);
    CHECK(help.out.find("diagnose") != std::string::npos);

    auto none = run_cli({});
    CHECK(none.code == 2);

    auto bogus = run_cli({"frobnicate"});
    CHECK(bogus.code == 2);
    CHECK(!bogus.err.empty());
    CHECK(json::parse(bogus.err).contains("error"));

    TempSpec badjson("cli_badjson.json", "{not json");
    auto parse_fail = run_cli({"evc", "eval", badjson.path, "-x", "0.5"});
    CHECK(parse_fail.code == 2);
    CHECK(json::parse(parse_fail.err)["error"].get<std::string>().find("JSON") !=
          std::string::npos);
}
