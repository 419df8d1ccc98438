#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "flmlab/bodyspec.hpp"
#include "flmlab/config.hpp"
#include "flmlab/csv.hpp"
#include "flmlab/errors.hpp"
#include "flmlab/fit.hpp"
#include "flmlab/harness.hpp"
#include "flmlab/params.hpp"

using namespace flmlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("flmlab-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("number parsing") {
    CHECK(parse_long("42", "x") == 42);
    CHECK_THROWS_AS(parse_long("4x", "x"), InvalidArgument);
    CHECK(parse_double("0.25", "x") == 0.25);
    CHECK_THROWS_AS(parse_double("", "x"), InvalidArgument);
    CHECK(parse_int_list("3,5,9", "x") == std::vector<int>{3, 5, 9});
    CHECK(parse_int_list("16..128", "x") == std::vector<int>{16, 32, 64, 128});
    CHECK(format_shortest(0.1) == "0.1");
    CHECK(parse_double(format_full(1.0 / 3.0), "x") == 1.0 / 3.0);
}

TEST_CASE("config") {
    const Config c = Config::parse("# limits\nenum.max_dim = 6\n\nmc.samples=500\nenum.max_dim=7\n");
    CHECK(c.enum_limits().max_dim == 7);
    CHECK(c.mc_samples() == 500u);
    CHECK(c.mc_sigmas() == 3.0);
    CHECK_THROWS(Config::parse("no equals sign"));
    CHECK_THROWS(Config::parse("mc.samples=abc").mc_samples());
    Config d;
    d.set("mc.samples", "9");
    Config e = c;
    e.merge(d);
    CHECK(e.mc_samples() == 9u);
    CHECK_THROWS_AS(Config::load("/nonexistent/flmlab.cfg"), IoError);
}

TEST_CASE("csv") {
    CsvTable t({"a", "b"});
    t.add_row({CsvTable::cell(0.1), CsvTable::cell("x,y")});
    t.add_row({CsvTable::cell(3), CsvTable::cell(true)});
    CHECK(t.str() == "a,b\n0.10000000000000001,\"x,y\"\n3,1\n");
    CHECK_THROWS(t.add_row({"1"}));
    CHECK(checksum_hex("") == "cbf29ce484222325");
}

TEST_CASE("body specs round trip") {
    for (const char* s : {"cube:4", "cross:5", "simplex:6", "hanner:a=0.5,dim=8", "geom:c=0.6,beta=0.4,n=64",
                          "cube:3,scale=2.5"}) {
        const BodySpec b = parse_body_spec(s);
        CHECK(to_string(b) == s);
        CHECK(parse_body_spec(to_string(b)) == b);
    }
    CHECK_THROWS(parse_body_spec("sphere:3"));
    CHECK_THROWS(parse_body_spec("cube:0"));
    CHECK_THROWS(parse_body_spec("hanner:a=0.5"));
    const StandardBody c = make_standard(parse_body_spec("cube:3,scale=2"));
    CHECK(c.R == doctest::Approx(2 * std::sqrt(3.0)));
    Vector x = Vector::Ones(3);
    CHECK(c.support(x) == doctest::Approx(6.0));
    CHECK(c.gauge(x) == doctest::Approx(0.5));
    // Too big to materialize: counts only.
    const StandardBody big = make_standard(parse_body_spec("hanner:a=0.5,dim=1024"));
    CHECK_FALSE(big.has_oracles());
    CHECK(big.counts.has_value());
}

TEST_CASE("slope fits") {
    std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
    const SlopeFit f = fit_loglog(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    for (double& v : y) v *= 7.5;
    CHECK(fit_loglog(x, y).slope == doctest::Approx(2.0));
    CHECK_THROWS(fit_loglog({1, 2}, {1, 2}));
    CHECK_THROWS(fit_loglog({1, 2, 3}, {1, -2, 3}));
    CHECK(fit_linear({0, 1, 2}, {1, 3, 5}).slope == doctest::Approx(2.0));
}

TEST_CASE("registry") {
    CHECK(registry().size() >= 19);
    for (const auto& e : registry()) {
        CHECK_FALSE(e.module.empty());
        CHECK(e.run);
    }
    CHECK_THROWS_AS(find_experiment("nope"), UnknownExperiment);
    CHECK_THROWS_AS(execute({"cap-grid", {{"bogus", "1"}}, 1, ""}), InvalidArgument);
}

TEST_CASE("run writes CSV and summary; report checks them") {
    const fs::path dir = scratch_dir("run");
    const std::string csv = (dir / "cap.csv").string();
    const RunOutcome o = run({"cap-grid", {{"nmax", "10"}}, 7, csv});
    CHECK(o.result.pass());
    CHECK(fs::exists(csv));
    CHECK(fs::exists(summary_path_for(csv)));
    const std::string first = read_file(csv);
    run({"cap-grid", {{"nmax", "10"}}, 7, csv});
    CHECK(read_file(csv) == first);

    const ReportTable t = report({summary_path_for(csv)});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].criterion == 4);
    CHECK(t.all_pass());
    CHECK(report({}).rows.empty());

    std::ofstream(csv, std::ios::app) << "tampered\n";
    CHECK_THROWS_AS(report({summary_path_for(csv)}), ChecksumMismatch);
    CHECK_THROWS_AS(report({(dir / "missing.json").string()}), IoError);

    // A failing run writes nothing.
    const std::string bad = (dir / "bad.csv").string();
    CHECK_THROWS(run({"cap-grid", {{"nmax", "x"}}, 7, bad}));
    CHECK_FALSE(fs::exists(bad));
}
