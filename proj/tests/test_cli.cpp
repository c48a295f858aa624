#include "doctest.h"

#include <boost/math/special_functions/beta.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "selberg/cli.hpp"
#include "selberg/errors.hpp"

using namespace selberg;
using namespace selberg::cli;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

// CSV body (comment lines dropped) as rows of fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& line : split(text, '\n')) {
        if (!line.empty() && line[0] != '#') rows.push_back(split(line, ','));
    }
    return rows;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("grid parsing") {
    const Grid g = parse_grid("0:1:5");
    CHECK(g.points == 5);
    const auto v = g.values();
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 0.0);
    CHECK(v[2] == 0.5);
    CHECK(v.back() == 1.0);
    CHECK_THROWS_AS(parse_grid("0:1:1"), PreconditionError);
    CHECK_THROWS_AS(parse_grid("0:1"), PreconditionError);
    CHECK_THROWS_AS(parse_grid("0:1:2.5"), PreconditionError);
    CHECK_THROWS_AS(parse_grid("a:1:3"), PreconditionError);
}

TEST_CASE("argument parsing") {
    const JobSpec s = parse_args({"dist", "--N", "5", "--lambda", "1/3", "--l1", "1", "--l2", "1",
                                  "--grid", "0:1:11", "--format", "csv"});
    CHECK(s.command == "dist");
    CHECK(s.params.N == 5);
    REQUIRE(s.params.lambda_rational);
    CHECK(s.params.lambda_rational->den == 3);
    CHECK(s.grid->points == 11);
    CHECK(s.format == "csv");
    CHECK_THROWS_AS(parse_args({"dist", "--N", "2", "--tol", "0.5"}), PreconditionError);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"--help"}).code == kOk);
    CHECK(run_cli({"--version"}).out.find("1.0.0") != std::string::npos);
    CHECK(run_cli({"nonsense"}).code == kValidation);
    CHECK(run_cli({"selberg", "--N", "0"}).code == kValidation);
    CHECK(run_cli({"selberg", "--N", "2", "--tol", "0"}).code == kValidation);
    CHECK(run_cli({"eval", "--N", "2", "--grid", "0:1:1"}).code == kValidation);

    const Run pole = run_cli({"selberg", "--N", "1", "--lambda", "1", "--l1", "-1"});
    CHECK(pole.code == kNumerical);
    CHECK(pole.err.find("PoleError") != std::string::npos);

    const Run io = run_cli({"selberg", "--N", "2", "--output", "/nonexistent-dir/x.json"});
    CHECK(io.code == kIo);
}

TEST_CASE("selberg command carries provenance") {
    const Run r = run_cli({"selberg", "--N", "2", "--lambda", "1/2", "--l1", "0", "--l2", "0"});
    REQUIRE(r.code == kOk);
    const json j = json::parse(r.out);
    CHECK(j["program"] == "selberg_fuchs");
    CHECK(j["version"] == "1.0.0");
    CHECK(j["params"]["N"] == 2);
    CHECK(j["params"]["lambda_exact"] == "1/2");
    CHECK(j["job"]["command"] == "selberg");
    CHECK(j["results"][0]["value"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(j.contains("diagnostics"));
}

TEST_CASE("dist produces the median-of-five closed form") {
    const Run r = run_cli({"dist", "--N", "5", "--lambda", "1/3", "--l1", "1", "--l2", "1",
                           "--grid", "0:1:401", "--format", "csv"});
    REQUIRE(r.code == kOk);
    CHECK(r.out.rfind("# program: selberg_fuchs 1.0.0", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 402);
    CHECK(rows[0] == std::vector<std::string>{"x", "p(0;x)", "p(1;x)", "p(2;x)", "p(3;x)", "p(4;x)"});
    const double B = boost::math::beta(8.0, 8.0);
    double worst = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        worst = std::max(worst, std::abs(std::stod(rows[i][3]) - std::pow(x * (1 - x), 7) / B));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("zeros of the figure regime") {
    const Run r = run_cli({"zeros", "--N", "10", "--lambda", "3", "--l1", "9", "--l2", "9", "--nu", "20"});
    REQUIRE(r.code == kOk);
    const json j = json::parse(r.out);
    const auto& res = j["results"];
    REQUIRE(res.size() == 200);
    std::vector<std::complex<double>> z;
    for (const auto& row : res) z.emplace_back(row["re"].get<double>(), row["im"].get<double>());
    for (const auto& a : z) {
        double best = 1e300;
        for (const auto& b : z) best = std::min(best, std::abs(b - std::conj(a)));
        CHECK(best <= 1e-8);
    }
    CHECK(j["diagnostics"]["max_residual"].get<double>() <= 1e-8);
}

TEST_CASE("identical jobs give identical bytes") {
    const std::vector<std::string> mc = {"oracle", "--N", "4", "--lambda", "0.6", "--l1", "0.3",
                                         "--l2", "0.5", "--x", "0.4", "--q", "2", "--samples",
                                         "20000", "--seed", "9"};
    CHECK(run_cli(mc).out == run_cli(mc).out);
    const std::vector<std::string> grid = {"eval", "--N", "3", "--lambda", "0.45", "--l1", "0.2",
                                           "--grid", "0.05:0.95:19", "--format", "csv"};
    CHECK(run_cli(grid).out == run_cli(grid).out);
}

TEST_CASE("config file and output file") {
    const std::string cfg = temp_path("selberg_fuchs_test.cfg");
    const std::string out = temp_path("selberg_fuchs_test.csv");
    {
        std::ofstream f(cfg);
        f << "N = 2\nlambda = 1/2\nl1 = 0.5\nl2 = 1.5\nx = 0.3\nformat = csv\n";
    }
    const Run r = run_cli({"eval", "--config", cfg, "--output", out});
    CHECK(r.code == kOk);
    CHECK(r.out.empty());
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    const auto rows = csv_rows(ss.str());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "x");
    CHECK(std::stod(rows[1][0]) == 0.3);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("remaining commands run") {
    const std::vector<std::vector<std::string>> jobs = {
        {"series", "--N", "3", "--lambda", "0.47", "--l1", "0.2", "--k", "2", "--L", "10"},
        {"moments", "--N", "2", "--lambda", "0.7", "--l1", "0.3", "--mu", "0.4", "--grid", "0.1:0.9:5"},
        {"asymptotics", "--N", "2", "--lambda", "0.7", "--l1", "0.3", "--mu", "0.4"},
        {"asymptotics", "--N", "2", "--lambda", "0.71", "--l1", "0.3", "--k", "1"},
        {"poly", "--N", "3", "--lambda", "0.7", "--nu", "2"},
        {"poly", "--N", "3", "--lambda", "0.7", "--nu", "2", "--grid", "1:2:3"},
        {"monodromy", "--N", "3", "--lambda", "0.43", "--l1", "0.2", "--alpha", "0.9"},
        {"oracle", "--N", "2", "--lambda", "0.5", "--l1", "0.2", "--x", "0.3", "--q", "1"},
    };
    for (const auto& a : jobs) {
        const Run r = run_cli(a);
        INFO(a[0], " ", r.err);
        CHECK(r.code == kOk);
        CHECK_FALSE(json::parse(r.out)["results"].empty());
    }
    // missing required flag
    CHECK(run_cli({"moments", "--N", "2", "--x", "0.3"}).code == kValidation);
}

TEST_CASE("csv writes non-finite values") {
    const Run r = run_cli({"dist", "--N", "1", "--l1", "-0.5", "--grid", "0:1:3", "--format", "csv"});
    REQUIRE(r.code == kOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows[1][1] == "inf");
    const Run j = run_cli({"dist", "--N", "1", "--l1", "-0.5", "--grid", "0:1:3"});
    CHECK(json::parse(j.out)["results"][0]["p(0;x)"].is_null());
}
