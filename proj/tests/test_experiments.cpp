#include "apzeta/errors.hpp"
#include "apzeta/experiments.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace apzeta;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("apzeta_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const fs::path& fixture_dir, const fs::path& out) {
    const std::string cmd = "APZETA_FIXTURE_DIR='" + fixture_dir.string() + "' '" + APZETA_CLI + "' " +
                            args + " > '" + out.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("fixture JSON round trip and layout") {
    const auto fixture = make_fixture(generate_representation(24));
    CHECK(fixture.source == "paper");
    CHECK(fixture.vanishing_order == 8);
    const std::string text = fixture_to_json(fixture);
    CHECK(text.back() == '\n');
    CHECK(text.find("\"b\"") > text.find("\"a\""));
    CHECK(text.find("\"-868\"") != std::string::npos);
    CHECK(fixture_from_json(text) == fixture);
    CHECK(make_fixture(generate_representation(12)).source == "generated");
    CHECK(make_fixture(generate_representation(2)).source == "paper");
    CHECK_THROWS_AS(generate_representation(9), MethodNotApplicable);
}

TEST_CASE("malformed fixtures are rejected") {
    CHECK_THROWS_AS(fixture_from_json("{"), PreconditionError);
    CHECK_THROWS_AS(fixture_from_json(R"({"m": 6})"), PreconditionError);
    CHECK_THROWS_AS(fixture_from_json(
                        R"({"m":6,"divisors":[1,2,3,6],"a":[1,-5,5,-1],"b":["1"],"vanishing_order":4,"source":"paper"})"),
                    PreconditionError);
    CHECK_THROWS_AS(fixture_from_json(
                        R"({"m":6,"divisors":[1,2,3,6],"a":["1/2"],"b":["1"],"vanishing_order":4,"source":"paper"})"),
                    PreconditionError);
    auto f = make_fixture(generate_representation(6));
    f.vanishing_order = 5;
    CHECK_THROWS_AS(representation_from_fixture(f), PreconditionError);
    f = make_fixture(generate_representation(6));
    f.b[0] = Rational(2);
    CHECK_THROWS_AS(representation_from_fixture(f), PreconditionError);
}

TEST_CASE("stored fixtures regenerate byte for byte") {
    for (std::uint64_t m : {2, 6, 24, 60}) {
        const auto stored = read_text_file(fixture_path(APZETA_DEFAULT_FIXTURE_DIR, m));
        CHECK(stored == fixture_to_json(make_fixture(generate_representation(m))));
        const auto rep = representation_from_fixture(fixture_from_json(stored));
        CHECK(rep.weights.b() == generate_representation(m).weights.b());
    }
}

TEST_CASE("parsers") {
    CHECK(parse_complex("0.5,100000") == Complex(0.5, 1e5));
    CHECK(parse_complex(" 2 , -3.5 ") == Complex(2.0, -3.5));
    CHECK(parse_complex("2") == Complex(2.0, 0.0));
    CHECK_THROWS_AS(parse_complex("1,2,3"), PreconditionError);
    CHECK_THROWS_AS(parse_complex("a,b"), PreconditionError);
    CHECK_THROWS_AS(parse_complex("nan,0"), PreconditionError);

    const Grid g = parse_grid("5000:5500000:250");
    CHECK(g.size() == 21981);
    CHECK_THROWS_AS(parse_grid("1:2"), PreconditionError);
    CHECK_THROWS_AS(parse_grid("1:10:0"), PreconditionError);
    CHECK_THROWS_AS(parse_grid("-1:10:1"), PreconditionError);

    CHECK(parse_targets("1e-3,1e-4,1e-5") == std::vector<double>{1e-3, 1e-4, 1e-5});
    CHECK_THROWS_AS(parse_targets("1e-3,1e-2"), PreconditionError);
    CHECK_THROWS_AS(parse_targets("1e-3,1e-3"), PreconditionError);
    CHECK_THROWS_AS(parse_targets("0"), PreconditionError);

    CHECK(parse_mode("par") == SummationMode::parallel);
    CHECK_THROWS_AS(parse_mode("fast"), PreconditionError);
}

TEST_CASE("CSV schema") {
    CHECK(csv_header() == "m,t,sigma,N,target,value_re,value_im,abs_error,predicted_error,status");
    CsvRow row;
    row.m = 6;
    row.s = {0.5, 1e4};
    row.N = 2000;
    row.target = 1e-3;
    row.value = {1.0, -2.0};
    row.abs_error = 0.5;
    CHECK(format_csv_row(row) == "6,10000,0.5,2000,0.001,1,-2,0.5,,ok");
}

TEST_CASE("eval command") {
    std::ostringstream out;
    CHECK(cmd_eval({6, {2.0, 0.0}, 10000}, out) == exit_ok);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["zeta"][0].get<double>() == doctest::Approx(1.6449340668));
    CHECK(j["measured_error"].get<double>() < 1e-10);
    CHECK(j["predicted_error"].is_number());

    std::ostringstream out2;
    cmd_eval({6, {0.5, 1e4}, 2000}, out2);
    CHECK(nlohmann::json::parse(out2.str())["measured_error"].get<double>() < 1e-3);

    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_eval({6, {0.0, 0.0}, 100}, sink), DenominatorNearZero);
}

TEST_CASE("min-n command") {
    std::ostringstream out;
    MinNCommand cmd;
    cmd.m = 60;
    cmd.t = 1e4;
    cmd.targets = {1e-3};
    cmd.grid = make_grid(10, 1000, 10);
    CHECK(cmd_min_n(cmd, out) == exit_ok);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == csv_header());
    CHECK(lines[1].rfind("60,10000,0.5,", 0) == 0);
    CHECK(lines[1].substr(lines[1].size() - 3) == ",ok");

    std::ostringstream again;
    cmd_min_n(cmd, again);
    CHECK(again.str() == out.str());

    cmd.targets = {1e-3, 1e-9};
    cmd.grid = make_grid(10, 300, 10);
    std::ostringstream exhausted;
    CHECK(cmd_min_n(cmd, exhausted) == exit_grid_exhausted);
    CHECK(lines_of(exhausted.str())[2].find(",exhausted") != std::string::npos);
}

TEST_CASE("curve command") {
    std::ostringstream out;
    CurveCommand cmd;
    cmd.m = 2;
    cmd.s = {2.0, 0.0};
    cmd.grid = make_grid(10, 100, 10);
    CHECK(cmd_curve(cmd, out) == exit_ok);
    CHECK(lines_of(out.str()).size() == 11);

    CurveCommand bad = cmd;
    bad.s = {-0.5, 3.0};
    bad.explore = true;
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_curve(bad, sink), PreconditionError);
}

TEST_CASE("verify suites pass on the shipped fixtures") {
    for (const auto& name : suite_names()) {
        const auto r = run_suite(name, APZETA_DEFAULT_FIXTURE_DIR);
        INFO(name << ": " << r.detail);
        CHECK(r.passed);
    }
    CHECK_THROWS_AS(run_suite("nope", APZETA_DEFAULT_FIXTURE_DIR), PreconditionError);
}

TEST_CASE("tampered fixture fails the vanishing and fixture suites") {
    const fs::path dir = scratch_dir("tamper");
    for (std::uint64_t m : {2, 6, 24, 60}) {
        fs::copy_file(fixture_path(APZETA_DEFAULT_FIXTURE_DIR, m), fixture_path(dir, m));
    }
    CHECK(run_suite("vanishing", dir).passed);
    std::string text = read_text_file(fixture_path(dir, 24));
    auto j = nlohmann::ordered_json::parse(text);
    CHECK(j["b"][15] == "-868");
    j["b"][15] = "-867";
    write_text_file(fixture_path(dir, 24), j.dump(2) + "\n");
    const auto r = run_suite("vanishing", dir);
    CHECK_FALSE(r.passed);
    CHECK(r.detail.find("m24.json") != std::string::npos);
    CHECK_FALSE(run_suite("fixtures", dir).passed);
    fs::remove_all(dir);
}

TEST_CASE("manifest") {
    const Manifest man = load_manifest(manifest_path());
    CHECK(man.sigma == 0.5);
    CHECK(man.min_n_cells.size() == 48);
    std::size_t acceptance = 0;
    for (const auto& c : man.min_n_cells) {
        if (c.m != 2 && c.desk_scale) ++acceptance;
        if (c.t >= 1e6) {
            CHECK_FALSE(c.desk_scale);
            CHECK_FALSE(c.excluded_reason.empty());
        }
        if (c.m == 2 && c.t == 1e7 && c.target == 1e-5) CHECK(c.published_N == 7300000000ULL);
    }
    CHECK(acceptance == 18);
    CHECK(man.scaling_cells.size() == 12);
    CHECK(man.scaling_t == 1e5);
    CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), PreconditionError);
}

TEST_CASE("command-line exit codes") {
    const fs::path dir = scratch_dir("cli");
    const fs::path out = dir / "out.txt";

    CHECK(run_cli("coeffs --m 24", dir, out) == 0);
    const std::string first = read_text_file(fixture_path(dir, 24));
    CHECK(first == read_text_file(fixture_path(APZETA_DEFAULT_FIXTURE_DIR, 24)));
    CHECK(run_cli("coeffs --m 24", dir, out) == 0);
    CHECK(read_text_file(fixture_path(dir, 24)) == first);
    const auto coeffs = nlohmann::json::parse(read_text_file(out));
    CHECK(coeffs["rank"] == 5);
    CHECK(coeffs["nullity"] == 3);

    CHECK(run_cli("coeffs --m 9", dir, out) == 2);
    CHECK(read_text_file(out).find("MethodNotApplicable") != std::string::npos);
    CHECK(run_cli("eval --m 6 --s 0,0 --n 100", dir, out) == 3);
    CHECK(read_text_file(out).find("DenominatorNearZero") != std::string::npos);
    CHECK(run_cli("eval --m 6 --s 2,0 --n 1000 --mode par", dir, out) == 0);
    CHECK(run_cli("eval --m 6 --s 2,0 --n 0", dir, out) == 2);
    CHECK(run_cli("eval --m 6 --s x --n 10", dir, out) == 2);
    CHECK(run_cli("min-n --m 6 --t 10000 --targets 1e-6 --grid 10:100:10", dir, out) == 4);
    CHECK(run_cli("min-n --m 6 --t 10000 --targets 1e-3 --grid 10:5000:10", dir, out) == 0);
    CHECK(run_cli("curve --m 2 --s 2,0 --grid 10:50:10 --out '" + (dir / "c.csv").string() + "'", dir, out) == 0);
    CHECK(lines_of(read_text_file(dir / "c.csv")).size() == 6);
    CHECK(run_cli("verify --suite determinant", dir, out) == 0);
    CHECK(run_cli("verify --suite nope", dir, out) == 2);
    CHECK(run_cli("bogus", dir, out) == 2);
    fs::remove_all(dir);
}
