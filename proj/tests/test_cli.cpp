#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "besselid/errors.hpp"
#include "besselid/special.hpp"
#include "cli_commands.hpp"
#include "config.hpp"
#include "identities.hpp"

using namespace besselid;
using namespace besselid::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "") {
    const auto path = std::filesystem::temp_directory_path() / ("besselid_test_" + name);
    std::ofstream(path) << content;
    return path;
}

double value_line(const std::string& out) {
    std::istringstream in(out);
    std::string key;
    double v = std::nan("");
    in >> key >> v;
    return key == "value" ? v : std::nan("");
}

int binary_exit(const std::string& args) {
    const std::string cmd = std::string(BESSELID_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Restores an environment variable on scope exit.
struct EnvGuard {
    std::string name;
    explicit EnvGuard(std::string n) : name(std::move(n)) {}
    ~EnvGuard() { unsetenv(name.c_str()); }
};

} // namespace

TEST_CASE("format_number uses 17 significant digits") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(1e-300) == "1e-300");
}

TEST_CASE("parse_grid") {
    CHECK(parse_grid("1,2.5,3", 1.0) == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(parse_grid("0..1:0.25", 1.0) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_grid("1..3", 1.0) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(parse_grid("0.5..20", 0.5).size() == 40);
    CHECK(parse_grid("7", 1.0) == std::vector<double>{7.0});
    CHECK_THROWS_AS(parse_grid("3..1", 1.0), DomainError);
    CHECK_THROWS_AS(parse_grid("0..1:0", 1.0), DomainError);
    CHECK_THROWS_AS(parse_grid("1,,2", 1.0), DomainError);
    CHECK_THROWS_AS(parse_grid("x", 1.0), DomainError);
    CHECK_THROWS_AS(parse_grid("", 1.0), DomainError);
    CHECK_THROWS_AS(parse_grid("inf", 1.0), DomainError);
}

TEST_CASE("SweepGrid enumerates the cartesian product, last parameter fastest") {
    SweepGrid g{{"a", "b"}, {{1.0, 2.0}, {10.0, 20.0, 30.0}}};
    REQUIRE(g.size() == 6);
    CHECK(g.point(0) == std::map<std::string, double>{{"a", 1.0}, {"b", 10.0}});
    CHECK(g.point(2) == std::map<std::string, double>{{"a", 1.0}, {"b", 30.0}});
    CHECK(g.point(3) == std::map<std::string, double>{{"a", 2.0}, {"b", 10.0}});
}

TEST_CASE("registry holds the twelve identities") {
    const std::vector<std::string> names = {
        "rep-vs-series-J", "rep-vs-series-I", "lipschitz",     "ffo-vs-numeric",
        "special-cases",   "k-triangle",      "basset-vs-exp", "gaussian-kernel",
        "hardy-original",  "hardy-variant",   "duplication",   "form-equivalence"};
    CHECK(identity_registry().size() == names.size());
    for (const auto& n : names) CHECK(find_identity(n) != nullptr);
    CHECK(find_identity("nope") == nullptr);
    CHECK(build_grid(*find_identity("form-equivalence"), {}).size() == 1000);
    CHECK(build_grid(*find_identity("gaussian-kernel"), {}).size() == 36);
}

TEST_CASE("pass rule") {
    const Identity& id = *find_identity("duplication");
    const SweepGrid grid = build_grid(id, {{"m", "3"}});
    const IdentityReport ok = run_identity(id, grid, QuadSpec{}, PassRule{1e-12, 1.0, 0.0});
    CHECK(ok.all_passed());
    // Nothing can pass a zero allowance unless it is exact.
    const IdentityReport strict = run_identity(id, grid, QuadSpec{}, PassRule{0.0, 0.0, 0.0});
    for (const auto& rec : strict.records) CHECK(rec.pass == (rec.abs_err == 0.0));
    // A generous floor passes regardless.
    const IdentityReport floor = run_identity(id, grid, QuadSpec{}, PassRule{0.0, 0.0, 1.0});
    CHECK(floor.all_passed());
}

TEST_CASE("grid validation happens before evaluation") {
    const Identity& id = *find_identity("lipschitz");
    CHECK_THROWS_AS(build_grid(id, {{"z", "1"}}), DomainError);
    const SweepGrid bad = build_grid(id, {{"a", "1"}, {"b", "1,0"}});
    CHECK_THROWS_AS(run_identity(id, bad, QuadSpec{}, id.rule), DomainError);
}

TEST_CASE("config parsing") {
    std::istringstream in("# tolerances\nrel_tol = 1e-8\n\n abs_tol=1e-10 # trailing\n"
                          "max_depth = 12\ntol_mult = 4\nabs_floor = 1e-7\nmax_evals = 5000\n");
    const Overrides o = parse_config(in, "mem");
    CHECK(*o.rel_tol == 1e-8);
    CHECK(*o.abs_tol == 1e-10);
    CHECK(*o.max_depth == 12);
    CHECK(*o.max_evals == 5000);
    CHECK(*o.tol_mult == 4.0);
    CHECK(*o.abs_floor == 1e-7);
    const QuadSpec s = o.apply(QuadSpec{});
    CHECK(s.rel_tol == 1e-8);
    CHECK(s.max_depth == 12);

    std::istringstream unknown("speed = 3\n");
    CHECK_THROWS_AS(parse_config(unknown, "mem"), ConfigError);
    std::istringstream bad_number("rel_tol = fast\n");
    CHECK_THROWS_AS(parse_config(bad_number, "mem"), ConfigError);
    std::istringstream no_eq("rel_tol 1e-8\n");
    CHECK_THROWS_AS(parse_config(no_eq, "mem"), ConfigError);
}

TEST_CASE("config layering: flags over file over defaults") {
    Overrides file;
    file.rel_tol = 1e-6;
    file.tol_mult = 3.0;
    Overrides flags;
    flags.tol_mult = 5.0;
    const Overrides merged = file.layered_under(flags);
    CHECK(*merged.rel_tol == 1e-6);
    CHECK(*merged.tol_mult == 5.0);
    CHECK_FALSE(merged.abs_floor.has_value());
}

TEST_CASE("config file from the environment") {
    const auto path = temp_file("env.cfg", "tol_mult = 7\n");
    const auto other = temp_file("flag.cfg", "tol_mult = 9\n");
    EnvGuard guard(kConfigEnvVar);
    setenv(kConfigEnvVar, path.c_str(), 1);
    CHECK(*resolve_config("").tol_mult == 7.0);
    CHECK(*resolve_config(other.string()).tol_mult == 9.0);
    setenv(kConfigEnvVar, "/nonexistent/besselid.cfg", 1);
    CHECK_THROWS_AS(resolve_config(""), ConfigError);
}

TEST_CASE("eval prints value, estimate and evaluation count") {
    Run r = run({"eval", "j0-rep", "--x", "1"});
    CHECK(r.code == 0);
    CHECK(std::abs(value_line(r.out) - 0.7651976866) <= 1e-10);
    CHECK(r.out.find("error_estimate ") != std::string::npos);
    CHECK(r.out.find("evals ") != std::string::npos);

    r = run({"eval", "k-half", "--x", "1"});
    CHECK(r.code == 0);
    CHECK(std::abs(value_line(r.out) - 0.4610685044) <= 1e-10);
    CHECK(r.out.find("error_estimate 0\n") != std::string::npos);

    r = run({"eval", "laplace-special", "--alpha", "1", "--a", "3", "--b", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("value 0.5\n", 0) == 0);

    r = run({"eval", "i0-rep", "--x", "10", "--scaled"});
    CHECK(std::abs(value_line(r.out) - 0.1278333371634286) <= 1e-13);
    r = run({"eval", "k-basset", "--alpha", "0.5", "--z", "2"});
    CHECK(std::abs(value_line(r.out) - 0.1199377719680614) <= 1e-9);
}

TEST_CASE("eval errors map to exit code 2") {
    Run r = run({"eval", "j0-rep"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--x") != std::string::npos);
    CHECK(run({"eval", "nonsense", "--x", "1"}).code == 2);
    r = run({"eval", "j-reduction", "--alpha", "0", "--x", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("alpha") != std::string::npos);
    CHECK(run({"eval", "i0-rep", "--x", "40"}).code == 2);
    CHECK(run({"eval", "laplace-special", "--alpha", "1.5", "--a", "1", "--b", "1"}).code == 2);
    CHECK(run({"eval", "j0-rep", "--x", "abc"}).code == 2);
    CHECK(run({"eval", "j0-rep", "--x", "1", "--rel-tol", "0"}).code == 2);
}

TEST_CASE("verify: examples") {
    Run r = run({"verify", "lipschitz", "--a", "0.5,1,2,5", "--b", "0.5,1,2,5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("16/16 pass") != std::string::npos);
    CHECK(run({"verify", "hardy-variant", "--a", "1", "--b", "1"}).code == 0);
    r = run({"verify", "duplication", "--m", "0.5..20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("40/40 pass") != std::string::npos);
}

TEST_CASE("verify: failing points give exit code 1") {
    const Run r = run({"verify", "hardy-variant", "--a", "1", "--b", "1", "--tol-mult", "0",
                       "--abs-floor", "0"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    const auto cfg = temp_file("strict.cfg", "tol_mult = 0\nabs_floor = 0\n");
    CHECK(run({"verify", "hardy-variant", "--a", "1", "--b", "1", "--config", cfg.string()}).code ==
          1);
    // Flags override the file.
    CHECK(run({"verify", "hardy-variant", "--a", "1", "--b", "1", "--config", cfg.string(),
               "--abs-floor", "1e-6"})
              .code == 0);
}

TEST_CASE("verify: invalid input gives exit code 2") {
    CHECK(run({"verify", "lipschitz", "--a", "1..0"}).code == 2);
    CHECK(run({"verify", "lipschitz", "--b", "-1"}).code == 2);
    CHECK(run({"verify", "lipschitz", "--m", "1"}).code == 2);
    CHECK(run({"verify", "no-such-identity"}).code == 2);
    CHECK(run({"verify", "all", "--a", "1"}).code == 2);
    const auto cfg = temp_file("bad.cfg", "colour = blue\n");
    CHECK(run({"verify", "duplication", "--config", cfg.string()}).code == 2);
}

TEST_CASE("verify: CSV report") {
    const auto path = temp_file("report.csv");
    REQUIRE(run({"verify", "lipschitz", "--a", "1,2", "--b", "1", "--csv", path.string()}).code ==
            0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "identity,a,b,label,lhs,rhs,abs_err,rel_err,error_estimate,pass");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        CHECK(line.rfind("lipschitz,", 0) == 0);
        CHECK(line.back() == '1');
    }
    CHECK(rows == 2);
}

TEST_CASE("verify all with default grids passes") {
    const Run r = run({"verify", "all"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("figure-data: three samples") {
    const Run r = run({"figure-data", "j0", "--z", "1..1", "--samples", "3"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "z,phi,g");
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "1,0,0");
    CHECK(rows[1].rfind("1,1.5707963267948966,", 0) == 0);
    CHECK(rows[2] == "1,3.1415926535897931,0");
}

TEST_CASE("figure-data: CSV round trip reproduces the trapezoid check") {
    for (const char* fn : {"j0", "i0"}) {
        const Run r = run({"figure-data", fn, "--z", "1..10", "--samples", "512", "--check"});
        REQUIRE(r.code == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        std::map<double, std::vector<std::pair<double, double>>> curves;
        while (std::getline(in, line)) {
            double z, phi, g;
            char c1, c2;
            std::istringstream row(line);
            row >> z >> c1 >> phi >> c2 >> g;
            curves[z].emplace_back(phi, g);
        }
        REQUIRE(curves.size() == 10);
        for (const auto& [z, pts] : curves) {
            REQUIRE(pts.size() == 512);
            double trap = 0.0;
            for (std::size_t k = 1; k < pts.size(); ++k)
                trap += 0.5 * (pts[k].first - pts[k - 1].first) * (pts[k].second + pts[k - 1].second);
            const bool modified = std::string(fn) == "i0";
            const double oracle = modified ? bessel_i_series(Order(0.0), z).value
                                           : bessel_j_series(Order(0.0), z).value;
            CHECK(std::abs(trap - oracle) <= 1e-4 * (modified ? oracle : 1.0));
        }
    }
}

TEST_CASE("figure-data: range and sample checks") {
    CHECK(run({"figure-data", "j0", "--z", "0..3"}).code == 2);
    CHECK(run({"figure-data", "j0", "--z", "5..12"}).code == 2);
    CHECK(run({"figure-data", "j0", "--z", "12", "--wide", "--samples", "8"}).code == 0);
    CHECK(run({"figure-data", "j0", "--samples", "2"}).code == 2);
    CHECK(run({"figure-data", "k0"}).code == 2);
    const auto path = temp_file("fig.csv");
    CHECK(run({"figure-data", "i0", "--z", "2", "--samples", "16", "--out", path.string()}).code ==
          0);
    std::ifstream in(path);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    CHECK(lines == 17);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args = {"verify", "k-triangle"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> fig = {"figure-data", "i0", "--z", "1..3", "--samples", "64"};
    CHECK(run(fig).out == run(fig).out);
}

TEST_CASE("list and help") {
    const Run r = run({"list"});
    CHECK(r.code == 0);
    for (const auto& id : identity_registry()) CHECK(r.out.find(id.name) != std::string::npos);
    for (const auto& fn : eval_function_names()) CHECK(r.out.find(fn) != std::string::npos);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("installed binary exit codes") {
    CHECK(binary_exit("eval j0-rep --x 1") == 0);
    CHECK(binary_exit("eval j0-rep --x -1") == 2);
    CHECK(binary_exit("verify hardy-variant --a 1 --b 1 --tol-mult 0 --abs-floor 0") == 1);
    CHECK(binary_exit("verify lipschitz --a 1..0") == 2);
    CHECK(binary_exit("figure-data j0 --z 1..2 --samples 32 --check") == 0);
}
