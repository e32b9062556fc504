#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "degen/scenario.hpp"
#include "doctest.h"

using namespace degen;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& body) {
    static int counter = 0;
    const std::string path = "scenario_test_" + std::to_string(counter++) + ".ini";
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config gets documented defaults") {
    const std::string p = write_temp("[solver]\np = 2\nt_end = 20\n");
    const Scenario s = parse_config(p);
    fs::remove(p);
    CHECK(s.solver_config.p == 2.0);
    CHECK(s.solver_config.epsilon == 1e-6);
    CHECK(s.solver_config.u_minus == -1.0);
    CHECK(s.solver_config.u_plus == 1.0);
    // Default geometric checkpoints clipped to t_end.
    CHECK(s.solver_config.checkpoint_times == std::vector<double>{5.0, 10.0, 20.0});
    CHECK(s.name == "standard");
}

TEST_CASE("invalid configs are rejected with the offending key") {
    const std::string p1 = write_temp("[solver]\np = 0.5\n");
    CHECK_THROWS_WITH_AS(parse_config(p1), doctest::Contains("p must exceed 1"),
                         std::invalid_argument);
    fs::remove(p1);

    const std::string p2 = write_temp(
        "[solver]\nt_end = 100\n[grid]\nx_left = -10\nx_right = 10\nn = 100\n");
    CHECK_THROWS_WITH_AS(parse_config(p2), doctest::Contains("boundaries"),
                         std::invalid_argument);
    fs::remove(p2);

    const std::string p3 = write_temp("[solver]\np = fast\n");
    CHECK_THROWS_WITH_AS(parse_config(p3), doctest::Contains("line 2"),
                         std::runtime_error);
    fs::remove(p3);

    const std::string p4 = write_temp("[solver]\np = 2\nbogus = 1\n");
    CHECK_THROWS_WITH_AS(parse_config(p4), doctest::Contains("unknown key"),
                         std::runtime_error);
    fs::remove(p4);

    CHECK_THROWS(parse_config("no_such_file.ini"));
}

TEST_CASE("config round-trip") {
    const std::string p = write_temp(
        "[scenario]\nname = trial\n[solver]\np = 1.5\nmu = 0.5\nt_end = 10\n"
        "checkpoints = 1, 5, 10\n[grid]\nx_left = -30\nx_right = 30\nn = 600\n"
        "[perturbation]\nkind = gaussian\namplitude = 0.2\ncenter = 1\nwidth = 2\n");
    const Scenario s = parse_config(p);
    fs::remove(p);
    const std::string p2 = write_temp(serialize_config(s));
    const Scenario s2 = parse_config(p2);
    fs::remove(p2);
    CHECK(scenario_equal(s, s2));
}

TEST_CASE("profile emission") {
    TempDir dir("profile_out_test");
    Scenario s;
    s.grid = Grid1D{-20.0, 20.0, 100};
    s.solver_config.t_end = 1.0;
    s.solver_config.checkpoint_times = {1.0};
    s.output_dir = dir.path.string();

    cmd_profile(s, {});
    CHECK(fs::is_empty(dir.path));

    cmd_profile(s, {0.0, 1.0});
    const std::string body = slurp(dir.path / "profile_t0.csv");
    CHECK(body.rfind("t,x,u_multi,u_contact,u_rarefaction,du_multi\n", 0) == 0);
    int rows = -1;  // exclude header
    for (char ch : body)
        if (ch == '\n') ++rows;
    CHECK(rows == s.grid.nodes());
    CHECK(fs::exists(dir.path / "profile_t1.csv"));
}

TEST_CASE("simulation emission and determinism") {
    TempDir dir("simulate_out_test");
    Scenario s;
    s.grid = Grid1D{-15.0, 15.0, 300};
    s.solver_config.t_end = 1.0;
    s.solver_config.checkpoint_times = {0.5, 1.0};
    s.output_dir = dir.path.string();

    CHECK(cmd_simulate(s) == 0);
    CHECK(fs::exists(dir.path / "checkpoint_t0.5.csv"));
    CHECK(fs::exists(dir.path / "checkpoint_t1.csv"));
    const std::string diag = slurp(dir.path / "diagnostics.csv");
    CHECK(diag.rfind("t,value,series_name\n", 0) == 0);
    int rows = -1;
    for (char ch : diag)
        if (ch == '\n') ++rows;
    CHECK(rows == 2 * 4);  // two checkpoints x four default series
    const std::string manifest = slurp(dir.path / "MANIFEST");
    CHECK(manifest.find("status = ok") != std::string::npos);
    CHECK(manifest.find("scenario_hash = ") != std::string::npos);

    const std::string cp = slurp(dir.path / "checkpoint_t1.csv");
    CHECK(cmd_simulate(s) == 0);  // re-run: byte-identical outputs
    CHECK(slurp(dir.path / "checkpoint_t1.csv") == cp);
    CHECK(slurp(dir.path / "diagnostics.csv") == diag);
}
