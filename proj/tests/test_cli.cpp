#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracode/special.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACODE_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    const int rc = pclose(pipe);
    r.status = WEXITSTATUS(rc);
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// payload rows of a CSV table (skips '#' preamble and the header row)
std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string tmp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("solve: half-order relaxation endpoint matches the closed form") {
    const std::string out = tmp_path("solve.csv");
    const auto r = run_cli("solve --rhs neg_identity --gamma 0.5 --v0 1 --h 0.0009765625 "
                           "--t-end 1 --reproducible --out " + out);
    CHECK(r.status == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(!rows.empty());
    CHECK(std::abs(rows.back()[1] - 0.427583576155807) <= 5e-3);
    std::remove(out.c_str());
}

TEST_CASE("ml: cosine value through the series, bit round-trip of the CSV") {
    const auto r = run_cli("ml --alpha 2 --beta 1 --z -4 --reproducible");
    CHECK(r.status == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0][1] - (-0.41614683654714239)) <= 1e-12);
    // 17-significant-digit payload survives parse(emit(x)) bitwise
    const double lib = fracode::mittag_leffler({2.0, 1.0, -4.0}).value;
    CHECK(rows[0][1] == lib);
}

TEST_CASE("oscillator: fitted slope column within the decay tolerance") {
    const std::string out = tmp_path("osc.csv");
    const auto r = run_cli("oscillator --gamma 0.25 --h 0.25 --t-end 200 --reproducible --out " + out);
    CHECK(r.status == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(!rows.empty());
    CHECK(std::abs(rows.back()[4] + 0.5) <= 0.1);
    std::remove(out.c_str());
}

TEST_CASE("reproducible runs are byte-identical") {
    const std::string a = tmp_path("det_a.csv"), b = tmp_path("det_b.csv");
    const std::string args = "solve --rhs identity --gamma 0.3 --v0 0.5 --h 0.001953125 "
                             "--t-end 0.5 --reproducible --out ";
    CHECK(run_cli(args + a).status == 0);
    CHECK(run_cli(args + b).status == 0);
    const std::string ca = slurp(a), cb = slurp(b);
    CHECK(!ca.empty());
    CHECK(ca == cb);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("json output carries the same table") {
    const auto r = run_cli("ml --alpha 1 --beta 1 --z -2 --format json --reproducible");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"columns\"") != std::string::npos);
    CHECK(r.output.find("\"rows\"") != std::string::npos);
    CHECK(r.output.find("0.1353352832366126") != std::string::npos);
}

TEST_CASE("config file supplies values, flags override") {
    const std::string cfg = tmp_path("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"command":"ml","alpha":2.0,"beta":1.0,"z":-4.0,"reproducible":true})";
    }
    const auto base = run_cli("--config " + cfg);
    CHECK(base.status == 0);
    const auto rows = parse_csv(base.output);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0][1] - (-0.41614683654714239)) <= 1e-12);

    const auto overridden = run_cli("--config " + cfg + " ml --z 0");
    const auto rows2 = parse_csv(overridden.output);
    REQUIRE(rows2.size() == 1);
    CHECK(rows2[0][1] == 1.0);  // E_{2,1}(0) = 1
    std::remove(cfg.c_str());
}

TEST_CASE("bad configuration exits 1 with a single-line diagnostic naming the field") {
    const auto r = run_cli("solve --gamma 1.5 --rhs neg_identity");
    CHECK(r.status == 1);
    CHECK(r.output.find("gamma") != std::string::npos);
    const auto r2 = run_cli("solve --rhs not_a_real_entry");
    CHECK(r2.status == 1);
    CHECK(r2.output.find("rhs") != std::string::npos);
}

TEST_CASE("blow-up before t_end exits 2 and still writes partial output") {
    const std::string out = tmp_path("blow.csv");
    const auto r = run_cli("solve --rhs quadratic --gamma 0.5 --v0 1 --h 0.00390625 "
                           "--t-end 2 --reproducible --out " + out);
    CHECK(r.status == 2);
    const auto rows = parse_csv(slurp(out));
    CHECK(!rows.empty());
    CHECK(rows.back()[0] < 2.0);
    std::remove(out.c_str());
}

TEST_CASE("suite subcommand reports all criteria and exits 0") {
    const auto r = run_cli("suite --reproducible");
    CHECK(r.status == 0);
    for (int i = 1; i <= 12; ++i)
        CHECK(r.output.find("[PASS] " + std::to_string(i) + "-") != std::string::npos);
}

TEST_CASE("laplace and linear and compare subcommands run clean") {
    const auto r1 = run_cli("laplace --gamma 0.5 --phi t --h 0.00048828125 --t-end 1 --s 30 --reproducible");
    CHECK(r1.status == 0);
    const auto rows = parse_csv(r1.output);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][3] <= 1e-3);  // rel gap column

    const auto r2 = run_cli("linear --gamma 0.5 --lambda -1 --b-const 1 --v0 0 --h 0.0009765625 "
                            "--t-end 1 --reproducible");
    CHECK(r2.status == 0);

    const auto r3 = run_cli("compare --rhs identity --gamma 0.5 --v0 0.25 --h 0.001953125 "
                            "--t-end 1 --reproducible");
    CHECK(r3.status == 0);
}
