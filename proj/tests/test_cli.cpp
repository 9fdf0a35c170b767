// End-to-end checks of the command-line tool: exit codes, the fixed CSV
// header, JSON schemas, and byte-stability of seeded outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef GNCERT_CLI_PATH
#error "GNCERT_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(GNCERT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
        res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("radius: plain and json output") {
    RunResult r = run("radius --family holder --K 1 --p 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.66666666666666663") != std::string::npos);
    CHECK(r.out.find("optimal-radius: yes") != std::string::npos);

    RunResult j = run("--format json radius --family smale --gamma 1");
    CHECK(j.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["r"].get<double>() == doctest::Approx(0.2192235935955848).epsilon(1e-12));
    CHECK(doc["methods"]["rho"] == "closed-form");
}

TEST_CASE("radius: the quadrature preset reproduces the closed form") {
    RunResult j = run("--format json radius --family integrable-L --preset constant --K 1");
    CHECK(j.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(j.out);
    CHECK(doc["r"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(doc["methods"]["rho"] == "bisection");
}

TEST_CASE("radius: invalid parameters exit with the usage code") {
    CHECK(run("radius --family holder --K -1 --p 1").exit_code == 2);
    CHECK(run("radius --family holder --K 1 --p 7").exit_code == 2);
    CHECK(run("radius --family nonsense").exit_code == 2);
    CHECK(run("bogus-command").exit_code == 2);
}

TEST_CASE("solve: fixed CSV header, monotone error column, exit 0") {
    RunResult r = run("solve --problem paper-example --a 1 --b 0 --x0 1.0");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.out) == "k,x_0,res_norm,err_norm,t_k,ratio,p_ratio,certificate");
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line); // header
    double prev_err = -1.0;
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ','); // k
        std::getline(cells, cell, ','); // x_0
        std::getline(cells, cell, ','); // res_norm
        std::getline(cells, cell, ','); // err_norm
        const double err = std::stod(cell);
        if (rows > 0) CHECK(err < prev_err);
        prev_err = err;
        CHECK(line.find("certified") != std::string::npos);
        ++rows;
    }
    CHECK(rows >= 5);
}

TEST_CASE("solve: linear fixture needs exactly one step") {
    RunResult r = run("solve --problem linear-3x2 --x0 0,0");
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3); // header + 2 rows
}

TEST_CASE("solve: a start beyond the radius is marked uncertified, not rejected") {
    RunResult r = run("solve --problem paper-example --a 1 --b 0 --x0 3.0");
    CHECK(r.out.find("uncertified") != std::string::npos);
    // t_k column stays empty on uncertified runs
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.find(",,,") != std::string::npos);
}

TEST_CASE("solve: non-convergence exits with code 3") {
    RunResult r = run("--max-iters 12 solve --problem holder-cycle-1d --x0 -0.66666666666666663");
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify: pass and falsification paths") {
    CHECK(run("verify --problem paper-example --a 1 --b 0 --start-frac 0.5").exit_code == 0);
    CHECK(run("verify --problem linear-3x2").exit_code == 0);
    CHECK(run("verify --problem paper-example --a 1 --b 0 --K-override 0.1").exit_code == 4);

    RunResult rep = run("verify --problem paper-example --a 1 --b 0 --start-frac 0.5");
    nlohmann::json doc = nlohmann::json::parse(rep.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["overall"] == true);
    CHECK(doc["condition_probe"]["pass_fraction"] == 1.0);
    CHECK(doc["cycle"]["cycle_confirmed"] == true);
    CHECK(doc["uniqueness"]["grid_pass"] == true);
}

TEST_CASE("cycle: iterates alternate at +-rho") {
    RunResult r = run("cycle --family holder --K 1 --p 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x_0 = -0.66666666666666663") != std::string::npos);
    CHECK(r.out.find("cycle: confirmed") != std::string::npos);

    RunResult half = run("cycle --family holder --K 2 --p 1");
    CHECK(half.exit_code == 0);
    CHECK(half.out.find("-0.33333333333333331") != std::string::npos);

    CHECK(run("cycle --family smale --gamma 1").exit_code == 0);
}

TEST_CASE("sweep: inside fractions converge, the boundary fraction cycles") {
    RunResult r = run("--max-iters 20 sweep --problem holder-cycle-1d --frac-min 0.5 "
                      "--frac-max 1.0 --frac-step 0.25 --directions 2");
    CHECK(r.exit_code == 0);
    CHECK(first_line(r.out) == "fraction,direction,converged,iterations,final_error");
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string frac, dir, conv;
        std::getline(cells, frac, ',');
        std::getline(cells, dir, ',');
        std::getline(cells, conv, ',');
        if (std::stod(frac) < 1.0)
            CHECK(conv == "1");
        else
            CHECK(conv == "0"); // the sharp boundary keeps cycling
    }
}

TEST_CASE("sweep on the model problem: every certified fraction converges") {
    RunResult r = run("sweep --problem paper-example --a 1 --b 0 --frac-min 0.2 "
                      "--frac-max 0.9 --frac-step 0.35 --directions 4");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find(",1,") != std::string::npos); // converged column
        ++rows;
    }
    CHECK(rows == 12);
}

TEST_CASE("seeded outputs are byte-stable across runs") {
    const std::string args =
        "--seed 7 sweep --problem surface-2x3 --frac-min 0.3 --frac-max 0.9 "
        "--frac-step 0.3 --directions 4";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());

    RunResult v1 = run("--seed 9 verify --problem surface-2x3 --start-frac 0.4");
    RunResult v2 = run("--seed 9 verify --problem surface-2x3 --start-frac 0.4");
    CHECK(v1.out == v2.out);
}

TEST_CASE("output lands in the requested file") {
    const std::string path = "/tmp/gncert_cli_test_trace.csv";
    std::remove(path.c_str());
    RunResult r = run("--output " + path + " solve --problem lipschitz-toy-1d --x0 0.25");
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,x_0,res_norm,err_norm,t_k,ratio,p_ratio,certificate");
    std::remove(path.c_str());
}
