#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "qreduce/serialize.hpp"

namespace {
struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = qreduce::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return "cli_test_" + name; }
}  // namespace

TEST_CASE("thresholds table1 in every format") {
    const auto csv = run({"thresholds", "table1"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("R,rho,tau_classical,tau_bw,tau_gs,tau_kv", 0) == 0);
    CHECK(csv.out.find("0.717945") != std::string::npos);
    const auto json = run({"--format", "json", "thresholds", "table1"});
    CHECK(json.code == 0);
    const auto j = qreduce::parse_json(json.out);
    REQUIRE(j["rows"].size() == 6);
    CHECK(j["rows"][0]["tau_bw"].get<double>() == doctest::Approx(0.717945).epsilon(1e-6));
    const auto text = run({"--format", "text", "thresholds", "table1"});
    CHECK(text.out.find("reconstructed baseline") != std::string::npos);
}

TEST_CASE("curves are deterministic and monotone") {
    const auto a = run({"thresholds", "curves", "--rho", "0.5", "--grid", "0.05:0.95:0.05"});
    const auto b = run({"thresholds", "curves", "--rho", "0.5", "--grid", "0.05:0.95:0.05"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream in(a.out);
    std::string line;
    std::getline(in, line);
    double prev = 0;
    int rows = 0;
    while (std::getline(in, line)) {
        double r, rho, c, bw, gs, kv;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &r, &rho, &c, &bw, &gs, &kv) == 6);
        CHECK(bw >= prev);
        CHECK(gs >= bw);
        prev = bw;
        ++rows;
    }
    CHECK(rows == 19);
}

TEST_CASE("tau-max and its infeasible/usage paths") {
    const auto r = run({"thresholds", "tau-max", "--kind", "bw", "--R", "0.1", "--rho", "0.5"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(0.71794).epsilon(1e-4));
    CHECK(run({"thresholds", "tau-max", "--kind", "nope", "--R", "0.1"}).code == 2);
    CHECK(run({"thresholds", "curves", "--grid", "1:2"}).code == 2);
    CHECK(run({"thresholds"}).code == 2);
    CHECK(run({"--format", "xml", "thresholds", "table1"}).code == 2);
}

TEST_CASE("simulate: bound holds and output is byte identical") {
    const std::vector<std::string> args{"--seed", "5", "simulate", "--q", "3", "--n", "3", "--k", "1", "--decoder", "nearest"};
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("slack") != std::string::npos);
    const auto j = qreduce::parse_json(run({"--format", "json", "simulate", "--q", "3", "--decoder", "bw"}).out);
    CHECK(j["passed"] == true);
    CHECK(j["outcomes"].size() == 3);
    CHECK(j["symmetrized"] == true);
    CHECK(j["outcomes"][0]["post_select_prob"].get<double>() == doctest::Approx(j["p_dec"].get<double>()).epsilon(1e-12));
}

TEST_CASE("simulate: random codes, random sets, sampled syndromes") {
    const auto r = run({"--seed", "2", "simulate", "--q", "2", "--n", "4", "--k", "2", "--sets", "random:1", "--u",
                        "random", "--samples", "2", "--tau", "0.9", "--ttilde", "0.4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sampled u") != std::string::npos);
    CHECK(run({"simulate", "--q", "3", "--u", "2"}).code == 0);
    CHECK(run({"simulate", "--q", "3", "--u", "2,1"}).code == 2);
}

TEST_CASE("simulate: budget and input errors") {
    const auto r = run({"--budget", "1000", "simulate", "--q", "5", "--k", "2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("requires 1953125") != std::string::npos);
    CHECK(run({"simulate", "--q", "4"}).code == 2);
    CHECK(run({"simulate", "--q", "3", "--n", "4", "--decoder", "bw"}).code == 2);
    CHECK(run({"simulate", "--q", "3", "--tau", "0.5", "--ttilde", "0.7"}).code == 2);
    CHECK(run({"simulate", "--q", "3", "--sets", "0,1,2"}).code == 2);
}

TEST_CASE("opi pipeline: gen, solve, verify, convert") {
    const auto inst = tmp("inst.json"), sol = tmp("sol.json");
    CHECK(run({"--seed", "4", "--out", inst, "opi", "gen", "--q", "5", "--k", "2", "--tau", "0.6", "--set-size", "2"}).code == 0);
    CHECK(run({"--out", sol, "opi", "solve-bruteforce", "--instance", inst}).code == 0);
    const auto v = run({"opi", "verify", "--instance", inst, "--solution", sol});
    CHECK(v.code == 0);
    CHECK(qreduce::parse_json(v.out)["meets"] == true);
    const auto c = qreduce::parse_json(run({"opi", "convert", "--instance", inst, "--solve"}).out);
    CHECK(c["solution"]["in_coset"] == true);
    CHECK(c["solution"]["count"] == c["solution"]["opi"]["count"]);

    // A solution that misses the target fails the check.
    {
        std::ofstream f(sol);
        f << R"({"coeffs":[0,0]})";
    }
    const auto full = tmp("full.json");
    {
        std::ofstream f(full);
        f << R"({"q":3,"k":1,"tau":1.0,"sets":[[0,1,2],[0,1,2],[0,1,2]],"x":[2,1,0],"seed":0})";
    }
    const auto fv = run({"--format", "text", "opi", "verify", "--instance", full, "--solution", sol});
    CHECK(fv.code == 2);  // two coefficients for k = 1
    {
        std::ofstream f(sol);
        f << R"({"coeffs":[0]})";
    }
    const auto ok = run({"--format", "text", "opi", "verify", "--instance", full, "--solution", sol});
    CHECK(ok.code == 0);
    CHECK(ok.out == "count 3  required 3  meets true\n");

    const auto bad = tmp("bad.json");
    {
        std::ofstream f(bad);
        f << "{\"q\": 5,\n";
    }
    const auto e = run({"opi", "solve-bruteforce", "--instance", bad});
    CHECK(e.code == 2);
    CHECK(e.err.find("parse error") != std::string::npos);
    CHECK(run({"opi", "solve-bruteforce", "--instance", tmp("missing.json")}).code == 2);
    for (const auto& p : {inst, sol, full, bad}) std::remove(p.c_str());
}

TEST_CASE("selfcheck passes, is deterministic, and fails under a tampered tolerance") {
    const auto a = run({"selfcheck"});
    CHECK(a.code == 0);
    CHECK(a.out.find("FAIL") == std::string::npos);
    CHECK(a.out == run({"selfcheck"}).out);
    const auto t = run({"--tolerance", "parseval=1e-20", "selfcheck"});
    CHECK(t.code == 1);
    CHECK(t.out.find("FAIL parseval") != std::string::npos);
    CHECK(run({"--tolerance", "nope=1", "selfcheck"}).code == 2);
    CHECK(run({"selfcheck", "--suite", "nope"}).code == 2);
}

TEST_CASE("budget from the environment") {
    setenv("QREDUCE_BUDGET", "50", 1);
    CHECK(run({"simulate", "--q", "3"}).code == 2);
    setenv("QREDUCE_BUDGET", "abc", 1);
    CHECK(run({"simulate", "--q", "3"}).code == 2);
    unsetenv("QREDUCE_BUDGET");
    CHECK(run({"simulate", "--q", "3"}).code == 0);
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == 0); }
