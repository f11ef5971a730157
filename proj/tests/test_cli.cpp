#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"

namespace fs = std::filesystem;

namespace {

std::string bin_path() {
    const char* p = std::getenv("QUOTATOPE_BIN");
    REQUIRE(p != nullptr);
    return p;
}

fs::path work_dir() {
    auto d = fs::temp_directory_path() / "quotatope_cli_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int rc = -1;
    std::string out, err;
};

RunResult run(const std::string& args) {
    auto d = work_dir();
    auto so = d / "stdout.txt";
    auto se = d / "stderr.txt";
    std::string cmd = bin_path() + " " + args + " >" + so.string() + " 2>" + se.string();
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.rc = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

long count_lines(const std::string& s) {
    long n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli: euler emits a deterministic csv with one row per quota") {
    auto a = run("euler --qmax 200");
    REQUIRE(a.rc == 0);
    CHECK(a.out.rfind("q,chi\n", 0) == 0);
    CHECK(count_lines(a.out) == 199);  // header + quotas 3..200
    CHECK(a.out.find("\r") == std::string::npos);
    CHECK(a.out.find("\n6,2\n") != std::string::npos);
    auto b = run("euler --qmax 200");
    CHECK(a.out == b.out);  // byte-identical reruns
}

TEST_CASE("cli: seq primes writes the four tables") {
    auto d = work_dir();
    auto prefix = (d / "sp").string();
    auto a = run("seq primes --qmax 40 --imax 3 --out " + prefix + " --svg");
    REQUIRE(a.rc == 0);
    auto counts = slurp(prefix + "_counts.csv");
    CHECK(counts.rfind("i,q,s\n", 0) == 0);
    CHECK(counts.find("\n0,8,3\n") != std::string::npos);   // three odd primes below 8
    auto hom = slurp(prefix + "_homology.csv");
    CHECK(hom.rfind("i,q,h\n", 0) == 0);
    CHECK(hom.find("\n0,8,1\n") != std::string::npos);
    auto ratios = slurp(prefix + "_ratios.csv");
    CHECK(ratios.rfind("i,q,S,H,S_ave\n", 0) == 0);
    auto slopes = slurp(prefix + "_slopes.csv");
    CHECK(slopes.rfind("i,slope,intercept,rms_residual,points\n", 0) == 0);
    CHECK(slurp(prefix + "_ratios.svg").rfind("<svg", 0) == 0);

    auto b = run("seq primes --qmax 40 --imax 3 --out " + prefix);
    REQUIRE(b.rc == 0);
    CHECK(slurp(prefix + "_counts.csv") == counts);
}

TEST_CASE("cli: logprime reports the envelope diagnostic") {
    auto a = run("logprime --qlo 2 --nmax 500");
    REQUIRE(a.rc == 0);
    CHECK(a.out.rfind("q,ln_abs_chi,envelope\n", 0) == 0);
    // first kept sample: q = ln 8, chi = 1 - M(7) = 3
    CHECK(a.out.find("2.07944154168,1.09861228867,") != std::string::npos);
    CHECK(a.err.find("fraction_below=") != std::string::npos);
    auto b = run("logprime --qlo 2 --nmax 500");
    CHECK(a.out == b.out);
}

TEST_CASE("cli: divisor scan lists the known profiles") {
    auto a = run("divisor --nmax 100");
    REQUIRE(a.rc == 0);
    CHECK(a.out.rfind("n,tau,sigma_proper,classification,top_dim,perfect_gap,signature\n", 0) ==
          0);
    CHECK(a.out.find("\n6,4,6,perfect,1,0,1:1\n") != std::string::npos);
    CHECK(a.out.find("\n28,6,28,perfect,3,0,3:1\n") != std::string::npos);
    CHECK(a.out.find("\n12,6,16,abundant,2,1,2:1\n") != std::string::npos);
}

TEST_CASE("cli: series subcommands") {
    auto lehmer = run("series lehmer --degree 60");
    REQUIRE(lehmer.rc == 0);
    CHECK(lehmer.out == "m\n");  // no counterexamples
    auto tau = run("series tau --degree 10");
    REQUIRE(tau.rc == 0);
    CHECK(tau.out.find("\n2,-24\n") != std::string::npos);
    CHECK(tau.out.find("\n10,-115920\n") != std::string::npos);
    auto parts = run("series partitions --degree 10");
    REQUIRE(parts.rc == 0);
    CHECK(parts.out.find("\n10,42\n") != std::string::npos);
}

TEST_CASE("cli: random runs a spec file deterministically") {
    auto d = work_dir();
    auto spec = d / "spec.json";
    {
        std::ofstream out(spec);
        out << R"({"m": 1.0,
                   "densities": [{"kind": "uniform", "params": {"a": 1.0, "b": 2.0}}],
                   "q_grid": [2.5], "trials": 5000, "seed": 3})";
    }
    auto a = run("random --spec " + spec.string());
    REQUIRE(a.rc == 0);
    CHECK(a.out.rfind("q,j,expected,empirical_mean,stderr\n", 0) == 0);
    CHECK(count_lines(a.out) == 3);  // header + j=1 row + chi row
    CHECK(a.out.find("2.5,1,0.5,") != std::string::npos);
    CHECK(a.out.find("2.5,-1,1.5,") != std::string::npos);
    auto b = run("random --spec " + spec.string());
    CHECK(a.out == b.out);

    std::ofstream(spec) << "{ not json";
    CHECK(run("random --spec " + spec.string()).rc == 2);
}

TEST_CASE("cli: exit codes distinguish usage, capacity, and verification") {
    CHECK(run("euler --qmax 2").rc == 2);                          // usage
    CHECK(run("logprime --qlo 2 --qhi 20 --nmax 1000").rc == 3);   // capacity
    CHECK(run("no-such-command").rc == 2);
    CHECK(run("euler --no-such-flag").rc == 2);
    CHECK(run("--help").rc == 0);

    auto v = run("verify shell-theorem --trials 25 --seed 7");
    CHECK(v.rc == 0);
    CHECK(v.out == "shell-theorem: trials=25 failures=0\n");
}
