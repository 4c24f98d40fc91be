#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(QSAMPLE_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& s) {
    return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("fig1 --grid 0:1:3").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("bound --epsilon 2").code == 2);
    CHECK(run("bound --m 10 --n 5").code == 2);
    CHECK(run("bound --epsilon abc").code == 2);
    CHECK(run("rate-curve --formula nope").code == 2);
    CHECK(run("rate-curve --format xml").code == 2);
    CHECK(run("verify --suite nope").code == 2);
    CHECK(run("verify --trials 0").code == 0);
    CHECK(run("verify --suite ideal-state --trials 100 --inject-bound-offset 1").code == 1);
    CHECK(run("verify --suite ideal-state --trials 100").code == 0);
    CHECK(run("--help").code == 0);
}

TEST_CASE("headers") {
    CHECK(first_line(run("bound").out) ==
          "m,n,epsilon,epsilon_hat,beta,a,c,w,delta,smoothing,entropy_lower_bound,failure_prob,vacuous");
    CHECK(first_line(run("rate-curve --grid 1000").out) == "N,n,m,delta,ell,rate,vacuous,asymptote,feasible");
    CHECK(run("rate-curve --grid ''").out == "N,n,m,delta,ell,rate,vacuous,asymptote,feasible\n");
    CHECK(first_line(run("fig1").out) == "p,shannon,min_entropy");
    CHECK(first_line(run("sampling --N 4 --m 2 --delta 0.25").out) ==
          "N,k,delta,exact,mc_estimate,mc_stderr,bound,bound_applies");
    CHECK(first_line(run("verify --trials 0").out) == "suite,instances,violations,worst_slack,status");
}

TEST_CASE("byte-identical reruns") {
    for (const char* args : {"bound --format json", "rate-curve", "fig1 --format json",
                             "sampling --N 8,20 --m 2,4 --delta 0.1,0.3 --seed 9 --trials 300",
                             "verify --trials 30 --seed 4 --format json"}) {
        const Run a = run(args);
        const Run b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find('\r') == std::string::npos);
    }
}

TEST_CASE("out file") {
    const std::string path = "qsample_cli_test_out.csv";
    std::remove(path.c_str());
    CHECK(run("fig1 --grid 0.5 --out " + path).code == 0);
    FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[256] = {};
    const std::size_t n = std::fread(buf, 1, sizeof buf - 1, f);
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(std::string(buf, n) == "p,shannon,min_entropy\n0.5,1,1\n");
}
