#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "qsample/report.hpp"

using namespace qsample;

namespace {

RunConfig config(const char* command) {
    RunConfig cfg;
    cfg.command = command;
    return cfg;
}

std::string run_csv(const RunConfig& cfg) {
    return render(run_command(cfg).table, cfg);
}

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_grid("").empty());
    CHECK(parse_grid("1,2.5,1e3") == std::vector<double>{1, 2.5, 1000});
    CHECK(parse_grid("0:1:5") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(parse_grid("3:9:1") == std::vector<double>{3});
    CHECK(parse_grid("0:1:0").empty());
    CHECK_THROWS_AS(parse_grid("1,x"), UsageError);
    CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
    CHECK_THROWS_AS(parse_grid("1:2:2.5"), UsageError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-36) == "1e-36");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(12345678901234.0) == "1.23456789012e+13");
}

TEST_CASE("bound golden") {
    RunConfig cfg = config("bound");
    cfg.m = "100";
    cfg.n = "100";
    cfg.epsilon = 0.01;
    cfg.beta = 0.3;
    cfg.w = 0.05;
    CHECK(run_csv(cfg) ==
          "m,n,epsilon,epsilon_hat,beta,a,c,w,delta,smoothing,entropy_lower_bound,failure_prob,vacuous\n"
          "100,100,0.01,0.01,0.3,0,0.5,0.05,0.316267646592,0.522377286302,5.22368767456,0.158489319246,0\n");

    cfg.c = 1.0;
    const auto r = run_command(cfg);
    CHECK(std::get<std::int64_t>(r.table.rows[0].back()) == 1);

    RunConfig defaults = config("bound");
    const auto p = run_command(defaults);
    const double fail = std::get<double>(p.table.rows[0][11]);
    CHECK(std::abs(std::log10(fail) + 12.24) < 0.01);

    cfg.m = "1,2";
    CHECK_THROWS_AS(run_command(cfg), UsageError);
    cfg.m = "200";
    CHECK_THROWS_AS(run_command(cfg), UsageError);
}

TEST_CASE("rate curve golden and flags") {
    RunConfig cfg = config("rate-curve");
    cfg.grid = "1000,1000000";
    CHECK(run_csv(cfg) ==
          "N,n,m,delta,ell,rate,vacuous,asymptote,feasible\n"
          "1000,935,65,1.60198066071,-462.280390458,0,1,0.278071905113,1\n"
          "1000000,934579,65421,0.0504454419977,-172992.465998,0,1,0.278071905113,1\n");

    cfg.grid = "";
    CHECK(run_csv(cfg) == "N,n,m,delta,ell,rate,vacuous,asymptote,feasible\n");
    CHECK(run_command(cfg).exit_code == 0);

    cfg.grid = "1,5";
    const auto bad = run_command(cfg);
    CHECK(bad.table.rows.size() == 2);
    CHECK(std::get<std::int64_t>(bad.table.rows[0][8]) == 0);
    CHECK(bad.diagnostics.size() == 2);

    RunConfig def = config("rate-curve");
    CHECK(run_command(def).table.rows.size() == 31);

    // Noiseless curve dominates the noisy one.
    RunConfig a = config("rate-curve"), b = config("rate-curve");
    a.w = 0.0;
    a.m_fraction = b.m_fraction = 0.01;
    a.epsilon = b.epsilon = 1e-10;
    b.w = 0.05;
    const auto ra = run_command(a), rb = run_command(b);
    for (std::size_t i = 0; i < ra.table.rows.size(); ++i) {
        CHECK(std::get<double>(ra.table.rows[i][4]) >= std::get<double>(rb.table.rows[i][4]));
        CHECK(std::get<double>(ra.table.rows[i][5]) >= std::get<double>(rb.table.rows[i][5]));
    }

    cfg.formula = "bogus";
    CHECK_THROWS_AS(run_command(cfg), UsageError);
}

TEST_CASE("entropy curve report") {
    RunConfig cfg = config("fig1");
    cfg.grid = "0:1:5";
    CHECK(run_csv(cfg) ==
          "p,shannon,min_entropy\n"
          "0,0,0\n"
          "0.25,0.811278124459,0.415037499279\n"
          "0.5,1,1\n"
          "0.75,0.811278124459,0.415037499279\n"
          "1,0,0\n");
    RunConfig def = config("fig1");
    const auto r = run_command(def);
    CHECK(r.table.rows.size() == 101);
    for (const auto& row : r.table.rows) CHECK(std::get<double>(row[2]) <= std::get<double>(row[1]) + 1e-15);
    cfg.grid = "1.5";
    CHECK_THROWS_AS(run_command(cfg), UsageError);
}

TEST_CASE("sampling report") {
    RunConfig cfg = config("sampling");
    cfg.N = "4";
    cfg.m = "2";
    cfg.delta = "0.25";
    const auto r = run_command(cfg);
    REQUIRE(r.table.rows.size() == 1);
    CHECK(std::get<double>(r.table.rows[0][3]) == 1.0);
    CHECK(std::get<double>(r.table.rows[0][6]) == 1.0);

    RunConfig grid = config("sampling");
    grid.N = "8,16,32,64,80";
    grid.m = "1,2,4,8";
    grid.delta = "0.1,0.2,0.3";
    grid.trials = 2000;
    const auto g = run_command(grid);
    bool refused = false;
    for (const auto& d : g.diagnostics) refused = refused || d.find("refused for N=80") != std::string::npos;
    CHECK(refused);
    for (const auto& row : g.table.rows) {
        const double exact = std::get<double>(row[3]);
        const double mc = std::get<double>(row[4]);
        const double se = std::get<double>(row[5]);
        if (std::get<std::int64_t>(row[0]) == 80) {
            CHECK(std::isnan(exact));
            continue;
        }
        if (std::get<std::int64_t>(row[7]) == 1) CHECK(exact <= std::get<double>(row[6]));
        CHECK(std::abs(mc - exact) <= 4 * se + 1e-12);
    }
}

TEST_CASE("verify report") {
    RunConfig cfg = config("verify");
    cfg.trials = 50;
    const auto ok = run_command(cfg);
    CHECK(ok.exit_code == 0);
    CHECK(ok.table.rows.size() == 5);

    cfg.trials = 0;
    const auto vac = run_command(cfg);
    CHECK(vac.exit_code == 0);
    CHECK(vac.diagnostics.front().find("vacuous") != std::string::npos);

    cfg.trials = 100;
    cfg.suites = {"ideal-state"};
    cfg.inject_bound_offset = 1.0;
    const auto bad = run_command(cfg);
    CHECK(bad.exit_code == kExitViolation);
    CHECK(std::get<std::string>(bad.table.rows[0][4]) == "fail");

    cfg.suites = {"nope"};
    CHECK_THROWS_AS(run_command(cfg), UsageError);
}

TEST_CASE("json rendering") {
    RunConfig cfg = config("fig1");
    cfg.grid = "0.1";
    cfg.seed = 123;
    cfg.format = OutputFormat::json;
    const auto doc = nlohmann::json::parse(run_csv(cfg));
    CHECK(doc["metadata"]["seed"] == 123);
    CHECK(doc["metadata"]["command"] == "fig1");
    CHECK(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["p"] == 0.1);
    CHECK(doc["rows"][0]["shannon"].get<double>() == std::stod(format_number(0.46899559358928117)));

    RunConfig s = config("sampling");
    s.N = "70";
    s.m = "2";
    s.delta = "0.3";
    s.trials = 10;
    s.format = OutputFormat::json;
    const auto sj = nlohmann::json::parse(run_csv(s));
    CHECK(sj["rows"][0]["exact"].is_null());
}

TEST_CASE("outputs are reproducible") {
    for (const char* command : {"bound", "rate-curve", "fig1", "verify", "sampling"}) {
        for (auto format : {OutputFormat::csv, OutputFormat::json}) {
            RunConfig cfg = config(command);
            cfg.trials = 40;
            cfg.seed = 5;
            cfg.format = format;
            CHECK(run_csv(cfg) == run_csv(cfg));
        }
    }
    CHECK_THROWS_AS(run_command(config("nope")), UsageError);
}
