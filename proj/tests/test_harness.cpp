#include <doctest.h>

#include "ldlab/errors.hpp"
#include "ldlab/harness.hpp"

using namespace ldlab;

TEST_CASE("zero-trial config gives an empty table with a valid header") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gabidulin;
    c.errors = 2;
    c.trials = 0;
    c.seed = 9;
    ExperimentResult res = run_experiment(c);
    std::string csv = res.csv();
    CHECK(csv.find("# ldlab trials v1 kind=gabidulin") == 0);
    CHECK(csv.find("trial,seed,injected,injected2,success,list_size,list_dim\n") !=
          std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header comment + columns
    CHECK(res.success_rate() == 0.0);
}

TEST_CASE("same config twice: byte-identical csv and json outputs") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gabidulin;
    c.errors = 2;
    c.trials = 8;
    c.seed = 41;
    ExperimentResult a = run_experiment(c);
    ExperimentResult b = run_experiment(c);
    CHECK(a.csv() == b.csv());
    CHECK(a.json_summary() == b.json_summary());
    CHECK(a.successes == 8);  // inside the guarantee region

    c.seed = 42;
    ExperimentResult d = run_experiment(c);
    CHECK(a.csv() != d.csv());  // the seed is live
}

TEST_CASE("trial substreams are reproducible in isolation") {
    // running trials [0, 4) and a config with the same master seed but a
    // single trial must agree on trial 0's record
    ExperimentConfig c;
    c.kind = ExperimentKind::GabidulinUnique;
    c.errors = 1;
    c.s = 1;
    c.trials = 4;
    c.seed = 7;
    ExperimentResult four = run_experiment(c);
    c.trials = 1;
    ExperimentResult one = run_experiment(c);
    CHECK(four.records[0].seed == one.records[0].seed);
    CHECK(four.records[0].success == one.records[0].success);
}

TEST_CASE("unique-decoder sweep stays perfect only up to half distance") {
    ExperimentConfig c;
    c.kind = ExperimentKind::GabidulinUnique;
    c.s = 1;
    c.trials = 30;
    c.seed = 11;
    auto rows = radius_sweep(c, 0, 2);  // (n-k)/2 = 1 at the defaults
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].success_rate() == 1.0);
    CHECK(rows[1].success_rate() == 1.0);
    CHECK(rows[2].success_rate() < 1.0);  // beyond unique radius
    for (const auto& r : rows) CHECK(r.records.size() == 30);
}

TEST_CASE("list-decoder sweep is perfect across the guarantee region") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gabidulin;
    c.trials = 10;
    c.seed = 12;
    auto rows = radius_sweep(c, 0, 2);  // radius n-k-D = 2 at the defaults
    for (const auto& r : rows) CHECK(r.success_rate() == 1.0);

    // beyond n - k nothing is guaranteed, but rows stay well-formed
    auto far = radius_sweep(c, 4, 5);
    for (const auto& r : far) {
        CHECK(r.records.size() == 10);
        CHECK(r.csv().find("# ldlab trials v1") == 0);
    }
}

TEST_CASE("kk sweep covers exactly the admissible (mu, rho) grid") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Kk;
    c.trials = 2;
    c.seed = 13;
    auto rows = kk_sweep(c);
    // s(n-k+1) = 8: mu in 0..3 with rho < 8 - 2 mu: 8+6+4+2 = 20 pairs
    CHECK(rows.size() == 20);
    for (const auto& r : rows) {
        CHECK(r.config.rho + c.s * r.config.mu < c.s * (c.n - c.k + 1));
        CHECK(r.success_rate() == 1.0);
    }
}

TEST_CASE("lofrs experiment kind: agreement parameter drives the errors") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Lofrs;
    c.q = 16;
    c.ell = 3;
    c.k = 4;
    c.s = 2;
    c.agreement = 3;
    c.trials = 10;
    c.seed = 14;
    ExperimentResult res = run_experiment(c);
    CHECK(res.successes == 10);
    CHECK(res.records[0].injected == 2);  // N - agreement
}

TEST_CASE("modulus-find experiment kind records per-attempt outcomes") {
    ExperimentConfig c;
    c.kind = ExperimentKind::ModulusFind;
    c.q = 16;
    c.ell = 3;
    c.k = 4;
    c.trials = 20;
    c.seed = 15;
    ExperimentResult res = run_experiment(c);
    CHECK(res.records.size() == 20);
    CHECK(res.successes > 0);
    CHECK(res.records[0].injected == 2);  // chosen a
    ExperimentResult res2 = run_experiment(c);
    CHECK(res.csv() == res2.csv());
}

TEST_CASE("design-verify experiment kind reports the observed bound") {
    ExperimentConfig c;
    c.kind = ExperimentKind::DesignVerify;
    c.h = 2;
    c.tau = 2;
    c.m = 3;
    c.s = 1;
    c.epsilon = 0.7;
    c.design_members = 4;
    c.seed = 16;
    ExperimentResult res = run_experiment(c);
    CHECK(res.records.size() == 1);
    CHECK(res.records[0].injected == 21);  // inspected subspaces
    CHECK(res.records[0].success);
    CHECK(res.verified_a >= 0);
}

TEST_CASE("the worker pool never changes the artifacts") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gabidulin;
    c.errors = 2;
    c.trials = 16;
    c.seed = 77;
    ExperimentResult serial = run_experiment(c);
    setenv("LDLAB_WORKERS", "4", 1);
    ExperimentResult pooled = run_experiment(c);
    unsetenv("LDLAB_WORKERS");
    CHECK(serial.csv() == pooled.csv());
    CHECK(serial.json_summary() == pooled.json_summary());
}

TEST_CASE("invalid configurations are rejected up front") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Gabidulin;
    c.errors = -1;
    CHECK_THROWS_AS(run_experiment(c), ParameterError);
    c.errors = 99;
    CHECK_THROWS_AS(run_experiment(c), ParameterError);
}
