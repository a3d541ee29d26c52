#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "altiso/errors.hpp"
#include "altiso/experiments.hpp"
#include "altiso/io.hpp"
#include "altiso/random_models.hpp"

using namespace altiso;

TEST_CASE("alternating tuple files round-trip") {
    PrimeField f3(3);
    Rng rng(4);
    AlternatingTuple g = sample_nait(4, 2, f3, rng);
    std::stringstream ss;
    write_alt_space(ss, g);
    AlternatingTuple back = read_alt_space(ss);
    CHECK(back.n == g.n);
    CHECK(back.m() == g.m());
    for (u32 k = 0; k < g.m(); ++k) CHECK(back.mats[k] == g.mats[k]);
}

TEST_CASE("general tuple files round-trip") {
    PrimeField f2(2);
    Rng rng(8);
    MatrixTuple b = sample_bipnait(2, 3, 2, f2, rng);
    std::stringstream ss;
    write_mat_space(ss, b);
    MatrixTuple back = read_mat_space(ss);
    CHECK(back.s == b.s);
    CHECK(back.t == b.t);
    for (u32 k = 0; k < b.r(); ++k) CHECK(back.mats[k] == b.mats[k]);
}

TEST_CASE("parse errors carry line numbers") {
    {
        std::stringstream ss("altmatspace 2 1 2\n0 1\n1 0 0\n");
        try {
            read_alt_space(ss);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
    }
    {
        std::stringstream ss("altmatspace 2 1 2\n0 1\n1 x\n");
        try {
            read_alt_space(ss);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == 3);
        }
    }
    {
        std::stringstream ss("altmatspace 2 1 2\n0 5\n1 0\n");
        CHECK_THROWS_AS(read_alt_space(ss), parse_error); // entry out of range
    }
    {
        std::stringstream ss("altmatspace 2 1 2\n0 0\n"); // truncated
        CHECK_THROWS_AS(read_alt_space(ss), parse_error);
    }
    {
        std::stringstream ss("altmatspace 2 1 2\n1 1\n1 1\n"); // not alternating
        CHECK_THROWS_AS(read_alt_space(ss), parse_error);
    }
    {
        std::stringstream ss("wrong 2 1 2\n");
        CHECK_THROWS_AS(read_alt_space(ss), parse_error);
    }
}

TEST_CASE("experiment CSV has the fixed header and is deterministic") {
    ExperimentParams p;
    p.n = 4;
    p.m = 2;
    p.q = 2;
    p.trials = 50;
    p.seed = 321;
    std::string a = rows_to_csv(run_experiment("retry-count", p));
    std::string b = rows_to_csv(run_experiment("retry-count", p));
    CHECK(a == b);
    CHECK(a.rfind("kind,n,m,q,r,trials,successes,rate,seed\n", 0) == 0);
    // rate formatted to 6 decimals
    CHECK(a.find('.') != std::string::npos);
}

TEST_CASE("experiment trials are parallel-stable") {
    ExperimentParams p;
    p.n = 5;
    p.m = 3;
    p.q = 2;
    p.r = 2;
    p.trials = 64;
    p.seed = 99;
    p.threads = 1;
    std::string a = rows_to_csv(run_experiment("propertyF", p));
    p.threads = 2;
    std::string b = rows_to_csv(run_experiment("propertyF", p));
    CHECK(a == b);
}

TEST_CASE("unknown experiment kind is rejected") {
    ExperimentParams p;
    CHECK_THROWS_AS(run_experiment("nope", p), std::invalid_argument);
}
