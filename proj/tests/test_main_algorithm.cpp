#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "altiso/errors.hpp"
#include "altiso/main_algorithm.hpp"
#include "altiso/oracle.hpp"
#include "altiso/random_models.hpp"

using namespace altiso;

namespace {
Matrix alt_unit(u32 n, PrimeField f, u32 i, u32 j) {
    Matrix m(n, n, f);
    m.at(i, j) = 1;
    m.at(j, i) = static_cast<u16>(f.neg(1));
    return m;
}

Matrix random_invertible(u32 n, PrimeField f, Rng& rng) {
    Matrix p(n, n, f);
    do {
        for (auto& e : p.data()) e = static_cast<u16>(rng.below(f.p()));
    } while (!is_invertible(p));
    return p;
}
} // namespace

TEST_CASE("split selection scans the ratio bound") {
    CHECK(choose_r(25, 25) == 5);
    CHECK_THROWS_AS(choose_r(10, 40), infeasible);
    CHECK(choose_r(20, 20) == 6); // smallest r with r*(n-r) >= 4m
    CHECK_THROWS_AS(choose_r(6, 6), infeasible);
    CHECK(choose_r(25, 5) == 12); // n-r >= m branch: r*m >= 4*(n-r)
}

TEST_CASE("gate depends on G alone and zero spaces fail it") {
    PrimeField f2(2);
    AlternatingTuple zero(4, f2, {Matrix(4, 4, f2)});
    AlternatingTuple j(4, f2, {alt_unit(4, f2, 0, 1)});
    IsometryResult res = main_isometry(zero, j, 1);
    CHECK(res.kind == IsometryResult::Kind::NotPropertyF);
    IsometryResult res2 = main_isometry(zero, zero, 1);
    CHECK(res2.kind == IsometryResult::Kind::NotPropertyF);
    CHECK(res.gate_dim == res2.gate_dim);
}

TEST_CASE("identity instance returns the autometry group") {
    PrimeField f2(2);
    for (u64 seed = 0; seed < 8; ++seed) {
        Rng rng(40 + seed);
        AlternatingTuple g = sample_liner(3, 2, f2, rng);
        IsometryResult res = main_isometry(g, g, 1);
        if (res.kind != IsometryResult::Kind::IsoSet) continue;
        std::vector<Matrix> aut = brute_force_iso(g, g);
        REQUIRE(res.isometries.size() == aut.size());
        for (size_t i = 0; i < aut.size(); ++i) CHECK(res.isometries[i] == aut[i]);
        bool has_identity = false;
        for (const Matrix& a : res.isometries)
            if (a == Matrix::identity(3, f2)) has_identity = true;
        CHECK(has_identity);
    }
}

TEST_CASE("congruent pairs recover the planted isometry and the oracle set") {
    u32 gate_passed = 0;
    for (u64 seed = 0; seed < 12; ++seed) {
        const u32 q = seed % 2 ? 2 : 3;
        PrimeField f(q);
        Rng rng(1000 + seed);
        const u32 n = 4, m = 1 + seed % 3;
        AlternatingTuple g = sample_nait(n, m, f, rng);
        Matrix p = random_invertible(n, f, rng);
        AlternatingTuple h = congruence_tuple(g, p);
        IsometryResult res = main_isometry(g, h, 2);
        if (res.kind != IsometryResult::Kind::IsoSet) continue;
        ++gate_passed;
        std::vector<Matrix> oracle = brute_force_iso(g, h, 50'000'000);
        REQUIRE(res.isometries.size() == oracle.size());
        for (size_t i = 0; i < oracle.size(); ++i) CHECK(res.isometries[i] == oracle[i]);
        bool found = false;
        for (const Matrix& a : res.isometries)
            if (a == p) found = true;
        CHECK(found);
    }
    CHECK(gate_passed >= 6);
}

TEST_CASE("independent samples are generically non-isometric") {
    PrimeField f2(2);
    u32 tested = 0;
    for (u64 seed = 0; seed < 20 && tested < 3; ++seed) {
        Rng rng(2200 + seed);
        AlternatingTuple g = sample_liner(6, 6, f2, rng);
        AlternatingTuple h = sample_liner(6, 6, f2, rng);
        MainOptions opts;
        opts.threads = 2;
        IsometryResult res = main_isometry(g, h, 2, opts);
        if (res.kind != IsometryResult::Kind::IsoSet) continue;
        ++tested;
        CHECK(res.isometries.empty());
    }
    CHECK(tested == 3);
}

TEST_CASE("find-one stops early with a verified witness") {
    PrimeField f2(2);
    u32 done = 0;
    for (u64 seed = 0; seed < 20 && !done; ++seed) {
        Rng rng(31 + seed);
        AlternatingTuple g = sample_liner(4, 3, f2, rng);
        Matrix p = random_invertible(4, f2, rng);
        AlternatingTuple h = congruence_tuple(g, p);
        MainOptions opts;
        opts.find_one = true;
        IsometryResult res = main_isometry(g, h, 2, opts);
        if (res.kind != IsometryResult::Kind::IsoSet) continue; // gate failed for this seed
        ++done;
        REQUIRE(res.isometries.size() >= 1);
        CHECK(span_equal(congruence_tuple(g, res.isometries.front()), h));
    }
    CHECK(done == 1);
}

TEST_CASE("threaded run merges to the single-threaded set") {
    PrimeField f2(2);
    Rng rng(77);
    AlternatingTuple g = sample_liner(4, 2, f2, rng);
    Matrix p = random_invertible(4, f2, rng);
    AlternatingTuple h = congruence_tuple(g, p);
    IsometryResult a = main_isometry(g, h, 2);
    MainOptions opts;
    opts.threads = 2;
    IsometryResult b = main_isometry(g, h, 2, opts);
    REQUIRE(a.kind == b.kind);
    REQUIRE(a.isometries.size() == b.isometries.size());
    for (size_t i = 0; i < a.isometries.size(); ++i) CHECK(a.isometries[i] == b.isometries[i]);
}

TEST_CASE("mismatched inputs are rejected") {
    PrimeField f2(2);
    AlternatingTuple g(3, f2, {alt_unit(3, f2, 0, 1)});
    AlternatingTuple h(4, f2, {alt_unit(4, f2, 0, 1)});
    CHECK_THROWS_AS(main_isometry(g, h, 1), dimension_mismatch);
    AlternatingTuple g2(3, f2, {alt_unit(3, f2, 0, 1), alt_unit(3, f2, 0, 2)});
    CHECK_THROWS_AS(main_isometry(g, g2, 1), dimension_mismatch);
}
