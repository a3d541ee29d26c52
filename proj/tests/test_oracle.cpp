#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "altiso/errors.hpp"
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
} // namespace

TEST_CASE("single form at n=2: every invertible matrix preserves the span") {
    PrimeField f2(2);
    AlternatingTuple j(2, f2, {alt_unit(2, f2, 0, 1)});
    std::vector<Matrix> iso = brute_force_iso(j, j);
    CHECK(iso.size() == 6); // |GL(2,2)|
    for (size_t i = 1; i < iso.size(); ++i) CHECK(iso[i - 1].data() < iso[i].data());
}

TEST_CASE("rank obstruction gives the empty set") {
    PrimeField f2(2);
    AlternatingTuple j(2, f2, {alt_unit(2, f2, 0, 1)});
    AlternatingTuple zero(2, f2, {Matrix(2, 2, f2)});
    CHECK(brute_force_iso(j, zero).empty());
}

TEST_CASE("autometries form a group and divide |GL|") {
    for (u64 seed = 0; seed < 12; ++seed) {
        const u32 q = seed % 2 ? 2 : 3;
        const u32 n = 3;
        PrimeField f(q);
        Rng rng(100 + seed);
        AlternatingTuple g = sample_nait(n, 1 + seed % 2, f, rng);
        std::vector<Matrix> aut = brute_force_iso(g, g);
        CHECK(!aut.empty()); // identity at least
        CHECK(GlStream::count(n, q) % aut.size() == 0);
        std::set<std::vector<u16>> members;
        for (const Matrix& a : aut) members.insert(a.data());
        for (const Matrix& a : aut)
            for (const Matrix& b : aut) CHECK(members.count(a.mul(b).data()) == 1);
    }
}

TEST_CASE("nonempty isometry sets are autometry-group cosets") {
    PrimeField f2(2);
    for (u64 seed = 0; seed < 10; ++seed) {
        Rng rng(500 + seed);
        AlternatingTuple g = sample_nait(3, 2, f2, rng);
        // congruent partner through a random invertible P
        Matrix p(3, 3, f2);
        do {
            for (auto& e : p.data()) e = static_cast<u16>(rng.below(2));
        } while (!is_invertible(p));
        AlternatingTuple h = congruence_tuple(g, p);
        std::vector<Matrix> iso = brute_force_iso(g, h);
        std::vector<Matrix> aut = brute_force_iso(g, g);
        CHECK(!iso.empty());
        CHECK(iso.size() == aut.size());
        bool found = false;
        for (const Matrix& a : iso)
            if (a == p) found = true;
        CHECK(found);
    }
}

TEST_CASE("threaded scan equals the single-threaded scan") {
    PrimeField f3(3);
    Rng rng(9);
    AlternatingTuple g = sample_nait(3, 2, f3, rng);
    AlternatingTuple h = sample_nait(3, 2, f3, rng);
    std::vector<Matrix> a = brute_force_iso(g, h, 10'000'000, 1);
    std::vector<Matrix> b = brute_force_iso(g, h, 10'000'000, 2);
    CHECK(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("cap guard") {
    PrimeField f2(2);
    AlternatingTuple g(6, f2, {Matrix(6, 6, f2)});
    CHECK_THROWS_AS(brute_force_iso(g, g, 1000), cap_exceeded);
}
