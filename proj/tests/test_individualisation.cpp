#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "altiso/errors.hpp"
#include "altiso/individualisation.hpp"
#include "altiso/linalg.hpp"

using namespace altiso;

namespace {
u64 expected_count(u32 n, u32 r, u32 q) {
    u64 qn = 1;
    for (u32 i = 0; i < n; ++i) qn *= q;
    u64 total = 1, qi = 1;
    for (u32 i = 0; i < r; ++i) {
        total *= (qn - qi);
        qi *= q;
    }
    for (u32 i = 0; i < r * (n - r); ++i) total *= q;
    return total;
}
} // namespace

TEST_CASE("counts match the closed formula and matrices are distinct") {
    struct Case {
        u32 n, r, q;
        u64 expect;
    };
    for (const Case c : {Case{2, 1, 2, 6}, Case{2, 1, 3, 24}, Case{3, 1, 2, 28}}) {
        CHECK(IndividualisationStream::count(c.n, c.r, c.q) == c.expect);
        CHECK(expected_count(c.n, c.r, c.q) == c.expect);
        IndividualisationStream stream(c.n, c.r, PrimeField(c.q));
        Matrix a1;
        std::set<std::vector<u16>> seen;
        while (stream.next(a1)) {
            CHECK(is_invertible(a1));
            CHECK(seen.insert(a1.data()).second);
        }
        CHECK(seen.size() == c.expect);
    }
    for (u32 n = 2; n <= 4; ++n)
        for (u32 r = 1; r < n; ++r) {
            IndividualisationStream stream(n, r, PrimeField(2));
            Matrix a1;
            u64 cnt = 0;
            while (stream.next(a1)) ++cnt;
            CHECK(cnt == IndividualisationStream::count(n, r, 2));
        }
}

TEST_CASE("every invertible matrix factors through exactly one stream element") {
    for (u32 n : {2u, 3u}) {
        PrimeField f2(2);
        for (u32 r = 1; r < n; ++r) {
            std::vector<Matrix> stream_elts;
            {
                IndividualisationStream stream(n, r, f2);
                Matrix a1;
                while (stream.next(a1)) stream_elts.push_back(a1);
            }
            GlStream gl(n, f2);
            Matrix a0;
            while (gl.next(a0)) {
                u32 hits = 0;
                for (const Matrix& a1 : stream_elts) {
                    Matrix rel = inverse(a1)->mul(a0);
                    // block-diagonal with identity in the top-left r x r corner
                    bool ok = true;
                    for (u32 i = 0; i < n && ok; ++i)
                        for (u32 j = 0; j < n && ok; ++j) {
                            if (i < r && j < r && rel.at(i, j) != (i == j ? 1 : 0)) ok = false;
                            if (i < r && j >= r && rel.at(i, j) != 0) ok = false;
                            if (i >= r && j < r && rel.at(i, j) != 0) ok = false;
                        }
                    if (ok) ++hits;
                }
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("stride partitioning covers the stream exactly once") {
    const u32 n = 3, r = 1;
    PrimeField f3(3);
    std::set<std::vector<u16>> whole;
    {
        IndividualisationStream s(n, r, f3);
        Matrix a1;
        while (s.next(a1)) whole.insert(a1.data());
    }
    std::set<std::vector<u16>> split;
    for (u32 w = 0; w < 3; ++w) {
        IndividualisationStream s(n, r, f3, 200'000'000, 3, w);
        Matrix a1;
        while (s.next(a1)) CHECK(split.insert(a1.data()).second);
    }
    CHECK(split == whole);
}

TEST_CASE("cap rejects oversized streams") {
    CHECK_THROWS_AS(IndividualisationStream(8, 4, PrimeField(3), 1000), cap_exceeded);
    CHECK_THROWS_AS(IndividualisationStream(3, 0, PrimeField(2)), std::invalid_argument);
    CHECK_THROWS_AS(IndividualisationStream(3, 3, PrimeField(2)), std::invalid_argument);
}
