#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "altiso/dp_algorithm.hpp"
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

GroupPtr full_gl_group(u32 n, PrimeField f, const PointDomain& dom) {
    std::vector<Perm> gens;
    for (const Matrix& m : gl_generators(n, f)) gens.push_back(perm_from_matrices(dom, {m}));
    return PermGroup::build(dom, gens);
}

const Subspace* find_subspace(const SubspaceList& subs, const std::vector<std::vector<u16>>& gens,
                              PrimeField f) {
    RowSpace rs(subs.n, f);
    for (const auto& v : gens) rs.insert(v);
    for (const Subspace& s : subs.by_dim[rs.dim()]) {
        bool same = true;
        for (u32 i = 0; i < rs.dim() && same; ++i) {
            std::vector<u16> row(subs.n);
            for (u32 j = 0; j < subs.n; ++j) row[j] = rs.basis().at(i, j);
            if (!s.contains(row)) same = false;
        }
        if (same) return &s;
    }
    return nullptr;
}

} // namespace

TEST_CASE("subspace transporter on GL(2,2): line to line") {
    PrimeField f2(2);
    PointDomain dom(f2, {2});
    GroupPtr g = full_gl_group(2, f2, dom);
    SubspaceList subs = enumerate_subspaces(2, f2);
    const Subspace* e1 = find_subspace(subs, {{1, 0}}, f2);
    const Subspace* e2 = find_subspace(subs, {{0, 1}}, f2);
    REQUIRE(e1);
    REQUIRE(e2);
    Coset c = subspace_transporter(g, *e1, *e2, subs);
    REQUIRE(!c.empty);
    CHECK(c.size() == 2); // 6 elements, 3 lines, orbit-stabilizer

    // brute-force cross-check of the member set
    std::set<Perm> expect;
    g->for_each_element(100, [&](const Perm& p) {
        Matrix a = matrix_of_part(dom, p, 0);
        // image of e1 under a
        std::vector<u16> img = a.apply({1, 0});
        if (img == std::vector<u16>{0, 1}) expect.insert(p);
    });
    std::set<Perm> got;
    c.for_each_element(100, [&](const Perm& p) { got.insert(p); });
    CHECK(expect == got);

    // same subspace: the setwise stabilizer, identity included
    Coset stab = subspace_transporter(g, *e1, *e1, subs);
    CHECK(stab.size() == 2);
    CHECK(!pointwise_transporter(stab, dom.index(0, {0, 0}), dom.index(0, {0, 0})).empty);

    // trivial group moves nothing
    GroupPtr triv = PermGroup::trivial(dom);
    CHECK(subspace_transporter(triv, *e1, *e2, subs).empty);
}

TEST_CASE("subspace transporter sizes: coset of the setwise stabilizer") {
    PrimeField f2(2);
    PointDomain dom(f2, {3});
    GroupPtr g = full_gl_group(3, f2, dom);
    SubspaceList subs = enumerate_subspaces(3, f2);
    for (const Subspace& v : subs.by_dim[1])
        for (const Subspace& w : subs.by_dim[1]) {
            Coset c = subspace_transporter(g, v, w, subs);
            REQUIRE(!c.empty);
            Coset stab = subspace_transporter(g, v, v, subs);
            CHECK(c.size() == stab.size());
        }
    for (const Subspace& v : subs.by_dim[2]) {
        Coset stab = subspace_transporter(g, v, v, subs);
        CHECK(stab.size() * 7 == g->order()); // 7 planes, transitive action
    }
}

TEST_CASE("alternating form transporter against brute-force filtering") {
    PrimeField f2(2);
    PointDomain dom(f2, {2});
    GroupPtr g = full_gl_group(2, f2, dom);
    SubspaceList subs = enumerate_subspaces(2, f2);
    Matrix j = alt_unit(2, f2, 0, 1);
    Matrix zero(2, 2, f2);

    Coset all = alt_matrix_transporter(g, zero, zero, subs);
    CHECK(all.size() == 6);

    Coset c = alt_matrix_transporter(g, j, j, subs);
    CHECK(c.size() == 6); // g^t J g = det(g) J and det = 1 over GF(2)

    CHECK(alt_matrix_transporter(g, j, zero, subs).empty);

    // GL(3,2) with rank-2 forms: compare against explicit filtering
    PointDomain dom3(f2, {3});
    GroupPtr g3 = full_gl_group(3, f2, dom3);
    SubspaceList subs3 = enumerate_subspaces(3, f2);
    Matrix a = alt_unit(3, f2, 0, 1);
    Matrix b = alt_unit(3, f2, 1, 2);
    Coset t = alt_matrix_transporter(g3, a, b, subs3);
    std::set<Perm> expect;
    g3->for_each_element(200, [&](const Perm& p) {
        Matrix m = matrix_of_part(dom3, p, 0);
        if (congruence(a, m) == b) expect.insert(p);
    });
    REQUIRE(!t.empty);
    std::set<Perm> got;
    t.for_each_element(200, [&](const Perm& p) { got.insert(p); });
    CHECK(got == expect);
}

TEST_CASE("alternating form transporter over GF(3)") {
    PrimeField f3(3);
    PointDomain dom(f3, {2});
    GroupPtr g = full_gl_group(2, f3, dom);
    SubspaceList subs = enumerate_subspaces(2, f3);
    Matrix j = alt_unit(2, f3, 0, 1);
    Matrix j2 = j.scale(2);
    Coset c = alt_matrix_transporter(g, j, j2, subs);
    std::set<Perm> expect;
    g->for_each_element(100, [&](const Perm& p) {
        Matrix m = matrix_of_part(dom, p, 0);
        if (congruence(j, m) == j2) expect.insert(p);
    });
    REQUIRE(!c.empty);
    u64 cnt = 0;
    c.for_each_element(100, [&](const Perm& p) {
        CHECK(expect.count(p) == 1);
        ++cnt;
    });
    CHECK(cnt == expect.size());
}

TEST_CASE("dp isometry: single form at n=2 gives all of GL(2,2)") {
    PrimeField f2(2);
    AlternatingTuple j(2, f2, {alt_unit(2, f2, 0, 1)});
    DpResult res = dp_isometry(j, j);
    REQUIRE(!res.pairs.empty);
    std::vector<Matrix> proj = dp_projected_isometries(res);
    CHECK(proj.size() == 6);
    CHECK(dp_isometry_count(res) == 6);
}

TEST_CASE("dp isometry: rank obstruction is empty") {
    PrimeField f2(2);
    AlternatingTuple j(2, f2, {alt_unit(2, f2, 0, 1)});
    AlternatingTuple zero(2, f2, {Matrix(2, 2, f2)});
    DpResult res = dp_isometry(j, zero);
    CHECK(res.pairs.empty);
}

TEST_CASE("dp matches the brute-force oracle on congruent pairs") {
    PrimeField f2(2);
    for (u64 seed = 0; seed < 6; ++seed) {
        Rng rng(900 + seed);
        AlternatingTuple g = sample_nait(3, 2, f2, rng);
        Matrix p(3, 3, f2);
        do {
            for (auto& e : p.data()) e = static_cast<u16>(rng.below(2));
        } while (!is_invertible(p));
        AlternatingTuple h = congruence_tuple(g, p);
        DpResult res = dp_isometry(g, h);
        std::vector<Matrix> oracle = brute_force_iso(g, h);
        std::vector<Matrix> proj = dp_projected_isometries(res);
        REQUIRE(proj.size() == oracle.size());
        for (size_t i = 0; i < proj.size(); ++i) CHECK(proj[i] == oracle[i]);
    }
}

TEST_CASE("dp matches the oracle on independent pairs, including empties") {
    for (u64 seed = 0; seed < 6; ++seed) {
        const u32 q = seed % 2 ? 2 : 3;
        PrimeField f(q);
        Rng rng(4200 + seed);
        const u32 n = q == 2 ? 3 : 2;
        AlternatingTuple g = sample_nait(n, 2, f, rng);
        AlternatingTuple h = sample_nait(n, 2, f, rng);
        DpResult res = dp_isometry(g, h);
        std::vector<Matrix> oracle = brute_force_iso(g, h);
        std::vector<Matrix> proj = dp_projected_isometries(res);
        REQUIRE(proj.size() == oracle.size());
        for (size_t i = 0; i < proj.size(); ++i) CHECK(proj[i] == oracle[i]);
    }
}

TEST_CASE("dp handles the empty tuple") {
    PrimeField f2(2);
    AlternatingTuple g(2, f2, {});
    DpResult res = dp_isometry(g, g);
    REQUIRE(!res.pairs.empty);
    CHECK(dp_isometry_count(res) == 6); // every invertible map fixes the zero span
}
