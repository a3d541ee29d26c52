#include "altiso/baer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "altiso/errors.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

u32 FiniteGroupTable::inv(u32 a) const {
    for (u32 b = 0; b < order; ++b)
        if (at(a, b) == 0) return b;
    throw std::logic_error("FiniteGroupTable::inv: no inverse");
}

u32 FiniteGroupTable::pow(u32 a, u64 e) const {
    u32 acc = 0;
    for (u64 i = 0; i < e; ++i) acc = at(acc, a);
    return acc;
}

u32 FiniteGroupTable::element_order(u32 a) const {
    u32 acc = a, k = 1;
    while (acc != 0) {
        acc = at(acc, a);
        ++k;
    }
    return k;
}

bool FiniteGroupTable::check_axioms() const {
    for (u32 a = 0; a < order; ++a)
        if (at(0, a) != a || at(a, 0) != a) return false;
    for (u32 a = 0; a < order; ++a) {
        bool has_inv = false;
        for (u32 b = 0; b < order; ++b)
            if (at(a, b) == 0 && at(b, a) == 0) has_inv = true;
        if (!has_inv) return false;
    }
    for (u32 a = 0; a < order; ++a)
        for (u32 b = 0; b < order; ++b)
            for (u32 c = 0; c < order; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) return false;
    return true;
}

bool FiniteGroupTable::check_exponent(u32 p) const {
    for (u32 a = 0; a < order; ++a)
        if (pow(a, p) != 0) return false;
    return true;
}

std::vector<u32> FiniteGroupTable::commutator_subgroup() const {
    std::set<u32> gens;
    for (u32 a = 0; a < order; ++a)
        for (u32 b = 0; b < order; ++b) gens.insert(at(at(inv(a), inv(b)), at(a, b)));
    // closure
    std::set<u32> sub(gens.begin(), gens.end());
    sub.insert(0);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<u32> cur(sub.begin(), sub.end());
        for (u32 a : cur)
            for (u32 b : cur)
                if (sub.insert(at(a, b)).second) grew = true;
    }
    return {sub.begin(), sub.end()};
}

bool FiniteGroupTable::check_class2() const {
    // every commutator commutes with every element
    std::set<u32> comms;
    for (u32 a = 0; a < order; ++a)
        for (u32 b = 0; b < order; ++b) comms.insert(at(at(inv(a), inv(b)), at(a, b)));
    for (u32 c : comms)
        for (u32 g = 0; g < order; ++g)
            if (at(c, g) != at(g, c)) return false;
    return true;
}

bool FiniteGroupTable::is_abelian() const {
    for (u32 a = 0; a < order; ++a)
        for (u32 b = a + 1; b < order; ++b)
            if (at(a, b) != at(b, a)) return false;
    return true;
}

FiniteGroupTable baer_group(const AlternatingTuple& g, u64 order_cap) {
    const u32 p = g.field.p();
    if (p == 2) throw even_characteristic("baer_group: odd characteristic required");
    const u32 n = g.n, m = g.m();
    u64 order = 1;
    for (u32 i = 0; i < m + n; ++i) {
        order *= p;
        if (order > order_cap) throw cap_exceeded("baer_group: group order exceeds cap");
    }
    const u32 half = g.field.inv(2);
    u64 pm = 1;
    for (u32 i = 0; i < m; ++i) pm *= p;
    u64 pn = 1;
    for (u32 i = 0; i < n; ++i) pn *= p;

    FiniteGroupTable t;
    t.order = static_cast<u32>(order);
    t.mul.assign(order * order, 0);
    for (u64 x = 0; x < order; ++x) {
        const std::vector<u16> v1 = vector_of_rank(x / pn, m, p);
        const std::vector<u16> u1 = vector_of_rank(x % pn, n, p);
        for (u64 y = 0; y < order; ++y) {
            const std::vector<u16> v2 = vector_of_rank(y / pn, m, p);
            const std::vector<u16> u2 = vector_of_rank(y % pn, n, p);
            std::vector<u16> v(m), u(n);
            for (u32 k = 0; k < m; ++k) {
                // b(u1, u2)_k = u1^t G_k u2
                u64 acc = 0;
                for (u32 i = 0; i < n; ++i) {
                    if (!u1[i]) continue;
                    u64 row = 0;
                    for (u32 j = 0; j < n; ++j) row += static_cast<u64>(g.mats[k].at(i, j)) * u2[j];
                    acc += static_cast<u64>(u1[i]) * g.field.reduce(row);
                }
                const u32 bk = g.field.reduce(acc);
                v[k] = static_cast<u16>(g.field.add(g.field.add(v1[k], v2[k]), g.field.mul(half, bk)));
            }
            for (u32 i = 0; i < n; ++i) u[i] = static_cast<u16>(g.field.add(u1[i], u2[i]));
            t.mul[x * order + y] =
                static_cast<u32>(rank_of_vector(v, p) * pn + rank_of_vector(u, p));
        }
    }
    return t;
}

namespace {

// Expand the partial map over products until stable; false on conflict.
bool close_partial(const FiniteGroupTable& t1, const FiniteGroupTable& t2, std::vector<i64>& img,
                   std::vector<u32>& mapped) {
    for (size_t head = 0; head < mapped.size(); ++head) {
        const u32 a = mapped[head];
        for (size_t i = 0; i < mapped.size(); ++i) {
            const u32 b = mapped[i];
            for (int dir = 0; dir < 2; ++dir) {
                const u32 c = dir ? t1.at(b, a) : t1.at(a, b);
                const u32 fc = dir ? t2.at(static_cast<u32>(img[b]), static_cast<u32>(img[a]))
                                   : t2.at(static_cast<u32>(img[a]), static_cast<u32>(img[b]));
                if (img[c] < 0) {
                    img[c] = fc;
                    mapped.push_back(c);
                } else if (img[c] != fc) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool extend(const FiniteGroupTable& t1, const FiniteGroupTable& t2,
            const std::vector<u32>& gens, size_t gi, const std::vector<i64>& img,
            const std::vector<u32>& mapped, const std::vector<std::vector<u32>>& by_order) {
    if (mapped.size() == t1.order) {
        // img is a total bijective homomorphism candidate; closure already
        // checked products of mapped elements, which is all of them
        std::vector<bool> hit(t2.order, false);
        for (u32 a = 0; a < t1.order; ++a) {
            if (hit[static_cast<u32>(img[a])]) return false;
            hit[static_cast<u32>(img[a])] = true;
        }
        return true;
    }
    if (gi >= gens.size()) return false;
    const u32 g = gens[gi];
    if (img[g] >= 0) return extend(t1, t2, gens, gi + 1, img, mapped, by_order);
    const u32 ord = t1.element_order(g);
    for (u32 cand : by_order[ord]) {
        std::vector<i64> img2 = img;
        std::vector<u32> mapped2 = mapped;
        img2[g] = cand;
        mapped2.push_back(g);
        if (!close_partial(t1, t2, img2, mapped2)) continue;
        if (extend(t1, t2, gens, gi + 1, img2, mapped2, by_order)) return true;
    }
    return false;
}

} // namespace

bool group_iso_micro(const FiniteGroupTable& t1, const FiniteGroupTable& t2, u64 order_cap) {
    if (t1.order != t2.order) return false;
    if (t1.order > order_cap) throw cap_exceeded("group_iso_micro: order exceeds cap");
    if (t1.order <= 1) return true;

    // order histograms must match
    std::map<u32, u32> h1, h2;
    std::vector<std::vector<u32>> by_order(t1.order + 1);
    for (u32 a = 0; a < t1.order; ++a) ++h1[t1.element_order(a)];
    for (u32 a = 0; a < t2.order; ++a) {
        const u32 o = t2.element_order(a);
        ++h2[o];
        if (o <= t1.order) by_order[o].push_back(a);
    }
    if (h1 != h2) return false;

    // generating sequence of t1: greedily add elements outside the closure
    std::vector<u32> gens;
    std::set<u32> closed{0};
    for (u32 a = 1; a < t1.order; ++a) {
        if (closed.count(a)) continue;
        gens.push_back(a);
        // close
        bool grew = true;
        closed.insert(a);
        while (grew) {
            grew = false;
            std::vector<u32> cur(closed.begin(), closed.end());
            for (u32 x : cur)
                for (u32 y : cur)
                    if (closed.insert(t1.at(x, y)).second) grew = true;
        }
        if (closed.size() == t1.order) break;
    }

    std::vector<i64> img(t1.order, -1);
    img[0] = 0;
    std::vector<u32> mapped{0};
    return extend(t1, t2, gens, 0, img, mapped, by_order);
}

} // namespace altiso
