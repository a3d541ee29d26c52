#include "altiso/subspaces.hpp"

#include <map>

#include "altiso/errors.hpp"

namespace altiso {

std::vector<u16> vector_of_rank(u64 r, u32 n, u32 q) {
    std::vector<u16> v(n, 0);
    for (u32 j = n; j-- > 0;) {
        v[j] = static_cast<u16>(r % q);
        r /= q;
    }
    return v;
}

u64 rank_of_vector(const std::vector<u16>& v, u32 q) {
    u64 r = 0;
    for (u16 x : v) r = r * q + x;
    return r;
}

bool Subspace::contains(std::vector<u16> v) const {
    const PrimeField& F = rref_basis.field();
    for (u32 i = 0; i < rref_basis.rows(); ++i) {
        const u32 c = pivots[i];
        const u32 f = v[c];
        if (!f) continue;
        for (u32 j = c; j < rref_basis.cols(); ++j)
            v[j] = static_cast<u16>(F.sub(v[j], F.mul(f, rref_basis.at(i, j))));
    }
    for (u16 x : v)
        if (x) return false;
    return true;
}

bool Subspace::contains_subspace(const Subspace& other) const {
    for (u32 i = 0; i < other.rref_basis.rows(); ++i) {
        std::vector<u16> row(other.rref_basis.cols());
        for (u32 j = 0; j < other.rref_basis.cols(); ++j) row[j] = other.rref_basis.at(i, j);
        if (!contains(std::move(row))) return false;
    }
    return true;
}

u64 gaussian_binomial(u32 n, u32 d, u32 q) {
    if (d > n) return 0;
    // Product formula (q^n - q^i) / (q^d - q^i), computed as an exact integer
    // by iterating the recurrence over u128 with an overflow guard.
    u128 num = 1, den = 1;
    u128 qn = 1, qd = 1;
    for (u32 i = 0; i < n; ++i) qn *= q;
    for (u32 i = 0; i < d; ++i) qd *= q;
    u128 qi = 1;
    for (u32 i = 0; i < d; ++i) {
        num *= (qn - qi);
        den *= (qd - qi);
        qi *= q;
        if (num > (u128{1} << 126)) throw cap_exceeded("gaussian_binomial: count too large");
    }
    u128 res = num / den;
    if (res > ~u64{0}) throw cap_exceeded("gaussian_binomial: count exceeds u64");
    return static_cast<u64>(res);
}

u64 subspace_count_total(u32 n, u32 q) {
    u64 total = 0;
    for (u32 d = 0; d <= n; ++d) {
        u64 g = gaussian_binomial(n, d, q);
        if (total + g < total) throw cap_exceeded("subspace_count_total: overflow");
        total += g;
    }
    return total;
}

SubspaceList enumerate_subspaces(u32 n, PrimeField field, u64 cap) {
    const u32 q = field.p();
    const u64 expected = subspace_count_total(n, q);
    if (expected > cap) throw cap_exceeded("enumerate_subspaces: subspace count exceeds cap");

    SubspaceList out;
    out.n = n;
    out.q = q;
    out.by_dim.resize(n + 1);

    Subspace zero;
    zero.rref_basis = Matrix(0, n, field);
    out.by_dim[0].push_back(zero);
    out.total = 1;

    u64 qn = 1;
    for (u32 i = 0; i < n; ++i) qn *= q;

    for (u32 d = 1; d <= n; ++d) {
        std::map<std::vector<u16>, bool> seen;
        for (const Subspace& prev : out.by_dim[d - 1]) {
            for (u64 vr = 0; vr < qn; ++vr) {
                std::vector<u16> v = vector_of_rank(vr, n, q);
                if (prev.contains(v)) continue;
                Matrix stack(d, n, field);
                for (u32 i = 0; i + 1 < d; ++i)
                    for (u32 j = 0; j < n; ++j) stack.at(i, j) = prev.rref_basis.at(i, j);
                for (u32 j = 0; j < n; ++j) stack.at(d - 1, j) = v[j];
                RrefResult rr = rref(stack);
                std::vector<u16> key(rr.r.data().begin(), rr.r.data().end());
                auto [it, fresh] = seen.try_emplace(std::move(key), true);
                (void)it;
                if (!fresh) continue;
                Subspace s;
                s.rref_basis = Matrix(d, n, field);
                for (u32 i = 0; i < d; ++i)
                    for (u32 j = 0; j < n; ++j) s.rref_basis.at(i, j) = rr.r.at(i, j);
                s.pivots = rr.pivots;
                s.ordered_basis = prev.ordered_basis;
                s.ordered_basis.push_back(std::move(v));
                out.by_dim[d].push_back(std::move(s));
                ++out.total;
            }
        }
    }
    return out;
}

} // namespace altiso
