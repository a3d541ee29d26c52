#include "altiso/random_models.hpp"

#include "altiso/errors.hpp"

namespace altiso {

AlternatingTuple sample_nait(u32 n, u32 m, PrimeField field, Rng& rng) {
    const u32 q = field.p();
    AlternatingTuple g;
    g.n = n;
    g.field = field;
    g.mats.reserve(m);
    for (u32 k = 0; k < m; ++k) {
        Matrix a(n, n, field);
        for (u32 i = 0; i < n; ++i)
            for (u32 j = i + 1; j < n; ++j) {
                const u16 v = static_cast<u16>(rng.below(q));
                a.at(i, j) = v;
                a.at(j, i) = static_cast<u16>(field.neg(v));
            }
        g.mats.push_back(std::move(a));
    }
    return g;
}

AlternatingTuple sample_liner(u32 n, u32 m, PrimeField field, Rng& rng, u32* rejections) {
    const u32 bigN = n * (n - 1) / 2;
    if (m > bigN) throw dimension_too_large("sample_liner: m exceeds dim of the alternating space");
    u32 rejected = 0;
    for (;;) {
        AlternatingTuple g = sample_nait(n, m, field, rng);
        SpanBasis sb = span_basis_alternating(g);
        if (sb.dim == m) {
            if (rejections) *rejections = rejected;
            return g;
        }
        ++rejected;
    }
}

MatrixTuple sample_bipnait(u32 s, u32 t, u32 r, PrimeField field, Rng& rng) {
    const u32 q = field.p();
    std::vector<Matrix> mats;
    mats.reserve(r);
    for (u32 k = 0; k < r; ++k) {
        Matrix a(s, t, field);
        for (u32 i = 0; i < s; ++i)
            for (u32 j = 0; j < t; ++j) a.at(i, j) = static_cast<u16>(rng.below(q));
        mats.push_back(std::move(a));
    }
    return MatrixTuple(s, t, field, std::move(mats));
}

} // namespace altiso
