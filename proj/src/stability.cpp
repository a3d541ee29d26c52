#include "altiso/stability.hpp"

#include "altiso/adjoint.hpp"
#include "altiso/errors.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

bool image_nondegenerate(const MatrixTuple& b) {
    // Columns of all B_i side by side.
    Matrix cat(b.s, b.t * b.r(), b.field);
    for (u32 i = 0; i < b.r(); ++i)
        for (u32 row = 0; row < b.s; ++row)
            for (u32 col = 0; col < b.t; ++col) cat.at(row, i * b.t + col) = b.mats[i].at(row, col);
    return rank(cat) == b.s;
}

bool kernel_nondegenerate(const MatrixTuple& b) {
    Matrix cat(b.s * b.r(), b.t, b.field);
    for (u32 i = 0; i < b.r(); ++i)
        for (u32 row = 0; row < b.s; ++row)
            for (u32 col = 0; col < b.t; ++col) cat.at(i * b.s + row, col) = b.mats[i].at(row, col);
    return rank(cat) == b.t;
}

namespace {

// dim of span{B_i u : u in basis of U}, with an optional early stop once the
// dimension exceeds `enough` (pass s to disable).
u32 image_dim(const MatrixTuple& b, const Subspace& u, u32 enough) {
    RowSpace img(b.s, b.field);
    for (u32 i = 0; i < b.r(); ++i) {
        for (u32 k = 0; k < u.dim(); ++k) {
            std::vector<u16> col(u.rref_basis.cols());
            for (u32 j = 0; j < u.rref_basis.cols(); ++j) col[j] = u.rref_basis.at(k, j);
            img.insert(b.mats[i].apply(col));
            if (img.dim() > enough) return img.dim();
        }
    }
    return img.dim();
}

// First invertible element of span{B_i}, scanning coefficient vectors in
// lexicographic order; nullopt if the whole span is singular.
std::optional<Matrix> invertible_span_element(const MatrixTuple& b) {
    if (b.s != b.t) return std::nullopt;
    const u32 q = b.field.p(), r = b.r();
    u64 combos = 1;
    for (u32 i = 0; i < r; ++i) {
        combos *= q;
        if (combos > (1u << 20)) throw cap_exceeded("invertible_span_element: q^r too large");
    }
    for (u64 code = 1; code < combos; ++code) {
        std::vector<u16> coeff = vector_of_rank(code, r, q);
        Matrix L = tuple_lincomb(b.mats, coeff, b.s, b.t, b.field);
        if (is_invertible(L)) return L;
    }
    return std::nullopt;
}

} // namespace

bool is_stable(const MatrixTuple& b, u64 subspace_cap) {
    const u32 s = b.s, t = b.t;
    if (t == 0 || b.r() == 0) return false;
    if (!image_nondegenerate(b)) return false;
    if (subspace_count_total(t, b.field.p()) > subspace_cap)
        throw cap_exceeded("is_stable: subspace count exceeds cap");
    SubspaceList subs = enumerate_subspaces(t, b.field, subspace_cap);
    for (u32 d = 1; d < t; ++d) {
        // need t * dim(B(U)) > s * d; stop growing the image once that holds
        const u32 need = (static_cast<u64>(s) * d) / t; // dim must exceed s*d/t
        for (const Subspace& u : subs.by_dim[d]) {
            const u32 got = image_dim(b, u, need);
            if (static_cast<u64>(t) * got <= static_cast<u64>(s) * d) return false;
        }
    }
    return true;
}

bool is_semistable(const MatrixTuple& b, u64 subspace_cap) {
    const u32 t = b.t;
    if (t == 0) return true;
    if (b.r() == 0) return false;
    // Full space: dim(B(F^t)) >= t.
    if (!kernel_nondegenerate(b)) return false; // a kernel vector gives a shrinking line
    {
        Matrix cat(b.s, b.t * b.r(), b.field);
        for (u32 i = 0; i < b.r(); ++i)
            for (u32 row = 0; row < b.s; ++row)
                for (u32 col = 0; col < b.t; ++col) cat.at(row, i * b.t + col) = b.mats[i].at(row, col);
        if (rank(cat) < t) return false;
    }
    // An invertible span element dominates every subspace at ratio 1.
    if (b.s == b.t) {
        try {
            if (invertible_span_element(b)) return true;
        } catch (const cap_exceeded&) {
            // span too large to scan; fall through to enumeration
        }
    }
    if (subspace_count_total(t, b.field.p()) > subspace_cap)
        throw cap_exceeded("is_semistable: subspace count exceeds cap");
    SubspaceList subs = enumerate_subspaces(t, b.field, subspace_cap);
    for (u32 d = 1; d < t; ++d) {
        for (const Subspace& u : subs.by_dim[d]) {
            const u32 got = image_dim(b, u, d - 1); // stop once dim reaches d
            if (got < d) return false;
        }
    }
    return true;
}

namespace {

// Closure of {start} under the action of mats, tracked as a growing row
// space; true iff the closure is the whole space.
bool spins_to_full(const std::vector<Matrix>& mats, const std::vector<u16>& start, u32 t) {
    RowSpace basis(t, mats[0].field());
    std::vector<std::vector<u16>> work;
    basis.insert(start);
    work.push_back(start);
    while (!work.empty()) {
        std::vector<u16> v = std::move(work.back());
        work.pop_back();
        for (const Matrix& m : mats) {
            std::vector<u16> w = m.apply(v);
            if (basis.insert(w)) {
                if (basis.dim() == t) return true;
                work.push_back(std::move(w));
            }
        }
    }
    return basis.dim() == t;
}

// GF(2) specialisation with bitmask vectors (t <= 64).
bool spins_to_full_gf2(const std::vector<std::vector<u64>>& cols, u64 start, u32 t) {
    std::vector<u64> basis(t, 0); // basis[i]: vector with leading bit i, or 0
    u32 dim = 0;
    std::vector<u64> work;
    auto insert = [&](u64 v) -> bool {
        for (u32 bit = t; bit-- > 0;) {
            if (!((v >> bit) & 1)) continue;
            if (!basis[bit]) {
                basis[bit] = v;
                ++dim;
                return true;
            }
            v ^= basis[bit];
        }
        return false;
    };
    insert(start);
    work.push_back(start);
    while (!work.empty() && dim < t) {
        u64 v = work.back();
        work.pop_back();
        for (const std::vector<u64>& mc : cols) {
            u64 w = 0;
            u64 vv = v;
            while (vv) {
                const u32 j = static_cast<u32>(__builtin_ctzll(vv));
                w ^= mc[j];
                vv &= vv - 1;
            }
            if (insert(w)) {
                if (dim == t) return true;
                work.push_back(w);
            }
        }
    }
    return dim == t;
}

} // namespace

bool is_stable_square_fast(const MatrixTuple& b, u64 vector_cap, u64 fallback_subspace_cap) {
    if (b.s != b.t) return is_stable(b, fallback_subspace_cap);
    const u32 t = b.t;
    if (t == 0 || b.r() == 0) return false;
    std::optional<Matrix> L;
    try {
        L = invertible_span_element(b);
    } catch (const cap_exceeded&) {
        L = std::nullopt;
    }
    if (!L) return is_stable(b, fallback_subspace_cap);
    if (t == 1) return true; // invertible 1x1 span element, no nontrivial subspaces

    const Matrix linv = *inverse(*L);
    std::vector<Matrix> action;
    action.reserve(b.r());
    for (const Matrix& bi : b.mats) action.push_back(linv.mul(bi));

    u64 total = 1;
    for (u32 i = 0; i < t; ++i) {
        total *= b.field.p();
        if (total > vector_cap) throw cap_exceeded("is_stable_square_fast: q^t exceeds cap");
    }

    if (b.field.p() == 2 && t <= 64) {
        // columns of each action matrix as bitmasks (bit j = row j)
        std::vector<std::vector<u64>> cols(action.size(), std::vector<u64>(t, 0));
        for (size_t m = 0; m < action.size(); ++m)
            for (u32 j = 0; j < t; ++j)
                for (u32 i = 0; i < t; ++i)
                    if (action[m].at(i, j)) cols[m][j] |= u64{1} << i;
        for (u64 v = 1; v < total; ++v)
            if (!spins_to_full_gf2(cols, v, t)) return false;
        return true;
    }
    for (u64 code = 1; code < total; ++code) {
        if (!spins_to_full(action, vector_of_rank(code, t, b.field.p()), t)) return false;
    }
    return true;
}

std::pair<u32, bool> property_F_margin(const AlternatingTuple& g, u32 r) {
    if (r < 1 || r >= g.n) throw std::invalid_argument("property_F_margin: split out of range");
    MatrixTuple b = flip_slice(g, r);
    const u32 dim = pi1_dimension(adjoint_algebra(b));
    return {dim, dim <= g.n - r};
}

} // namespace altiso
