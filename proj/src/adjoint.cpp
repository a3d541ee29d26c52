#include "altiso/adjoint.hpp"

#include "altiso/errors.hpp"

namespace altiso {

namespace {

// Unknown layout: vec(A) row-major (s^2 entries) followed by vec(D) (t^2).
// One equation per (i, a, b): sum_c A(a,c) B_i(c,b) - sum_c C_i(a,c) D(c,b) = 0.
AdjointBasis solve_adjoint(const MatrixTuple& b, const MatrixTuple& c) {
    const u32 s = b.s, t = b.t, r = b.r();
    const PrimeField F = b.field;
    const u32 cols = s * s + t * t;
    Matrix sys(r * s * t, cols, F);
    u32 row = 0;
    for (u32 i = 0; i < r; ++i) {
        const Matrix& bi = b.mats[i];
        const Matrix& ci = c.mats[i];
        for (u32 a = 0; a < s; ++a) {
            for (u32 bb = 0; bb < t; ++bb) {
                for (u32 cc = 0; cc < s; ++cc) sys.at(row, a * s + cc) = bi.at(cc, bb);
                for (u32 cc = 0; cc < t; ++cc)
                    sys.at(row, s * s + cc * t + bb) = static_cast<u16>(F.neg(ci.at(a, cc)));
                ++row;
            }
        }
    }
    AdjointBasis out;
    out.s = s;
    out.t = t;
    out.field = F;
    for (const std::vector<u16>& v : solve_homogeneous(sys)) {
        Matrix A(s, s, F), D(t, t, F);
        for (u32 i = 0; i < s; ++i)
            for (u32 j = 0; j < s; ++j) A.at(i, j) = v[i * s + j];
        for (u32 i = 0; i < t; ++i)
            for (u32 j = 0; j < t; ++j) D.at(i, j) = v[s * s + i * t + j];
        out.basis.emplace_back(std::move(A), std::move(D));
    }
    return out;
}

} // namespace

AdjointBasis adjoint_algebra(const MatrixTuple& b) { return solve_adjoint(b, b); }

AdjointBasis adjoint_space(const MatrixTuple& b, const MatrixTuple& c) {
    if (b.s != c.s || b.t != c.t || b.r() != c.r() || b.field != c.field)
        throw dimension_mismatch("adjoint_space: tuple shapes differ");
    return solve_adjoint(b, c);
}

RrefResult pi1_projection(const AdjointBasis& adj) {
    const u32 s = adj.s;
    Matrix stack(adj.dim(), s * s, adj.field);
    for (u32 i = 0; i < adj.dim(); ++i) {
        const Matrix& A = adj.basis[i].first;
        for (u32 j = 0; j < s * s; ++j) stack.at(i, j) = A.data()[j];
    }
    return rref(stack);
}

u32 pi1_dimension(const AdjointBasis& adj) { return pi1_projection(adj).rank; }

Matrix pi1_combination(const RrefResult& proj, const std::vector<u16>& coeffs, u32 s, PrimeField f) {
    Matrix A(s, s, f);
    for (u32 k = 0; k < coeffs.size(); ++k) {
        const u32 c = coeffs[k];
        if (!c) continue;
        for (u32 e = 0; e < s * s; ++e)
            A.data()[e] =
                static_cast<u16>(f.reduce(static_cast<u64>(A.data()[e]) + static_cast<u64>(c) * proj.r.at(k, e)));
    }
    return A;
}

} // namespace altiso
