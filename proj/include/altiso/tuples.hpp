#pragma once

#include <vector>

#include "altiso/linalg.hpp"
#include "altiso/matrix.hpp"

namespace altiso {

// Ordered tuple of equally-shaped s x t matrices.
struct MatrixTuple {
    u32 s = 0, t = 0;
    PrimeField field{2};
    std::vector<Matrix> mats;

    MatrixTuple() = default;
    MatrixTuple(u32 s_, u32 t_, PrimeField f, std::vector<Matrix> m);

    u32 r() const { return static_cast<u32>(mats.size()); }

    MatrixTuple transposed() const;
};

// Tuple of n x n alternating matrices: zero diagonal and A^t = -A.
// Both conditions are checked; in characteristic 2 the diagonal condition
// is not implied by skew-symmetry.
struct AlternatingTuple {
    u32 n = 0;
    PrimeField field{2};
    std::vector<Matrix> mats;

    AlternatingTuple() = default;
    AlternatingTuple(u32 n_, PrimeField f, std::vector<Matrix> m);

    u32 m() const { return static_cast<u32>(mats.size()); }

    static bool matrix_is_alternating(const Matrix& a);
};

// Flatten helpers: full row-major coordinates, and strictly-upper-triangular
// coordinates in pair order (0,1),(0,2),...,(n-2,n-1) for alternating matrices.
std::vector<u16> flatten_full(const Matrix& a);
std::vector<u16> flatten_strict_upper(const Matrix& a);
Matrix unflatten_strict_upper(const std::vector<u16>& v, u32 n, PrimeField f);

// Canonical span representation: RREF of the flattened tuple. Two tuples span
// the same space iff their canonical bases are equal.
struct SpanBasis {
    u32 width = 0;
    u32 dim = 0;
    RrefResult rr; // rank == dim; rows beyond dim are zero

    bool contains(std::vector<u16> coords) const;
    bool operator==(const SpanBasis& o) const;
};

SpanBasis span_basis_full(const MatrixTuple& x);
SpanBasis span_basis_alternating(const AlternatingTuple& x);

// True iff the linear spans of X and Y coincide inside M(s x t, q).
bool span_equal(const MatrixTuple& x, const MatrixTuple& y);
bool span_equal(const AlternatingTuple& x, const AlternatingTuple& y);

// A^t * G_k * A applied slot-wise (an isometry action on the tuple).
AlternatingTuple congruence_tuple(const AlternatingTuple& g, const Matrix& a);

// Linear combination sum_k v[k] * G_k.
Matrix tuple_lincomb(const std::vector<Matrix>& mats, const std::vector<u16>& v, u32 rows, u32 cols,
                     PrimeField f);

// Corner re-slicing: from an n x n x m alternating tuple and a split 1 <= r < n,
// produce the r-tuple B of (n-r) x m matrices with B_i(j, k) = G_k(i, r+j).
MatrixTuple flip_slice(const AlternatingTuple& g, u32 r);

} // namespace altiso
