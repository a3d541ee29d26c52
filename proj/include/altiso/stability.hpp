#pragma once

#include <utility>

#include "altiso/tuples.hpp"

namespace altiso {

// im(B) = span of all columns of all B_i equals F_q^s.
bool image_nondegenerate(const MatrixTuple& b);
// ker(B) = intersection of the kernels equals 0.
bool kernel_nondegenerate(const MatrixTuple& b);

// Exhaustive stability check: image-nondegenerate and every nontrivial
// subspace U <= F_q^t satisfies t * dim(B(U)) > s * dim(U). Enumerates all
// subspaces of F_q^t; the trusted oracle for every stability statistic.
bool is_stable(const MatrixTuple& b, u64 subspace_cap = 1'000'000);

// dim(B(U)) >= dim(U) for every subspace U of F_q^t. Fast certificates
// (joint kernel, invertible span element for square tuples) are tried first;
// otherwise falls back to exhaustive enumeration.
bool is_semistable(const MatrixTuple& b, u64 subspace_cap = 1'000'000);

// Exact stability decision for square tuples (s == t) that avoids subspace
// enumeration: with an invertible span element L, the tuple is stable iff
// {L^-1 B_i} has no common nontrivial invariant subspace, decided by spinning
// every nonzero start vector. Falls back to is_stable when no invertible
// span element exists. Requires q^t <= vector_cap.
bool is_stable_square_fast(const MatrixTuple& b, u64 vector_cap = 1u << 22,
                           u64 fallback_subspace_cap = 1'000'000);

// For the corner tuple B of G at split r: dimension of the first-component
// projection of Adj(B), and whether it is at most n - r.
std::pair<u32, bool> property_F_margin(const AlternatingTuple& g, u32 r);

} // namespace altiso
