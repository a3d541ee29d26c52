#pragma once

#include <vector>

#include "altiso/linalg.hpp"
#include "altiso/matrix.hpp"

namespace altiso {

// A subspace of F_q^n with its canonical RREF basis (used as identity key)
// and the ordered basis it was discovered with.
struct Subspace {
    Matrix rref_basis;                         // dim x n, RREF rows
    std::vector<u32> pivots;                   // pivot columns of rref_basis
    std::vector<std::vector<u16>> ordered_basis;

    u32 dim() const { return rref_basis.rows(); }
    bool contains(std::vector<u16> v) const;
    bool contains_subspace(const Subspace& other) const;
};

struct SubspaceList {
    u32 n = 0;
    u32 q = 2;
    std::vector<std::vector<Subspace>> by_dim; // by_dim[d], discovery order
    u64 total = 0;

    const Subspace& full() const { return by_dim[n][0]; }
};

// All subspaces of F_q^n, built dimension by dimension: every (d-1)-subspace
// is extended by every vector outside it and duplicates are dropped via the
// canonical RREF key. Discovery order is deterministic.
SubspaceList enumerate_subspaces(u32 n, PrimeField field, u64 cap = 1'000'000);

// Number of d-dimensional subspaces of F_q^n; throws cap_exceeded on overflow.
u64 gaussian_binomial(u32 n, u32 d, u32 q);

// Total number of subspaces of F_q^n (all dimensions).
u64 subspace_count_total(u32 n, u32 q);

// Lexicographic rank <-> vector helpers (first coordinate most significant).
std::vector<u16> vector_of_rank(u64 r, u32 n, u32 q);
u64 rank_of_vector(const std::vector<u16>& v, u32 q);

} // namespace altiso
