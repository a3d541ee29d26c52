#pragma once

#include <utility>
#include <vector>

#include "altiso/linalg.hpp"
#include "altiso/tuples.hpp"

namespace altiso {

// Linear basis of the solution space {(A, D) in M(s) + M(t) : A B_i = C_i D}.
struct AdjointBasis {
    u32 s = 0, t = 0;
    PrimeField field{2};
    std::vector<std::pair<Matrix, Matrix>> basis;

    u32 dim() const { return static_cast<u32>(basis.size()); }
};

// Adj(B) = {(A, D) : A B_i = B_i D for all i}.
AdjointBasis adjoint_algebra(const MatrixTuple& b);

// Adj(B, C) = {(A, D) : A B_i = C_i D for all i}.
AdjointBasis adjoint_space(const MatrixTuple& b, const MatrixTuple& c);

// First-component projection: RREF basis of span{A : (A, D) in the basis}.
// Rows are flattened s x s matrices; dimension = rank.
RrefResult pi1_projection(const AdjointBasis& adj);
u32 pi1_dimension(const AdjointBasis& adj);

// A-part matrix of a coefficient combination over the projection basis rows.
Matrix pi1_combination(const RrefResult& proj, const std::vector<u16>& coeffs, u32 s, PrimeField f);

} // namespace altiso
