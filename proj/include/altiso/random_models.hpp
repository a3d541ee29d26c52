#pragma once

#include "altiso/rng.hpp"
#include "altiso/tuples.hpp"

namespace altiso {

// m independent uniform alternating matrices: strict upper triangle uniform,
// zero diagonal, lower triangle the negated mirror.
AlternatingTuple sample_nait(u32 n, u32 m, PrimeField field, Rng& rng);

// Uniform m-dimensional alternating space, represented by a spanning tuple:
// rejection-samples the naive model until the m coordinate vectors are
// linearly independent. `rejections`, when given, receives the number of
// rejected draws.
AlternatingTuple sample_liner(u32 n, u32 m, PrimeField field, Rng& rng, u32* rejections = nullptr);

// r independent uniform s x t matrices.
MatrixTuple sample_bipnait(u32 s, u32 t, u32 r, PrimeField field, Rng& rng);

} // namespace altiso
