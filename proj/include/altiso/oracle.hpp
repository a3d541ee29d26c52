#pragma once

#include <vector>

#include "altiso/tuples.hpp"

namespace altiso {

// Exhaustive scan of GL(n, q): every A with A^t span(G) A = span(H), sorted
// lexicographically by row-major entries. With h == g this is the autometry
// group. Scan partitions by the first column for `threads` workers.
std::vector<Matrix> brute_force_iso(const AlternatingTuple& g, const AlternatingTuple& h,
                                    u64 gl_cap = 10'000'000, u32 threads = 1);

} // namespace altiso
