#pragma once

#include <vector>

#include "altiso/tuples.hpp"

namespace altiso {

struct MainOptions {
    bool find_one = false;       // stop at the first verified isometry
    u64 ind_cap = 200'000'000;   // individualisation stream size cap
    u64 pi1_enum_cap = 4'194'304; // q^dim candidates per individualisation
    u32 threads = 1;
};

struct MainStats {
    u64 individualisations = 0;
    u64 candidates = 0; // invertible projected elements tested
};

struct IsometryResult {
    enum class Kind { NotPropertyF, IsoSet };
    Kind kind = Kind::IsoSet;
    std::vector<Matrix> isometries; // sorted by row-major entries; empty = non-isometric
    MainStats stats;
    u32 r = 0;
    u32 gate_dim = 0; // dim of the first-component projection of Adj(B)
};

// Smallest split 1 <= r < n with r*m >= 4*(n-r) when n-r >= m, or
// r*(n-r) >= 4*m when m >= n-r; throws infeasible when no r qualifies.
u32 choose_r(u32 n, u32 m);

// Individualisation search for Iso(span G, span H). Returns NotPropertyF when
// the gate dim exceeds n - r (a certificate about G alone); otherwise the
// complete, deduplicated isometry set, each member verified by span equality.
IsometryResult main_isometry(const AlternatingTuple& g, const AlternatingTuple& h, u32 r,
                             const MainOptions& opts = {});

} // namespace altiso
