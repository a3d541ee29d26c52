#pragma once

#include <vector>

#include "altiso/tuples.hpp"

namespace altiso {

// Explicit multiplication table of a finite group; elements are indices into
// a fixed enumeration. Identity is element 0.
struct FiniteGroupTable {
    u32 order = 0;
    std::vector<u32> mul; // order x order, row-major

    u32 at(u32 a, u32 b) const { return mul[static_cast<size_t>(a) * order + b]; }
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    u32 element_order(u32 a) const;

    bool check_axioms() const;          // identity at 0, inverses, associativity
    bool check_exponent(u32 p) const;   // g^p = id for all g
    bool check_class2() const;          // all commutators central
    bool is_abelian() const;
    std::vector<u32> commutator_subgroup() const; // sorted element list
};

// Group on F_p^m x F_p^n with
//   (v1, u1) * (v2, u2) = (v1 + v2 + (1/2) b(u1, u2), u1 + u2)
// where b(u1, u2)_k = u1^t G_k u2. Element index: mixed radix, v-part major.
// Odd characteristic only (1/2 must exist).
FiniteGroupTable baer_group(const AlternatingTuple& g, u64 order_cap = 2187);

// Exhaustive isomorphism test over the tables: backtracking on images of a
// generating sequence with element-order pruning and incremental closure.
bool group_iso_micro(const FiniteGroupTable& t1, const FiniteGroupTable& t2, u64 order_cap = 729);

} // namespace altiso
