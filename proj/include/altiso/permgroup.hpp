#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "altiso/matrix.hpp"

namespace altiso {

// Tagged union of vector-space parts: part p holds the q^{n_p} points of
// F_q^{n_p}, indexed lexicographically after the part offset.
struct PointDomain {
    PrimeField field{2};
    std::vector<u32> dims;
    std::vector<u32> offsets;
    u32 total = 0;

    PointDomain() = default;
    PointDomain(PrimeField f, std::vector<u32> dims_, u64 point_cap = 1u << 14);

    u32 parts() const { return static_cast<u32>(dims.size()); }
    u32 part_size(u32 p) const { return (p + 1 < parts() ? offsets[p + 1] : total) - offsets[p]; }
    u32 index(u32 part, const std::vector<u16>& v) const;
    std::vector<u16> vector_of(u32 part, u32 global_index) const;

    bool operator==(const PointDomain& o) const { return field == o.field && dims == o.dims; }
};

using Perm = std::vector<u32>;

Perm perm_identity(u32 n);
bool perm_is_identity(const Perm& g);
Perm perm_compose(const Perm& f, const Perm& g); // x -> f(g(x))
Perm perm_inverse(const Perm& f);

// Permutation induced by one matrix per part acting on that part's vectors.
Perm perm_from_matrices(const PointDomain& dom, const std::vector<Matrix>& per_part);
// Matrix recovered from the images of the standard basis points of a part.
Matrix matrix_of_part(const PointDomain& dom, const Perm& g, u32 part);

// Transvections plus a primitive scalar: a generating set of GL(n, q).
std::vector<Matrix> gl_generators(u32 n, PrimeField f);

// Stabilizer chain (base and strong generating set), built by a deterministic
// Schreier-Sims with lexicographic base selection; `base_hint` points are
// preferred as base points, in order, whenever they are moved.
class PermGroup {
public:
    struct Level {
        u32 base = 0;
        std::vector<u32> gen_idx;  // strong generators active at this level
        std::vector<u32> orbit;    // discovery order, orbit[0] == base
        std::vector<i32> pos;      // point -> orbit position, -1 outside
        std::vector<u32> from;     // Schreier vector: predecessor point
        std::vector<u32> via;      // Schreier vector: generator index
    };

    static std::shared_ptr<const PermGroup> build(const PointDomain& dom, std::vector<Perm> gens,
                                                  const std::vector<u32>& base_hint = {});
    static std::shared_ptr<const PermGroup> trivial(const PointDomain& dom);

    const PointDomain& domain() const { return dom_; }
    const std::vector<Perm>& strong_generators() const { return sgens_; }
    const std::vector<Level>& levels() const { return levels_; }
    u128 order() const { return order_; }
    std::string order_str() const;

    bool contains(const Perm& g) const;

    // Transversal element mapping the level's base to `point`.
    Perm transversal(u32 level, u32 point) const;

    // Generators of the stabilizer of the level-0 base point (the rest of the
    // chain); valid by the strong generating property.
    std::vector<Perm> level1_generators() const;

    // Visit all elements (product of transversals, DFS order); throws
    // cap_exceeded if the order exceeds `cap`.
    void for_each_element(u64 cap, const std::function<void(const Perm&)>& fn) const;

private:
    PointDomain dom_;
    std::vector<Perm> sgens_;
    std::vector<Level> levels_;
    u128 order_ = 1;

    friend struct BsgsBuilder;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

// Left coset rep * K = {rep o k}; empty is a distinct value.
struct Coset {
    bool empty = true;
    Perm rep;
    GroupPtr group;

    static Coset none() { return Coset{}; }
    static Coset of(Perm rep, GroupPtr g) { return Coset{false, std::move(rep), std::move(g)}; }
    static Coset full(GroupPtr g);

    u128 size() const { return empty ? 0 : group->order(); }
    void for_each_element(u64 cap, const std::function<void(const Perm&)>& fn) const;
};

// {g in C : g(x) = y}; empty coset when y is not reachable.
Coset pointwise_transporter(const Coset& c, u32 x, u32 y);

// Membership-filtered generating set: same group, few generators.
std::vector<Perm> sims_reduce(const std::vector<Perm>& gens, const PointDomain& dom);

// Union of cosets known to form a single coset (first term's rep is kept).
Coset union_cosets(const std::vector<Coset>& terms, const PointDomain& dom);

// {g^-1 : g in C} as a left coset (rep^-1 times the conjugated group).
Coset coset_inverse(const Coset& c, const PointDomain& dom);

std::string u128_to_string(u128 v);

} // namespace altiso
