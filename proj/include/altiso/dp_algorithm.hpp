#pragma once

#include "altiso/permgroup.hpp"
#include "altiso/subspaces.hpp"
#include "altiso/tuples.hpp"

namespace altiso {

// {g in G : g(V) = W} for subspaces of equal dimension, filled in over a
// table of subspaces of W ordered by dimension, refining with pointwise
// transporters and reducing generators after every union.
Coset subspace_transporter(const GroupPtr& group, const Subspace& v, const Subspace& w,
                           const SubspaceList& subs);

// {pi in C : a^t A a = B for the part-`part` matrix action a of pi}, for
// alternating forms A, B on F_q^{n_part}. Table cells over subspaces U store
// the coset mapping (E_d, B|E_d) onto (U, A-values on images); each step adds
// one pointwise transporter and one transporter of the new basis vector's
// form values against the earlier ones.
Coset alt_form_transporter_on(const Coset& c, const Matrix& a, const Matrix& b, u32 part,
                              const SubspaceList& subs);

// {g in H : g^t A g = B} over a matrix group acting on F_q^n.
Coset alt_matrix_transporter(const GroupPtr& group, const Matrix& a, const Matrix& b,
                             const SubspaceList& subs);

struct DpResult {
    PointDomain dom;      // part 0: F_q^n, part 1: F_q^m
    Coset pairs;          // empty, or every (g, h) with g^t span(G) g = span(H)
};

// Full isometry coset between the spans of two m-tuples, via the table over
// subspaces of F_q^m whose cells hold partial-isometry cosets of the pair
// group GL(n,q) x GL(m,q) acting on F_q^n + F_q^m. The g-components of the
// returned coset's elements form exactly Iso(span G, span H).
DpResult dp_isometry(const AlternatingTuple& g, const AlternatingTuple& h,
                     u64 domain_cap = 1u << 14, u64 subspace_cap = 1'000'000);

// Distinct g-components of the result, sorted by entries (micro scale only).
std::vector<Matrix> dp_projected_isometries(const DpResult& r, u64 element_cap = 2'000'000);

// |Iso| = |pairs| / |{pairs elements with trivial g-component}|.
u128 dp_isometry_count(const DpResult& r);

} // namespace altiso
