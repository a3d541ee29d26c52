#include "altiso/dp_algorithm.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "altiso/errors.hpp"

namespace altiso {

namespace {

using CellKey = std::vector<u16>;

CellKey key_of(const Subspace& s) { return s.rref_basis.data(); }

// Vectors of U not in U', sorted by lexicographic rank.
std::vector<std::vector<u16>> coset_vectors(const Subspace& u, const Subspace& uprime, u32 q) {
    const u32 d = u.dim();
    const u32 n = u.rref_basis.cols();
    const PrimeField F = u.rref_basis.field();
    u64 combos = 1;
    for (u32 i = 0; i < d; ++i) combos *= q;
    std::vector<std::pair<u64, std::vector<u16>>> all;
    for (u64 code = 0; code < combos; ++code) {
        std::vector<u16> coeff = vector_of_rank(code, d, q);
        std::vector<u16> v(n, 0);
        for (u32 k = 0; k < d; ++k) {
            if (!coeff[k]) continue;
            for (u32 j = 0; j < n; ++j)
                v[j] = static_cast<u16>(F.add(v[j], F.mul(coeff[k], u.rref_basis.at(k, j))));
        }
        if (uprime.contains(v)) continue;
        all.emplace_back(rank_of_vector(v, q), std::move(v));
    }
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<u16>> out;
    out.reserve(all.size());
    for (auto& pr : all) out.push_back(std::move(pr.second));
    return out;
}

u32 basis_point(const PointDomain& dom, u32 part, u32 i) {
    std::vector<u16> e(dom.dims[part], 0);
    e[i] = 1;
    return dom.index(part, e);
}

// Form value u^t A v.
u32 form_value(const Matrix& a, const std::vector<u16>& u, const std::vector<u16>& v) {
    const PrimeField& F = a.field();
    u64 acc = 0;
    for (u32 i = 0; i < a.rows(); ++i) {
        if (!u[i]) continue;
        u64 row = 0;
        for (u32 j = 0; j < a.cols(); ++j) row += static_cast<u64>(a.at(i, j)) * v[j];
        acc += static_cast<u64>(u[i]) * F.reduce(row);
    }
    return F.reduce(acc);
}

// Refine C to {pi : A(g e_i, u) = B(e_i, e_d) for i < d}, where g is the
// part-`part` action. The values A(g e_i, u) transform by the transposed
// inverse of g's restriction matrix on E_{d-1}, so the condition is a
// pointwise transporter in that derived action on F_q^{d-1}; it is run by a
// stabilizer-chain build over the domain extended with the derived points.
Coset column_refine(const Coset& c, u32 d, const Matrix& a, const Matrix& b,
                    const std::vector<u16>& u_vec, u32 part) {
    if (c.empty) return Coset::none();
    const u32 k = d - 1; // number of earlier basis vectors
    if (k == 0) return c;
    const PointDomain& dom = c.group->domain();
    const PrimeField F = dom.field;
    const u32 q = F.p();

    std::vector<u16> target(k), current(k);
    for (u32 i = 0; i < k; ++i) {
        target[i] = b.at(i, d - 1); // B(e_i, e_d)
        std::vector<u16> gi = dom.vector_of(part, c.rep[basis_point(dom, part, i)]);
        current[i] = static_cast<u16>(form_value(a, gi, u_vec));
    }

    if (c.group->order() == 1) {
        if (current == target) return c;
        return Coset::none();
    }

    // Extended domain: original parts plus the derived F_q^k part.
    std::vector<u32> dims = dom.dims;
    dims.push_back(k);
    PointDomain ext(F, dims, 1u << 20);
    const u32 extra = static_cast<u32>(dims.size()) - 1;

    std::vector<Perm> ext_gens;
    for (const Perm& s : c.group->strong_generators()) {
        // restriction matrix of s's part action on the first k basis vectors
        Matrix m(k, k, F);
        for (u32 j = 0; j < k; ++j) {
            std::vector<u16> img = dom.vector_of(part, s[basis_point(dom, part, j)]);
            for (u32 i = 0; i < k; ++i) m.at(i, j) = img[i];
        }
        Matrix minv_t = inverse(m)->transpose();
        Perm e(ext.total);
        for (u32 x = 0; x < dom.total; ++x) e[x] = s[x];
        const u32 off = ext.offsets[extra];
        const u32 sz = ext.part_size(extra);
        for (u32 x = 0; x < sz; ++x) {
            std::vector<u16> v = vector_of_rank(x, k, q);
            e[off + x] = off + static_cast<u32>(rank_of_vector(minv_t.apply(v), q));
        }
        ext_gens.push_back(std::move(e));
    }
    const u32 b_pt = ext.offsets[extra] + static_cast<u32>(rank_of_vector(target, q));
    const u32 t_pt = ext.offsets[extra] + static_cast<u32>(rank_of_vector(current, q));

    GroupPtr extg = PermGroup::build(ext, ext_gens, {b_pt});
    if (extg->levels().empty() || extg->levels()[0].base != b_pt) {
        // derived action fixes the target vector
        if (b_pt == t_pt) return c;
        return Coset::none();
    }
    const auto& L0 = extg->levels()[0];
    if (L0.pos[t_pt] < 0) return Coset::none();
    Perm k0 = extg->transversal(0, t_pt);
    Perm k0_orig(dom.total);
    for (u32 x = 0; x < dom.total; ++x) k0_orig[x] = k0[x];
    std::vector<Perm> stab;
    for (const Perm& s : extg->level1_generators()) {
        Perm so(dom.total);
        for (u32 x = 0; x < dom.total; ++x) so[x] = s[x];
        stab.push_back(std::move(so));
    }
    return Coset::of(perm_compose(c.rep, k0_orig), PermGroup::build(dom, stab));
}

} // namespace

Coset alt_form_transporter_on(const Coset& c, const Matrix& a, const Matrix& b, u32 part,
                              const SubspaceList& subs) {
    if (c.empty) return Coset::none();
    if (!AlternatingTuple::matrix_is_alternating(a) || !AlternatingTuple::matrix_is_alternating(b))
        throw std::invalid_argument("alt_form_transporter_on: forms must be alternating");
    const PointDomain& dom = c.group->domain();
    const u32 n = dom.dims[part];
    if (a.rows() != n || b.rows() != n)
        throw dimension_mismatch("alt_form_transporter_on: form size differs from the part");
    if (a.is_zero() && b.is_zero()) return c;
    if (rank(a) != rank(b)) return Coset::none(); // congruence preserves rank

    std::map<CellKey, Coset> prev, cur;
    prev[key_of(subs.by_dim[0][0])] = c;
    for (u32 d = 1; d <= n; ++d) {
        cur.clear();
        for (const Subspace& u : subs.by_dim[d]) {
            std::vector<Coset> terms;
            for (const Subspace& up : subs.by_dim[d - 1]) {
                auto it = prev.find(key_of(up));
                if (it == prev.end() || it->second.empty) continue;
                if (!u.contains_subspace(up)) continue;
                const u32 e_pt = basis_point(dom, part, d - 1);
                for (const std::vector<u16>& uv : coset_vectors(u, up, dom.field.p())) {
                    Coset t1 = pointwise_transporter(it->second, e_pt, dom.index(part, uv));
                    if (t1.empty) continue;
                    Coset t2 = column_refine(t1, d, a, b, uv, part);
                    if (!t2.empty) terms.push_back(std::move(t2));
                }
            }
            Coset cell = union_cosets(terms, dom);
            if (!cell.empty) cur[key_of(u)] = std::move(cell);
        }
        prev = std::move(cur);
    }
    auto it = prev.find(key_of(subs.full()));
    if (it == prev.end()) return Coset::none();
    return it->second;
}

Coset alt_matrix_transporter(const GroupPtr& group, const Matrix& a, const Matrix& b,
                             const SubspaceList& subs) {
    return alt_form_transporter_on(Coset::full(group), a, b, 0, subs);
}

Coset subspace_transporter(const GroupPtr& group, const Subspace& v, const Subspace& w,
                           const SubspaceList& subs) {
    if (v.dim() != w.dim()) throw dimension_mismatch("subspace_transporter: dimensions differ");
    const PointDomain& dom = group->domain();
    const u32 k = v.dim();
    if (k == 0) return Coset::full(group);

    std::map<CellKey, Coset> prev, cur;
    prev[key_of(subs.by_dim[0][0])] = Coset::full(group);
    for (u32 d = 1; d <= k; ++d) {
        // the ordered basis of V is its canonical RREF basis
        std::vector<u16> vd(v.rref_basis.cols());
        for (u32 j = 0; j < v.rref_basis.cols(); ++j) vd[j] = v.rref_basis.at(d - 1, j);
        const u32 v_pt = dom.index(0, vd);
        cur.clear();
        for (const Subspace& u : subs.by_dim[d]) {
            if (!w.contains_subspace(u)) continue;
            std::vector<Coset> terms;
            for (const Subspace& up : subs.by_dim[d - 1]) {
                auto it = prev.find(key_of(up));
                if (it == prev.end() || it->second.empty) continue;
                if (!u.contains_subspace(up)) continue;
                for (const std::vector<u16>& uv : coset_vectors(u, up, dom.field.p())) {
                    Coset t = pointwise_transporter(it->second, v_pt, dom.index(0, uv));
                    if (!t.empty) terms.push_back(std::move(t));
                }
            }
            Coset cell = union_cosets(terms, dom);
            if (!cell.empty) cur[key_of(u)] = std::move(cell);
        }
        prev = std::move(cur);
    }
    auto it = prev.find(key_of(w));
    if (it == prev.end()) return Coset::none();
    return it->second;
}

DpResult dp_isometry(const AlternatingTuple& g, const AlternatingTuple& h, u64 domain_cap,
                     u64 subspace_cap) {
    if (g.n != h.n || g.field != h.field || g.m() != h.m())
        throw dimension_mismatch("dp_isometry: inputs must share (n, m, q)");
    const u32 n = g.n, m = g.m();
    const PrimeField F = g.field;

    PointDomain dom(F, {n, m}, domain_cap);
    std::vector<Perm> gens;
    for (const Matrix& a : gl_generators(n, F))
        gens.push_back(perm_from_matrices(dom, {a, Matrix::identity(m, F)}));
    for (const Matrix& b : gl_generators(m, F))
        gens.push_back(perm_from_matrices(dom, {Matrix::identity(n, F), b}));
    GroupPtr pairs = PermGroup::build(dom, sims_reduce(gens, dom));

    SubspaceList subs_n = enumerate_subspaces(n, F, subspace_cap);
    SubspaceList subs_m = enumerate_subspaces(m, F, subspace_cap);

    std::map<CellKey, Coset> prev, cur;
    prev[key_of(subs_m.by_dim[0][0])] = Coset::full(pairs);
    for (u32 d = 1; d <= m; ++d) {
        const u32 e_pt = basis_point(dom, 1, d - 1);
        cur.clear();
        for (const Subspace& v : subs_m.by_dim[d]) {
            std::vector<Coset> terms;
            for (const Subspace& vp : subs_m.by_dim[d - 1]) {
                auto it = prev.find(key_of(vp));
                if (it == prev.end() || it->second.empty) continue;
                if (!v.contains_subspace(vp)) continue;
                for (const std::vector<u16>& vv : coset_vectors(v, vp, F.p())) {
                    Coset t1 = pointwise_transporter(it->second, e_pt, dom.index(1, vv));
                    if (t1.empty) continue;
                    Matrix hv = tuple_lincomb(h.mats, vv, n, n, F);
                    Coset t2 = alt_form_transporter_on(t1, hv, g.mats[d - 1], 0, subs_n);
                    if (!t2.empty) terms.push_back(std::move(t2));
                }
            }
            Coset cell = union_cosets(terms, dom);
            if (!cell.empty) cur[key_of(v)] = std::move(cell);
        }
        prev = std::move(cur);
    }
    DpResult res;
    res.dom = dom;
    auto it = prev.find(key_of(subs_m.full()));
    if (it == prev.end() || it->second.empty) {
        res.pairs = Coset::none();
        return res;
    }
    res.pairs = coset_inverse(it->second, dom);
    return res;
}

std::vector<Matrix> dp_projected_isometries(const DpResult& r, u64 element_cap) {
    std::vector<Matrix> out;
    if (r.pairs.empty) return out;
    std::set<std::vector<u16>> seen;
    r.pairs.for_each_element(element_cap, [&](const Perm& p) {
        seen.insert(matrix_of_part(r.dom, p, 0).data());
    });
    const u32 n = r.dom.dims[0];
    for (const auto& enc : seen) {
        Matrix a(n, n, r.dom.field);
        a.data() = enc;
        out.push_back(std::move(a));
    }
    return out;
}

u128 dp_isometry_count(const DpResult& r) {
    if (r.pairs.empty) return 0;
    // kernel: pair elements acting trivially on part 0 (contains the identity)
    Coset ker = Coset::full(r.pairs.group);
    for (u32 x = r.dom.offsets[0]; x < r.dom.offsets[0] + r.dom.part_size(0); ++x)
        ker = pointwise_transporter(ker, x, x);
    return r.pairs.group->order() / ker.group->order();
}

} // namespace altiso
