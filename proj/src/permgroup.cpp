#include "altiso/permgroup.hpp"

#include <algorithm>

#include "altiso/errors.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

PointDomain::PointDomain(PrimeField f, std::vector<u32> dims_, u64 point_cap)
    : field(f), dims(std::move(dims_)) {
    u64 tot = 0;
    for (u32 nd : dims) {
        offsets.push_back(static_cast<u32>(tot));
        u64 sz = 1;
        for (u32 i = 0; i < nd; ++i) sz *= field.p();
        tot += sz;
        if (tot > point_cap) throw cap_exceeded("PointDomain: point count exceeds cap");
    }
    total = static_cast<u32>(tot);
}

u32 PointDomain::index(u32 part, const std::vector<u16>& v) const {
    return offsets[part] + static_cast<u32>(rank_of_vector(v, field.p()));
}

std::vector<u16> PointDomain::vector_of(u32 part, u32 global_index) const {
    return vector_of_rank(global_index - offsets[part], dims[part], field.p());
}

Perm perm_identity(u32 n) {
    Perm p(n);
    for (u32 i = 0; i < n; ++i) p[i] = i;
    return p;
}

bool perm_is_identity(const Perm& g) {
    for (u32 i = 0; i < g.size(); ++i)
        if (g[i] != i) return false;
    return true;
}

Perm perm_compose(const Perm& f, const Perm& g) {
    Perm r(f.size());
    for (u32 i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

Perm perm_inverse(const Perm& f) {
    Perm r(f.size());
    for (u32 i = 0; i < f.size(); ++i) r[f[i]] = i;
    return r;
}

Perm perm_from_matrices(const PointDomain& dom, const std::vector<Matrix>& per_part) {
    if (per_part.size() != dom.parts())
        throw dimension_mismatch("perm_from_matrices: one matrix per part required");
    Perm g(dom.total);
    for (u32 p = 0; p < dom.parts(); ++p) {
        const u32 sz = dom.part_size(p);
        for (u32 k = 0; k < sz; ++k) {
            std::vector<u16> v = dom.vector_of(p, dom.offsets[p] + k);
            g[dom.offsets[p] + k] = dom.index(p, per_part[p].apply(v));
        }
    }
    // sanity: must be a bijection (guaranteed for invertible matrices)
    return g;
}

Matrix matrix_of_part(const PointDomain& dom, const Perm& g, u32 part) {
    const u32 n = dom.dims[part];
    Matrix m(n, n, dom.field);
    for (u32 j = 0; j < n; ++j) {
        std::vector<u16> e(n, 0);
        e[j] = 1;
        std::vector<u16> img = dom.vector_of(part, g[dom.index(part, e)]);
        for (u32 i = 0; i < n; ++i) m.at(i, j) = img[i];
    }
    return m;
}

std::vector<Matrix> gl_generators(u32 n, PrimeField f) {
    std::vector<Matrix> gens;
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) {
            if (i == j) continue;
            Matrix t = Matrix::identity(n, f);
            t.at(i, j) = 1;
            gens.push_back(std::move(t));
        }
    const u32 a = f.primitive_root();
    if (a != 1) {
        Matrix d = Matrix::identity(n, f);
        d.at(0, 0) = static_cast<u16>(a);
        gens.push_back(std::move(d));
    }
    if (gens.empty()) gens.push_back(Matrix::identity(n, f)); // n == 1, q == 2
    return gens;
}

// ---------------------------------------------------------------------------
// Schreier-Sims

struct BsgsBuilder {
    PermGroup& g;
    const std::vector<u32>& hint;

    explicit BsgsBuilder(PermGroup& pg, const std::vector<u32>& base_hint) : g(pg), hint(base_hint) {}

    u32 choose_base(const Perm& trigger) const {
        for (u32 h : hint)
            if (trigger[h] != h) return h;
        for (u32 x = 0; x < trigger.size(); ++x)
            if (trigger[x] != x) return x;
        throw invalid_permutation("choose_base: identity has no moved point");
    }

    void recompute_orbit(u32 li) {
        PermGroup::Level& L = g.levels_[li];
        L.orbit.assign(1, L.base);
        L.pos.assign(g.dom_.total, -1);
        L.from.assign(g.dom_.total, 0);
        L.via.assign(g.dom_.total, 0);
        L.pos[L.base] = 0;
        for (u32 qi = 0; qi < L.orbit.size(); ++qi) {
            const u32 p = L.orbit[qi];
            for (u32 gi : L.gen_idx) {
                const u32 img = g.sgens_[gi][p];
                if (L.pos[img] < 0) {
                    L.pos[img] = static_cast<i32>(L.orbit.size());
                    L.orbit.push_back(img);
                    L.from[img] = p;
                    L.via[img] = gi;
                }
            }
        }
    }

    // Returns (residue, stuck level); residue identity means full sift.
    std::pair<Perm, u32> sift_from(u32 level, Perm x) const {
        for (u32 j = level; j < g.levels_.size(); ++j) {
            if (perm_is_identity(x)) return {std::move(x), j};
            const PermGroup::Level& L = g.levels_[j];
            const u32 p = x[L.base];
            if (L.pos[p] < 0) return {std::move(x), j};
            x = perm_compose(perm_inverse(g.transversal(j, p)), x);
        }
        return {std::move(x), static_cast<u32>(g.levels_.size())};
    }

    void run(std::vector<Perm> gens) {
        for (Perm& x : gens) {
            if (x.size() != g.dom_.total) throw invalid_permutation("bsgs: wrong domain size");
            std::vector<bool> seen(x.size(), false);
            for (u32 v : x) {
                if (v >= x.size() || seen[v]) throw invalid_permutation("bsgs: not a permutation");
                seen[v] = true;
            }
        }
        // seed level 0
        std::vector<Perm> live;
        for (Perm& x : gens)
            if (!perm_is_identity(x)) live.push_back(std::move(x));
        if (live.empty()) {
            g.order_ = 1;
            return;
        }
        g.sgens_ = std::move(live);
        g.levels_.emplace_back();
        u32 base0 = g.dom_.total;
        auto moved_by_some = [&](u32 x) {
            for (const Perm& s : g.sgens_)
                if (s[x] != x) return true;
            return false;
        };
        for (u32 h : hint)
            if (moved_by_some(h)) {
                base0 = h;
                break;
            }
        if (base0 == g.dom_.total)
            for (u32 x = 0; x < g.dom_.total; ++x)
                if (moved_by_some(x)) {
                    base0 = x;
                    break;
                }
        g.levels_[0].base = base0;
        for (u32 i = 0; i < g.sgens_.size(); ++i) g.levels_[0].gen_idx.push_back(i);

        i64 i = 0;
        while (i >= 0) {
            const u32 li = static_cast<u32>(i);
            recompute_orbit(li);
            bool complete = true;
            const size_t orbit_n = g.levels_[li].orbit.size();
            const size_t gens_n = g.levels_[li].gen_idx.size();
            for (size_t oi = 0; oi < orbit_n && complete; ++oi) {
                const u32 p = g.levels_[li].orbit[oi];
                const Perm up = g.transversal(li, p);
                for (size_t gp = 0; gp < gens_n && complete; ++gp) {
                    const u32 gi = g.levels_[li].gen_idx[gp];
                    const u32 q = g.sgens_[gi][p];
                    const Perm uq_inv = perm_inverse(g.transversal(li, q));
                    Perm schreier = perm_compose(uq_inv, perm_compose(g.sgens_[gi], up));
                    if (perm_is_identity(schreier)) continue;
                    auto [residue, j] = sift_from(li + 1, std::move(schreier));
                    if (perm_is_identity(residue)) continue;
                    // install the residue as a strong generator on levels i+1..j
                    if (j == g.levels_.size()) {
                        g.levels_.emplace_back();
                        g.levels_.back().base = choose_base(residue);
                    }
                    g.sgens_.push_back(std::move(residue));
                    const u32 idx = static_cast<u32>(g.sgens_.size() - 1);
                    for (u32 l = li + 1; l <= j; ++l) g.levels_[l].gen_idx.push_back(idx);
                    complete = false;
                    i = static_cast<i64>(j);
                }
            }
            if (complete) --i;
        }
        g.order_ = 1;
        for (u32 li = 0; li < g.levels_.size(); ++li) {
            recompute_orbit(li);
            g.order_ *= g.levels_[li].orbit.size();
        }
    }
};

std::shared_ptr<const PermGroup> PermGroup::build(const PointDomain& dom, std::vector<Perm> gens,
                                                  const std::vector<u32>& base_hint) {
    auto pg = std::make_shared<PermGroup>();
    pg->dom_ = dom;
    BsgsBuilder builder(*pg, base_hint);
    builder.run(std::move(gens));
    return pg;
}

std::shared_ptr<const PermGroup> PermGroup::trivial(const PointDomain& dom) {
    auto pg = std::make_shared<PermGroup>();
    pg->dom_ = dom;
    pg->order_ = 1;
    return pg;
}

Perm PermGroup::transversal(u32 level, u32 point) const {
    // Walk the Schreier vector from `point` back to the base, then compose the
    // generators along the path: u maps base -> point.
    const Level& L = levels_[level];
    std::vector<u32> path_gens;
    u32 p = point;
    while (p != L.base) {
        path_gens.push_back(L.via[p]);
        p = L.from[p];
    }
    Perm u = perm_identity(dom_.total);
    for (auto it = path_gens.rbegin(); it != path_gens.rend(); ++it) u = perm_compose(sgens_[*it], u);
    return u;
}

bool PermGroup::contains(const Perm& x) const {
    Perm g = x;
    for (u32 j = 0; j < levels_.size(); ++j) {
        if (perm_is_identity(g)) return true;
        const Level& L = levels_[j];
        const u32 p = g[L.base];
        if (L.pos[p] < 0) return false;
        g = perm_compose(perm_inverse(transversal(j, p)), g);
    }
    return perm_is_identity(g);
}

std::vector<Perm> PermGroup::level1_generators() const {
    std::vector<Perm> out;
    if (levels_.size() < 2) return out;
    for (u32 gi : levels_[1].gen_idx) out.push_back(sgens_[gi]);
    return out;
}

void PermGroup::for_each_element(u64 cap, const std::function<void(const Perm&)>& fn) const {
    if (order_ > cap) throw cap_exceeded("PermGroup::for_each_element: order exceeds cap");
    Perm acc = perm_identity(dom_.total);
    std::function<void(u32, const Perm&)> rec = [&](u32 level, const Perm& left) {
        if (level == levels_.size()) {
            fn(left);
            return;
        }
        for (u32 p : levels_[level].orbit) rec(level + 1, perm_compose(left, transversal(level, p)));
    };
    rec(0, acc);
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string PermGroup::order_str() const { return u128_to_string(order_); }

Coset Coset::full(GroupPtr g) {
    Coset c;
    c.empty = false;
    c.rep = perm_identity(g->domain().total);
    c.group = std::move(g);
    return c;
}

void Coset::for_each_element(u64 cap, const std::function<void(const Perm&)>& fn) const {
    if (empty) return;
    group->for_each_element(cap, [&](const Perm& k) { fn(perm_compose(rep, k)); });
}

Coset pointwise_transporter(const Coset& c, u32 x, u32 y) {
    if (c.empty) return Coset::none();
    const PointDomain& dom = c.group->domain();
    const Perm rep_inv = perm_inverse(c.rep);
    const u32 z = rep_inv[y]; // need k(x) = z within the group

    if (c.group->levels().empty()) {
        // trivial group
        if (x == z) return c;
        return Coset::none();
    }
    GroupPtr rebased = c.group;
    if (c.group->levels()[0].base != x) {
        bool moved = false;
        for (const Perm& s : c.group->strong_generators())
            if (s[x] != x) {
                moved = true;
                break;
            }
        if (!moved) {
            if (x == z) return c;
            return Coset::none();
        }
        rebased = PermGroup::build(dom, c.group->strong_generators(), {x});
    }
    const auto& L0 = rebased->levels()[0];
    if (L0.base != x) {
        // group does not move x after all
        if (x == z) return Coset::of(c.rep, rebased);
        return Coset::none();
    }
    if (L0.pos[z] < 0) return Coset::none();
    Perm k0 = rebased->transversal(0, z);
    GroupPtr stab = PermGroup::build(dom, rebased->level1_generators());
    return Coset::of(perm_compose(c.rep, k0), std::move(stab));
}

std::vector<Perm> sims_reduce(const std::vector<Perm>& gens, const PointDomain& dom) {
    std::vector<Perm> kept;
    GroupPtr partial = nullptr;
    for (const Perm& g : gens) {
        if (perm_is_identity(g)) continue;
        if (partial && partial->contains(g)) continue;
        kept.push_back(g);
        partial = PermGroup::build(dom, kept);
    }
    return kept;
}

Coset union_cosets(const std::vector<Coset>& terms, const PointDomain& dom) {
    std::vector<const Coset*> live;
    for (const Coset& t : terms)
        if (!t.empty) live.push_back(&t);
    if (live.empty()) return Coset::none();
    const Perm& rep = live[0]->rep;
    const Perm rep_inv = perm_inverse(rep);
    std::vector<Perm> gens;
    for (const Coset* t : live) {
        for (const Perm& s : t->group->strong_generators()) gens.push_back(s);
        if (t != live[0]) gens.push_back(perm_compose(rep_inv, t->rep));
    }
    std::vector<Perm> reduced = sims_reduce(gens, dom);
    return Coset::of(rep, PermGroup::build(dom, reduced));
}

Coset coset_inverse(const Coset& c, const PointDomain& dom) {
    if (c.empty) return Coset::none();
    std::vector<Perm> gens;
    for (const Perm& s : c.group->strong_generators())
        gens.push_back(perm_compose(c.rep, perm_compose(s, perm_inverse(c.rep))));
    return Coset::of(perm_inverse(c.rep), PermGroup::build(dom, gens));
}

} // namespace altiso
