#include "altiso/main_algorithm.hpp"

#include <atomic>
#include <set>
#include <thread>

#include "altiso/adjoint.hpp"
#include "altiso/errors.hpp"
#include "altiso/individualisation.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

u32 choose_r(u32 n, u32 m) {
    if (n < 2 || m < 1) throw std::invalid_argument("choose_r: need n >= 2, m >= 1");
    for (u32 r = 1; r < n; ++r) {
        const u32 s = n - r;
        const bool ok = (s >= m) ? (static_cast<u64>(r) * m >= 4ull * s)
                                 : (static_cast<u64>(r) * s >= 4ull * m);
        if (ok) return r;
    }
    throw infeasible("choose_r: no split r < n satisfies the ratio bound");
}

namespace {

struct Shared {
    const AlternatingTuple* g;
    const AlternatingTuple* h;
    u32 n, m, r;
    PrimeField F;
    MatrixTuple b;          // corner tuple of G
    SpanBasis h_span;       // canonical basis of span(H), strict-upper coords
    const MainOptions* opts;
};

// Candidate block assembly and span verification without the tuple-level
// helpers: one reusable buffer set per worker.
struct Verifier {
    const Shared& sh;
    std::vector<u32> a0, y;      // n x n work matrices
    std::vector<u16> coords;

    explicit Verifier(const Shared& s)
        : sh(s), a0(s.n * s.n), y(s.n * s.n), coords(s.n * (s.n - 1) / 2) {}

    // a0 = diag(I_r, block) * a1inv, with block = proj_elt^t
    void build_candidate(const Matrix& proj_elt, const Matrix& a1inv) {
        const u32 n = sh.n, r = sh.r, s = n - r;
        const PrimeField& F = sh.F;
        for (u32 i = 0; i < r; ++i)
            for (u32 j = 0; j < n; ++j) a0[i * n + j] = a1inv.at(i, j);
        for (u32 i = 0; i < s; ++i)
            for (u32 j = 0; j < n; ++j) {
                u64 acc = 0;
                for (u32 c = 0; c < s; ++c)
                    acc += static_cast<u64>(proj_elt.at(c, i)) * a1inv.at(r + c, j);
                a0[(r + i) * n + j] = F.reduce(acc);
            }
    }

    // span(A0^t G A0) inside span(H): verified matrix by matrix, early exit
    bool verify() {
        const u32 n = sh.n;
        const PrimeField& F = sh.F;
        for (u32 k = 0; k < sh.m; ++k) {
            const Matrix& gk = sh.g->mats[k];
            for (u32 i = 0; i < n; ++i)
                for (u32 j = 0; j < n; ++j) {
                    u64 acc = 0;
                    for (u32 c = 0; c < n; ++c)
                        acc += static_cast<u64>(gk.at(i, c)) * a0[c * n + j];
                    y[i * n + j] = F.reduce(acc);
                }
            u32 e = 0;
            for (u32 i = 0; i < n; ++i)
                for (u32 j = i + 1; j < n; ++j) {
                    u64 acc = 0;
                    for (u32 x = 0; x < n; ++x)
                        acc += static_cast<u64>(a0[x * n + i]) * y[x * n + j];
                    coords[e++] = static_cast<u16>(F.reduce(acc));
                }
            if (!reduce_against_rref(sh.h_span.rr, coords)) return false;
        }
        return true;
    }

    Matrix materialize() const {
        Matrix m(sh.n, sh.n, sh.F);
        for (u32 e = 0; e < sh.n * sh.n; ++e) m.data()[e] = static_cast<u16>(a0[e]);
        return m;
    }
};

// Bit-packed solver for {(A, D) : A B_i = C_i D} over GF(2) when the
// s^2 + t^2 unknowns fit one machine word. Produces an RREF basis of the
// first-component projection as bitmasks of flattened s x s matrices.
struct PackedAdjoint {
    u32 s, t, r, cols;
    std::vector<u64> fixed_rows; // A-part coefficients, from B
    std::vector<u64> rows;
    std::vector<u64> kernel;
    std::vector<u64> pi1;
    bool usable;

    PackedAdjoint(const MatrixTuple& b) : s(b.s), t(b.t), r(b.r()), cols(s * s + t * t) {
        usable = b.field.p() == 2 && cols <= 64;
        if (!usable) return;
        fixed_rows.assign(static_cast<size_t>(r) * s * t, 0);
        for (u32 i = 0; i < r; ++i)
            for (u32 a = 0; a < s; ++a)
                for (u32 bb = 0; bb < t; ++bb) {
                    u64 bits = 0;
                    for (u32 c = 0; c < s; ++c)
                        if (b.mats[i].at(c, bb)) bits |= u64{1} << (a * s + c);
                    fixed_rows[(static_cast<size_t>(i) * s + a) * t + bb] = bits;
                }
    }

    // returns dim of the projection; fills pi1 with its RREF bitmask rows
    u32 solve(const MatrixTuple& c) {
        rows.assign(fixed_rows.begin(), fixed_rows.end());
        size_t rw = 0;
        for (u32 i = 0; i < r; ++i)
            for (u32 a = 0; a < s; ++a)
                for (u32 bb = 0; bb < t; ++bb, ++rw) {
                    u64 bits = rows[rw];
                    for (u32 cc = 0; cc < t; ++cc)
                        if (c.mats[i].at(a, cc)) bits |= u64{1} << (s * s + cc * t + bb);
                    rows[rw] = bits;
                }
        // RREF over single-word rows
        const u32 nrows = static_cast<u32>(rows.size());
        u32 rr = 0;
        std::vector<u32> pivot_col;
        for (u32 col = 0; col < cols && rr < nrows; ++col) {
            const u64 bit = u64{1} << col;
            u32 piv = nrows;
            for (u32 i = rr; i < nrows; ++i)
                if (rows[i] & bit) {
                    piv = i;
                    break;
                }
            if (piv == nrows) continue;
            std::swap(rows[piv], rows[rr]);
            for (u32 i = 0; i < nrows; ++i)
                if (i != rr && (rows[i] & bit)) rows[i] ^= rows[rr];
            pivot_col.push_back(col);
            ++rr;
        }
        // kernel basis from the free columns
        kernel.clear();
        std::vector<i32> pivot_of_col(cols, -1);
        for (u32 i = 0; i < rr; ++i) pivot_of_col[pivot_col[i]] = static_cast<i32>(i);
        for (u32 f = 0; f < cols; ++f) {
            if (pivot_of_col[f] >= 0) continue;
            u64 v = u64{1} << f;
            for (u32 i = 0; i < rr; ++i)
                if (rows[i] & (u64{1} << f)) v |= u64{1} << pivot_col[i];
            kernel.push_back(v);
        }
        // project to the A-part and reduce to RREF bitmasks
        const u64 amask = (s * s == 64) ? ~u64{0} : ((u64{1} << (s * s)) - 1);
        pi1.clear();
        for (u64 v : kernel) {
            u64 a = v & amask;
            for (u64 row : pi1) {
                const u64 lead = row & (~row + 1); // lowest set bit = leading coordinate
                if (a & lead) a ^= row;
            }
            if (a) {
                for (u64& row : pi1) {
                    const u64 lead = a & (~a + 1);
                    if (row & lead) row ^= a;
                }
                pi1.push_back(a);
            }
        }
        // order rows by leading coordinate for determinism
        std::sort(pi1.begin(), pi1.end(),
                  [](u64 x, u64 yv) { return (x & (~x + 1)) < (yv & (~yv + 1)); });
        return static_cast<u32>(pi1.size());
    }

    u64 element_bits(u64 combo_code) const {
        u64 bits = 0;
        for (u32 k = 0; k < pi1.size(); ++k)
            if ((combo_code >> k) & 1) bits ^= pi1[k];
        return bits;
    }

    // Gaussian elimination on the s-bit rows of the flattened matrix.
    bool bits_invertible(u64 bits) const {
        u64 rowmask[8];
        const u64 smask = (u64{1} << s) - 1;
        for (u32 i = 0; i < s; ++i) rowmask[i] = (bits >> (i * s)) & smask;
        for (u32 c = 0; c < s; ++c) {
            u32 piv = s;
            for (u32 i = c; i < s; ++i)
                if ((rowmask[i] >> c) & 1) {
                    piv = i;
                    break;
                }
            if (piv == s) return false;
            std::swap(rowmask[piv], rowmask[c]);
            for (u32 i = c + 1; i < s; ++i)
                if ((rowmask[i] >> c) & 1) rowmask[i] ^= rowmask[c];
        }
        return true;
    }

    Matrix element(u64 bits, PrimeField f) const {
        Matrix m(s, s, f);
        for (u32 e = 0; e < s * s; ++e) m.data()[e] = (bits >> e) & 1;
        return m;
    }
};

void worker(const Shared& sh, u32 stride, u32 offset, std::set<std::vector<u16>>& found,
            MainStats& stats, std::atomic<bool>& stop) {
    const u32 n = sh.n, r = sh.r;
    const PrimeField& F = sh.F;
    IndividualisationStream stream(n, r, F, sh.opts->ind_cap, stride, offset);
    PackedAdjoint packed(sh.b);
    Verifier verifier(sh);
    Matrix a1;
    u64 stop_check = 0;
    // corner tuple of A1^t H A1, written in place each round
    MatrixTuple c(n - r, sh.m, F, std::vector<Matrix>(r, Matrix(n - r, sh.m, F)));
    std::vector<u32> w(static_cast<size_t>(n) * n);
    while (stream.next(a1)) {
        if ((++stop_check & 1023) == 0 && stop.load(std::memory_order_relaxed)) return;
        ++stats.individualisations;
        for (u32 k = 0; k < sh.m; ++k) {
            const Matrix& hk = sh.h->mats[k];
            for (u32 i = 0; i < n; ++i)
                for (u32 j = 0; j < n; ++j) {
                    u64 acc = 0;
                    for (u32 x = 0; x < n; ++x)
                        acc += static_cast<u64>(hk.at(i, x)) * a1.at(x, j);
                    w[i * n + j] = F.reduce(acc);
                }
            // corner entry (i, r+j) of A1^t H_k A1
            for (u32 i = 0; i < r; ++i)
                for (u32 j = 0; j < n - r; ++j) {
                    u64 acc = 0;
                    for (u32 x = 0; x < n; ++x)
                        acc += static_cast<u64>(a1.at(x, i)) * w[x * n + (r + j)];
                    c.mats[i].at(j, k) = static_cast<u16>(F.reduce(acc));
                }
        }

        u64 combos = 1;
        u32 dim = 0;
        RrefResult proj; // generic path only
        if (packed.usable) {
            dim = packed.solve(c);
        } else {
            AdjointBasis adj = adjoint_space(sh.b, c);
            proj = pi1_projection(adj);
            dim = proj.rank;
        }
        if (dim > n - r) continue;
        bool over = false;
        for (u32 i = 0; i < dim; ++i) {
            combos *= F.p();
            if (combos > sh.opts->pi1_enum_cap) {
                over = true;
                break;
            }
        }
        if (over) throw cap_exceeded("main_isometry: projected-basis enumeration exceeds cap");
        if (combos <= 1) continue;
        const u32 s = n - r;
        Matrix a1inv = *inverse(a1);
        for (u64 code = 1; code < combos; ++code) {
            // The corner equation on the unflipped tuples is B'_k A = sum_l
            // d_{k,l} C'_l; flipped, that reads A^t B_i = C_i D^t, so the
            // block entering the candidate is the transpose of the enumerated
            // projection element (handled by build_candidate).
            Matrix proj_elt;
            if (packed.usable) {
                const u64 bits = packed.element_bits(code);
                if (!packed.bits_invertible(bits)) continue;
                proj_elt = packed.element(bits, F);
            } else {
                proj_elt = pi1_combination(proj, vector_of_rank(code, dim, F.p()), s, F);
                if (!is_invertible(proj_elt)) continue;
            }
            ++stats.candidates;
            verifier.build_candidate(proj_elt, a1inv);
            if (!verifier.verify()) continue;
            found.insert(verifier.materialize().data());
            if (sh.opts->find_one) {
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    }
}

} // namespace

IsometryResult main_isometry(const AlternatingTuple& g, const AlternatingTuple& h, u32 r,
                             const MainOptions& opts) {
    if (g.n != h.n || g.field != h.field || g.m() != h.m())
        throw dimension_mismatch("main_isometry: inputs must share (n, m, q)");
    const u32 n = g.n;
    if (r < 1 || r >= n) throw std::invalid_argument("main_isometry: split out of range");

    IsometryResult res;
    res.r = r;

    // Gate: a property of G alone.
    Shared sh{&g, &h, n, g.m(), r, g.field, flip_slice(g, r), span_basis_alternating(h), &opts};
    res.gate_dim = pi1_dimension(adjoint_algebra(sh.b));
    if (res.gate_dim > n - r) {
        res.kind = IsometryResult::Kind::NotPropertyF;
        return res;
    }
    res.kind = IsometryResult::Kind::IsoSet;
    if (span_basis_alternating(g).dim != sh.h_span.dim)
        return res; // no invertible map can match spans of unequal dimension

    const u32 threads = opts.threads > 1 ? opts.threads : 1;
    std::atomic<bool> stop{false};
    if (threads == 1) {
        std::set<std::vector<u16>> found;
        worker(sh, 1, 0, found, res.stats, stop);
        for (const auto& enc : found) {
            Matrix a(n, n, g.field);
            a.data() = enc;
            res.isometries.push_back(std::move(a));
        }
        return res;
    }
    std::vector<std::set<std::vector<u16>>> parts(threads);
    std::vector<MainStats> stats(threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (u32 w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                worker(sh, threads, w, parts[w], stats[w], stop);
            } catch (...) {
                errors[w] = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::set<std::vector<u16>> merged;
    for (u32 w = 0; w < threads; ++w) {
        merged.insert(parts[w].begin(), parts[w].end());
        res.stats.individualisations += stats[w].individualisations;
        res.stats.candidates += stats[w].candidates;
    }
    for (const auto& enc : merged) {
        Matrix a(n, n, g.field);
        a.data() = enc;
        res.isometries.push_back(std::move(a));
    }
    return res;
}

} // namespace altiso
