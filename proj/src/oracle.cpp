#include "altiso/oracle.hpp"

#include <algorithm>
#include <thread>

#include "altiso/errors.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

namespace {

// Row-echelon accumulator with immutable rows; rows carry their pivot column,
// so pushing and popping is O(1) bookkeeping over preallocated storage.
struct EchelonStack {
    u32 n;
    PrimeField F;
    std::vector<std::vector<u16>> rows;
    std::vector<u32> pivot;
    u32 size = 0;

    EchelonStack(u32 n_, PrimeField f) : n(n_), F(f), rows(n_, std::vector<u16>(n_)), pivot(n_, 0) {}

    // Reduces v in place; returns false if dependent, true after pushing.
    bool try_push(std::vector<u16>& v) {
        for (u32 i = 0; i < size; ++i) {
            const u32 c = pivot[i];
            if (!v[c]) continue;
            const u32 f = F.mul(v[c], F.inv(rows[i][c]));
            for (u32 j = c; j < n; ++j) v[j] = static_cast<u16>(F.sub(v[j], F.mul(f, rows[i][j])));
        }
        u32 lead = 0;
        while (lead < n && !v[lead]) ++lead;
        if (lead == n) return false;
        rows[size] = v;
        pivot[size] = lead;
        ++size;
        return true;
    }
    void pop() { --size; }
};

struct ScanContext {
    const AlternatingTuple* g;
    const SpanBasis* sh;
    u32 n, m;
    u64 qn;
    PrimeField F;
    // images[k][c] = G_k * vector_of_rank(c), concatenated n-vectors
    std::vector<std::vector<u16>> images;
};

// Depth-first scan over independent column tuples; first column restricted to
// ranks congruent to `offset` mod `stride`.
void scan_columns(const ScanContext& ctx, u32 stride, u32 offset, std::vector<std::vector<u16>>& found) {
    const u32 n = ctx.n;
    const PrimeField& F = ctx.F;
    EchelonStack ech(n, F);
    std::vector<u64> rank_at(n, 0);
    std::vector<std::vector<u16>> cols(n, std::vector<u16>(n));
    std::vector<u16> tmp(n), coords(n * (n - 1) / 2), redbuf(n * (n - 1) / 2);

    u32 level = 0;
    std::vector<u64> next_cand(n, 0);
    next_cand[0] = offset;
    for (;;) {
        if (level == n) {
            // test the assembled matrix
            bool ok = true;
            for (u32 k = 0; k < ctx.m && ok; ++k) {
                size_t e = 0;
                for (u32 i = 0; i < n; ++i) {
                    for (u32 j = i + 1; j < n; ++j) {
                        // (A^t G_k A)(i, j) = col_i . (G_k col_j)
                        const u16* pj = ctx.images[k].data() + rank_at[j] * n;
                        u64 acc = 0;
                        for (u32 x = 0; x < n; ++x) acc += static_cast<u64>(cols[i][x]) * pj[x];
                        coords[e++] = static_cast<u16>(F.reduce(acc));
                    }
                }
                redbuf = coords;
                if (!reduce_against_rref(ctx.sh->rr, redbuf)) ok = false;
            }
            if (ok) {
                std::vector<u16> enc(n * n);
                for (u32 i = 0; i < n; ++i)
                    for (u32 j = 0; j < n; ++j) enc[i * n + j] = cols[j][i];
                found.push_back(std::move(enc));
            }
            // backtrack one level
            --level;
            ech.pop();
            next_cand[level] = rank_at[level] + ((level == 0) ? stride : 1);
            continue;
        }
        const u64 step = (level == 0) ? stride : 1;
        u64 cand = next_cand[level];
        bool pushed = false;
        for (; cand < ctx.qn; cand += step) {
            u64 r = cand;
            for (u32 j = n; j-- > 0;) {
                tmp[j] = static_cast<u16>(r % F.p());
                r /= F.p();
            }
            std::vector<u16> reduced = tmp;
            if (ech.try_push(reduced)) {
                cols[level] = tmp;
                rank_at[level] = cand;
                ++level;
                if (level < n) next_cand[level] = 0;
                pushed = true;
                break;
            }
        }
        if (pushed) continue;
        if (level == 0) break;
        --level;
        ech.pop();
        next_cand[level] = rank_at[level] + ((level == 0) ? stride : 1);
    }
}

} // namespace

std::vector<Matrix> brute_force_iso(const AlternatingTuple& g, const AlternatingTuple& h, u64 gl_cap,
                                    u32 threads) {
    if (g.n != h.n || g.field != h.field)
        throw dimension_mismatch("brute_force_iso: ambient spaces differ");
    const u32 n = g.n;
    const PrimeField F = g.field;
    u128 total = 1;
    for (u32 i = 0; i < n * n; ++i) {
        total *= F.p();
        if (total > gl_cap) throw cap_exceeded("brute_force_iso: q^(n^2) exceeds cap");
    }

    SpanBasis sg = span_basis_alternating(g);
    SpanBasis sh = span_basis_alternating(h);
    if (sg.dim != sh.dim) return {};

    ScanContext ctx{&g, &sh, n, g.m(), 1, F, {}};
    for (u32 i = 0; i < n; ++i) ctx.qn *= F.p();
    ctx.images.assign(g.m(), std::vector<u16>(ctx.qn * n));
    for (u32 k = 0; k < g.m(); ++k)
        for (u64 c = 0; c < ctx.qn; ++c) {
            std::vector<u16> col = g.mats[k].apply(vector_of_rank(c, n, F.p()));
            std::copy(col.begin(), col.end(), ctx.images[k].begin() + c * n);
        }

    if (threads <= 1) {
        std::vector<std::vector<u16>> found;
        scan_columns(ctx, 1, 0, found);
        std::sort(found.begin(), found.end());
        std::vector<Matrix> out;
        out.reserve(found.size());
        for (const auto& enc : found) {
            Matrix a(n, n, F);
            a.data() = enc;
            out.push_back(std::move(a));
        }
        return out;
    }

    std::vector<std::vector<std::vector<u16>>> partial(threads);
    std::vector<std::thread> pool;
    for (u32 w = 0; w < threads; ++w)
        pool.emplace_back([&, w] { scan_columns(ctx, threads, w, partial[w]); });
    for (auto& th : pool) th.join();
    std::vector<std::vector<u16>> found;
    for (auto& p : partial)
        for (auto& e : p) found.push_back(std::move(e));
    std::sort(found.begin(), found.end());
    std::vector<Matrix> out;
    out.reserve(found.size());
    for (const auto& enc : found) {
        Matrix a(n, n, F);
        a.data() = enc;
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace altiso
