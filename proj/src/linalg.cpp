#include "altiso/linalg.hpp"

#include <algorithm>

#include "altiso/errors.hpp"

namespace altiso {

namespace {

// Bit-packed elimination for GF(2). Same (unique) RREF as the generic path,
// roughly 60x faster on wide systems.
RrefResult rref_gf2(const Matrix& m) {
    const u32 rows = m.rows(), cols = m.cols();
    const u32 words = (cols + 63) / 64;
    std::vector<u64> rd(static_cast<size_t>(rows) * words, 0);
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < cols; ++j)
            if (m.at(i, j)) rd[static_cast<size_t>(i) * words + (j >> 6)] |= u64{1} << (j & 63);

    RrefResult out;
    out.pivots.reserve(std::min(rows, cols));
    u32 r = 0;
    for (u32 c = 0; c < cols && r < rows; ++c) {
        const u32 w = c >> 6;
        const u64 bit = u64{1} << (c & 63);
        u32 piv = rows;
        for (u32 i = r; i < rows; ++i)
            if (rd[static_cast<size_t>(i) * words + w] & bit) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (u32 k = 0; k < words; ++k)
                std::swap(rd[static_cast<size_t>(piv) * words + k], rd[static_cast<size_t>(r) * words + k]);
        for (u32 i = 0; i < rows; ++i) {
            if (i == r) continue;
            if (rd[static_cast<size_t>(i) * words + w] & bit)
                for (u32 k = 0; k < words; ++k)
                    rd[static_cast<size_t>(i) * words + k] ^= rd[static_cast<size_t>(r) * words + k];
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.r = Matrix(rows, cols, m.field());
    for (u32 i = 0; i < rows; ++i)
        for (u32 j = 0; j < cols; ++j)
            out.r.at(i, j) = (rd[static_cast<size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1;
    return out;
}

RrefResult rref_generic(const Matrix& m) {
    const u32 rows = m.rows(), cols = m.cols();
    const PrimeField& F = m.field();
    Matrix a = m;
    RrefResult out;
    u32 r = 0;
    for (u32 c = 0; c < cols && r < rows; ++c) {
        u32 piv = rows;
        for (u32 i = r; i < rows; ++i)
            if (a.at(i, c)) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (u32 j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
        const u32 inv = F.inv(a.at(r, c));
        if (inv != 1)
            for (u32 j = c; j < cols; ++j) a.at(r, j) = static_cast<u16>(F.mul(a.at(r, j), inv));
        for (u32 i = 0; i < rows; ++i) {
            if (i == r) continue;
            const u32 f = a.at(i, c);
            if (!f) continue;
            for (u32 j = c; j < cols; ++j)
                a.at(i, j) = static_cast<u16>(F.sub(a.at(i, j), F.mul(f, a.at(r, j))));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.r = std::move(a);
    return out;
}

} // namespace

RrefResult rref(const Matrix& m) {
    if (m.p() == 2) return rref_gf2(m);
    return rref_generic(m);
}

u32 rank(const Matrix& m) { return rref(m).rank; }

std::vector<std::vector<u16>> solve_homogeneous(const Matrix& m) {
    const RrefResult rr = rref(m);
    const u32 cols = m.cols();
    const PrimeField& F = m.field();
    std::vector<bool> is_pivot(cols, false);
    for (u32 c : rr.pivots) is_pivot[c] = true;

    std::vector<std::vector<u16>> basis;
    basis.reserve(cols - rr.rank);
    for (u32 f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u16> v(cols, 0);
        v[f] = 1;
        for (u32 i = 0; i < rr.rank; ++i)
            v[rr.pivots[i]] = static_cast<u16>(F.neg(rr.r.at(i, f)));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const u32 n = m.rows();
    Matrix aug(n, 2 * n, m.field());
    for (u32 i = 0; i < n; ++i) {
        for (u32 j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n, m.field());
    for (u32 i = 0; i < n; ++i)
        for (u32 j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
    return inv;
}

bool reduce_against_rref(const RrefResult& rr, std::vector<u16>& v) {
    const PrimeField& F = rr.r.field();
    for (u32 i = 0; i < rr.rank; ++i) {
        const u32 c = rr.pivots[i];
        const u32 f = v[c];
        if (!f) continue;
        for (u32 j = c; j < rr.r.cols(); ++j)
            v[j] = static_cast<u16>(F.sub(v[j], F.mul(f, rr.r.at(i, j))));
    }
    for (u16 x : v)
        if (x) return false;
    return true;
}

bool RowSpace::insert(std::vector<u16> v) {
    const PrimeField& F = field_;
    // Reduce against current rows.
    for (u32 i = 0; i < dim_; ++i) {
        u32 lead = 0;
        while (lead < width_ && !rr_.at(i, lead)) ++lead;
        if (lead < width_ && v[lead]) {
            const u32 f = v[lead];
            for (u32 j = lead; j < width_; ++j)
                v[j] = static_cast<u16>(F.sub(v[j], F.mul(f, rr_.at(i, j))));
        }
    }
    u32 lead = 0;
    while (lead < width_ && !v[lead]) ++lead;
    if (lead == width_) return false;
    const u32 inv = F.inv(v[lead]);
    if (inv != 1)
        for (u32 j = lead; j < width_; ++j) v[j] = static_cast<u16>(F.mul(v[j], inv));

    // Insert keeping rows ordered by leading column; clear the new pivot
    // column from the other rows so the stored basis stays in RREF.
    Matrix next(dim_ + 1, width_, F);
    u32 pos = dim_;
    for (u32 i = 0; i < dim_; ++i) {
        u32 l = 0;
        while (l < width_ && !rr_.at(i, l)) ++l;
        if (l > lead) {
            pos = i;
            break;
        }
    }
    for (u32 i = 0; i < pos; ++i)
        for (u32 j = 0; j < width_; ++j) next.at(i, j) = rr_.at(i, j);
    for (u32 j = 0; j < width_; ++j) next.at(pos, j) = v[j];
    for (u32 i = pos; i < dim_; ++i)
        for (u32 j = 0; j < width_; ++j) next.at(i + 1, j) = rr_.at(i, j);
    for (u32 i = 0; i <= dim_; ++i) {
        if (i == pos) continue;
        const u32 f = next.at(i, lead);
        if (!f) continue;
        for (u32 j = lead; j < width_; ++j)
            next.at(i, j) = static_cast<u16>(F.sub(next.at(i, j), F.mul(f, next.at(pos, j))));
    }
    rr_ = std::move(next);
    ++dim_;
    return true;
}

bool RowSpace::contains(std::vector<u16> v) const {
    const PrimeField& F = field_;
    for (u32 i = 0; i < dim_; ++i) {
        u32 lead = 0;
        while (lead < width_ && !rr_.at(i, lead)) ++lead;
        if (lead < width_ && v[lead]) {
            const u32 f = v[lead];
            for (u32 j = lead; j < width_; ++j)
                v[j] = static_cast<u16>(F.sub(v[j], F.mul(f, rr_.at(i, j))));
        }
    }
    for (u16 x : v)
        if (x) return false;
    return true;
}

GlStream::GlStream(u32 n, PrimeField field, u64 cap)
    : n_(n), field_(field), done_(false), started_(false) {
    const u32 q = field.p();
    u128 total = 1;
    for (u32 i = 0; i < n * n; ++i) {
        total *= q;
        if (total > cap) throw cap_exceeded("GlStream: q^(n^2) exceeds cap");
    }
    qn_ = 1;
    for (u32 i = 0; i < n; ++i) qn_ *= q;
    row_value_.assign(n, 0);
    rr_stack_.clear();
    rr_stack_.reserve(n + 1);
    if (n == 0) done_ = true; // GL(0) treated as empty stream
}

u64 GlStream::count(u32 n, u32 q) {
    u128 qn = 1;
    for (u32 i = 0; i < n; ++i) qn *= q;
    u128 total = 1, qi = 1;
    for (u32 i = 0; i < n; ++i) {
        total *= (qn - qi);
        qi *= q;
        if (total > ~u64{0}) throw cap_exceeded("GlStream::count: overflow");
    }
    return static_cast<u64>(total);
}

namespace {
std::vector<u16> vec_of_rank(u64 r, u32 n, u32 q) {
    std::vector<u16> v(n, 0);
    for (u32 j = n; j-- > 0;) {
        v[j] = static_cast<u16>(r % q);
        r /= q;
    }
    return v;
}
} // namespace

bool GlStream::advance_row(u32 level) {
    // rr_stack_ holds RowSpaces for prefixes 0..level (inclusive).
    rr_stack_.resize(level + 1, RowSpace(n_, field_));
    for (u64 cand = row_value_[level] + 1; cand < qn_; ++cand) {
        std::vector<u16> v = vec_of_rank(cand, n_, field_.p());
        if (rr_stack_[level].contains(v)) continue;
        RowSpace next = rr_stack_[level];
        next.insert(std::move(v));
        row_value_[level] = cand;
        rr_stack_.push_back(std::move(next));
        return true;
    }
    return false;
}

bool GlStream::descend_from(u32 level) {
    for (u32 k = level; k < n_; ++k) {
        rr_stack_.resize(k + 1, RowSpace(n_, field_));
        bool found = false;
        for (u64 cand = 0; cand < qn_; ++cand) {
            std::vector<u16> v = vec_of_rank(cand, n_, field_.p());
            if (rr_stack_[k].contains(v)) continue;
            RowSpace next = rr_stack_[k];
            next.insert(std::move(v));
            row_value_[k] = cand;
            rr_stack_.push_back(std::move(next));
            found = true;
            break;
        }
        if (!found) return false; // cannot happen while k < n
    }
    return true;
}

bool GlStream::next(Matrix& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        rr_stack_.assign(1, RowSpace(n_, field_));
        rr_stack_.reserve(n_ + 1);
        if (!descend_from(0)) {
            done_ = true;
            return false;
        }
    } else {
        i64 level = static_cast<i64>(n_) - 1;
        while (level >= 0) {
            if (advance_row(static_cast<u32>(level))) break;
            --level;
        }
        if (level < 0) {
            done_ = true;
            return false;
        }
        if (static_cast<u32>(level) + 1 < n_) descend_from(static_cast<u32>(level) + 1);
    }
    out = Matrix(n_, n_, field_);
    for (u32 i = 0; i < n_; ++i) {
        std::vector<u16> v = vec_of_rank(row_value_[i], n_, field_.p());
        for (u32 j = 0; j < n_; ++j) out.at(i, j) = v[j];
    }
    return true;
}

} // namespace altiso
