#include "altiso/individualisation.hpp"

#include "altiso/errors.hpp"
#include "altiso/subspaces.hpp"

namespace altiso {

u64 IndividualisationStream::count(u32 n, u32 r, u32 q) {
    u128 qn = 1;
    for (u32 i = 0; i < n; ++i) qn *= q;
    u128 total = 1, qi = 1;
    for (u32 i = 0; i < r; ++i) {
        total *= (qn - qi);
        qi *= q;
        if (total > ~u64{0}) throw cap_exceeded("IndividualisationStream::count: overflow");
    }
    for (u32 i = 0; i < r * (n - r); ++i) {
        total *= q;
        if (total > ~u64{0}) throw cap_exceeded("IndividualisationStream::count: overflow");
    }
    return static_cast<u64>(total);
}

IndividualisationStream::IndividualisationStream(u32 n, u32 r, PrimeField field, u64 cap, u32 stride,
                                                 u32 offset)
    : n_(n), r_(r), field_(field), stride_(stride), offset_(offset), have_v_(false), done_(false) {
    if (r < 1 || r >= n) throw std::invalid_argument("IndividualisationStream: need 1 <= r < n");
    if (stride == 0) throw std::invalid_argument("IndividualisationStream: zero stride");
    if (count(n, r, field.p()) > cap)
        throw cap_exceeded("IndividualisationStream: stream size exceeds cap");
    const u32 q = field.p();
    qn_ = 1;
    for (u32 i = 0; i < n; ++i) qn_ *= q;
    qr_ = 1;
    for (u32 i = 0; i < r; ++i) qr_ *= q;
    w_total_ = 1;
    for (u32 i = 0; i < r * (n - r); ++i) w_total_ *= q;
    v_rank_.assign(r, 0);
    vs_.assign(r, {});
    w_code_ = 0;
}

bool IndividualisationStream::advance_v(u32 level) {
    vspace_.resize(level + 1, RowSpace(n_, field_));
    const u64 step = (level == 0) ? stride_ : 1;
    for (u64 cand = v_rank_[level] + step; cand < qn_; cand += step) {
        if (level == 0 && cand % stride_ != offset_ % stride_) continue;
        std::vector<u16> v = vector_of_rank(cand, n_, field_.p());
        if (vspace_[level].contains(v)) continue;
        RowSpace next = vspace_[level];
        next.insert(v);
        v_rank_[level] = cand;
        vs_[level] = std::move(v);
        vspace_.push_back(std::move(next));
        return true;
    }
    return false;
}

bool IndividualisationStream::descend_v(u32 level) {
    for (u32 k = level; k < r_; ++k) {
        vspace_.resize(k + 1, RowSpace(n_, field_));
        bool found = false;
        const u64 start = (k == 0) ? (offset_ % stride_) : 0;
        const u64 step = (k == 0) ? stride_ : 1;
        for (u64 cand = start; cand < qn_; cand += step) {
            std::vector<u16> v = vector_of_rank(cand, n_, field_.p());
            if (vspace_[k].contains(v)) continue;
            RowSpace next = vspace_[k];
            next.insert(v);
            v_rank_[k] = cand;
            vs_[k] = std::move(v);
            vspace_.push_back(std::move(next));
            found = true;
            break;
        }
        if (!found) return false;
    }
    compute_complement();
    w_code_ = 0;
    return true;
}

void IndividualisationStream::compute_complement() {
    // Greedy completion by standard basis vectors in index order.
    RowSpace space = vspace_[r_];
    comp_.clear();
    comp_.reserve(n_ - r_);
    for (u32 j = 0; j < n_ && comp_.size() < n_ - r_; ++j) {
        std::vector<u16> e(n_, 0);
        e[j] = 1;
        if (space.insert(e)) comp_.push_back(std::move(e));
    }
}

void IndividualisationStream::emit(Matrix& a1) const {
    a1 = Matrix(n_, n_, field_);
    for (u32 c = 0; c < r_; ++c)
        for (u32 i = 0; i < n_; ++i) a1.at(i, c) = vs_[c][i];
    // w_code_ digits: one coefficient vector in F_q^r per complement column,
    // first column most significant.
    u64 code = w_code_;
    const u32 cols = n_ - r_;
    std::vector<u64> wpart(cols);
    for (u32 c = cols; c-- > 0;) {
        wpart[c] = code % qr_;
        code /= qr_;
    }
    for (u32 c = 0; c < cols; ++c) {
        std::vector<u16> coeff = vector_of_rank(wpart[c], r_, field_.p());
        std::vector<u16> col = comp_[c];
        for (u32 k = 0; k < r_; ++k) {
            if (!coeff[k]) continue;
            for (u32 i = 0; i < n_; ++i)
                col[i] = static_cast<u16>(
                    field_.add(col[i], field_.mul(coeff[k], vs_[k][i])));
        }
        for (u32 i = 0; i < n_; ++i) a1.at(i, r_ + c) = col[i];
    }
}

bool IndividualisationStream::next(Matrix& a1) {
    if (done_) return false;
    if (!have_v_) {
        vspace_.assign(1, RowSpace(n_, field_));
        if (!descend_v(0)) {
            done_ = true;
            return false;
        }
        have_v_ = true;
        emit(a1);
        return true;
    }
    if (w_code_ + 1 < w_total_) {
        ++w_code_;
        emit(a1);
        return true;
    }
    // advance the v-tuple
    i64 level = static_cast<i64>(r_) - 1;
    while (level >= 0) {
        if (advance_v(static_cast<u32>(level))) break;
        --level;
    }
    if (level < 0) {
        done_ = true;
        return false;
    }
    if (static_cast<u32>(level) + 1 < r_) {
        if (!descend_v(static_cast<u32>(level) + 1)) {
            done_ = true;
            return false;
        }
    } else {
        compute_complement();
        w_code_ = 0;
    }
    emit(a1);
    return true;
}

} // namespace altiso
