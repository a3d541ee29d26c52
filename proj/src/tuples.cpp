#include "altiso/tuples.hpp"

#include "altiso/errors.hpp"

namespace altiso {

MatrixTuple::MatrixTuple(u32 s_, u32 t_, PrimeField f, std::vector<Matrix> m)
    : s(s_), t(t_), field(f), mats(std::move(m)) {
    for (const Matrix& a : mats)
        if (a.rows() != s || a.cols() != t || a.field() != field)
            throw dimension_mismatch("MatrixTuple: nonuniform matrix shapes");
}

MatrixTuple MatrixTuple::transposed() const {
    std::vector<Matrix> tm;
    tm.reserve(mats.size());
    for (const Matrix& a : mats) tm.push_back(a.transpose());
    return MatrixTuple(t, s, field, std::move(tm));
}

bool AlternatingTuple::matrix_is_alternating(const Matrix& a) {
    if (a.rows() != a.cols()) return false;
    const PrimeField& F = a.field();
    for (u32 i = 0; i < a.rows(); ++i) {
        if (a.at(i, i) != 0) return false;
        for (u32 j = i + 1; j < a.cols(); ++j)
            if (a.at(j, i) != F.neg(a.at(i, j))) return false;
    }
    return true;
}

AlternatingTuple::AlternatingTuple(u32 n_, PrimeField f, std::vector<Matrix> m)
    : n(n_), field(f), mats(std::move(m)) {
    for (const Matrix& a : mats) {
        if (a.rows() != n || a.cols() != n || a.field() != field)
            throw dimension_mismatch("AlternatingTuple: matrix shape mismatch");
        if (!matrix_is_alternating(a))
            throw std::invalid_argument("AlternatingTuple: matrix is not alternating");
    }
}

std::vector<u16> flatten_full(const Matrix& a) { return a.data(); }

std::vector<u16> flatten_strict_upper(const Matrix& a) {
    const u32 n = a.rows();
    std::vector<u16> v;
    v.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (u32 i = 0; i < n; ++i)
        for (u32 j = i + 1; j < n; ++j) v.push_back(a.at(i, j));
    return v;
}

Matrix unflatten_strict_upper(const std::vector<u16>& v, u32 n, PrimeField f) {
    Matrix a(n, n, f);
    size_t k = 0;
    for (u32 i = 0; i < n; ++i)
        for (u32 j = i + 1; j < n; ++j) {
            a.at(i, j) = v[k];
            a.at(j, i) = static_cast<u16>(f.neg(v[k]));
            ++k;
        }
    return a;
}

bool SpanBasis::contains(std::vector<u16> coords) const {
    return reduce_against_rref(rr, coords);
}

bool SpanBasis::operator==(const SpanBasis& o) const {
    if (width != o.width || dim != o.dim) return false;
    for (u32 i = 0; i < dim; ++i)
        for (u32 j = 0; j < width; ++j)
            if (rr.r.at(i, j) != o.rr.r.at(i, j)) return false;
    return true;
}

namespace {
SpanBasis span_from_rows(std::vector<std::vector<u16>> rows, u32 width, PrimeField f) {
    Matrix stack(static_cast<u32>(rows.size()), width, f);
    for (u32 i = 0; i < rows.size(); ++i)
        for (u32 j = 0; j < width; ++j) stack.at(i, j) = rows[i][j];
    SpanBasis sb;
    sb.width = width;
    sb.rr = rref(stack);
    sb.dim = sb.rr.rank;
    return sb;
}
} // namespace

SpanBasis span_basis_full(const MatrixTuple& x) {
    std::vector<std::vector<u16>> rows;
    rows.reserve(x.mats.size());
    for (const Matrix& a : x.mats) rows.push_back(flatten_full(a));
    return span_from_rows(std::move(rows), x.s * x.t, x.field);
}

SpanBasis span_basis_alternating(const AlternatingTuple& x) {
    std::vector<std::vector<u16>> rows;
    rows.reserve(x.mats.size());
    for (const Matrix& a : x.mats) rows.push_back(flatten_strict_upper(a));
    return span_from_rows(std::move(rows), x.n * (x.n - 1) / 2, x.field);
}

bool span_equal(const MatrixTuple& x, const MatrixTuple& y) {
    if (x.s != y.s || x.t != y.t || x.field != y.field)
        throw dimension_mismatch("span_equal: ambient spaces differ");
    return span_basis_full(x) == span_basis_full(y);
}

bool span_equal(const AlternatingTuple& x, const AlternatingTuple& y) {
    if (x.n != y.n || x.field != y.field)
        throw dimension_mismatch("span_equal: ambient spaces differ");
    return span_basis_alternating(x) == span_basis_alternating(y);
}

AlternatingTuple congruence_tuple(const AlternatingTuple& g, const Matrix& a) {
    AlternatingTuple out;
    out.n = g.n;
    out.field = g.field;
    out.mats.reserve(g.mats.size());
    for (const Matrix& gk : g.mats) out.mats.push_back(congruence(gk, a));
    return out;
}

Matrix tuple_lincomb(const std::vector<Matrix>& mats, const std::vector<u16>& v, u32 rows, u32 cols,
                     PrimeField f) {
    Matrix out(rows, cols, f);
    for (size_t k = 0; k < mats.size(); ++k) {
        const u32 c = v[k];
        if (!c) continue;
        for (size_t e = 0; e < out.data().size(); ++e)
            out.data()[e] = static_cast<u16>(
                f.reduce(static_cast<u64>(out.data()[e]) + static_cast<u64>(c) * mats[k].data()[e]));
    }
    return out;
}

MatrixTuple flip_slice(const AlternatingTuple& g, u32 r) {
    const u32 n = g.n;
    if (r < 1 || r >= n) throw std::invalid_argument("flip_slice: split out of range");
    const u32 s = n - r;
    const u32 m = g.m();
    std::vector<Matrix> bs;
    bs.reserve(r);
    for (u32 i = 0; i < r; ++i) {
        Matrix b(s, m, g.field);
        for (u32 j = 0; j < s; ++j)
            for (u32 k = 0; k < m; ++k) b.at(j, k) = g.mats[k].at(i, r + j);
        bs.push_back(std::move(b));
    }
    return MatrixTuple(s, m, g.field, std::move(bs));
}

} // namespace altiso
