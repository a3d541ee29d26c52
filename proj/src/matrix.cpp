#include "altiso/matrix.hpp"

#include "altiso/errors.hpp"

namespace altiso {

Matrix Matrix::add(const Matrix& o) const {
    if (!same_shape(o)) throw dimension_mismatch("Matrix::add: shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<u16>(field_.add(a_[k], o.a_[k]));
    return r;
}

Matrix Matrix::sub(const Matrix& o) const {
    if (!same_shape(o)) throw dimension_mismatch("Matrix::sub: shape mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<u16>(field_.sub(a_[k], o.a_[k]));
    return r;
}

Matrix Matrix::negate() const {
    Matrix r(rows_, cols_, field_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<u16>(field_.neg(a_[k]));
    return r;
}

Matrix Matrix::scale(u32 c) const {
    Matrix r(rows_, cols_, field_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<u16>(field_.mul(a_[k], c));
    return r;
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_)
        throw dimension_mismatch("Matrix::mul: inner dimensions differ");
    Matrix r(rows_, o.cols_, field_);
    for (u32 i = 0; i < rows_; ++i) {
        for (u32 k = 0; k < cols_; ++k) {
            u32 aik = at(i, k);
            if (!aik) continue;
            for (u32 j = 0; j < o.cols_; ++j) {
                u16& rij = r.at(i, j);
                rij = static_cast<u16>(field_.reduce(static_cast<u64>(rij) + static_cast<u64>(aik) * o.at(k, j)));
            }
        }
    }
    return r;
}

std::vector<u16> Matrix::apply(const std::vector<u16>& v) const {
    if (v.size() != cols_) throw dimension_mismatch("Matrix::apply: vector length");
    std::vector<u16> out(rows_, 0);
    for (u32 i = 0; i < rows_; ++i) {
        u64 acc = 0;
        for (u32 j = 0; j < cols_; ++j) acc += static_cast<u64>(at(i, j)) * v[j];
        out[i] = static_cast<u16>(field_.reduce(acc));
    }
    return out;
}

Matrix congruence(const Matrix& x, const Matrix& a) {
    if (x.rows() != x.cols() || x.cols() != a.rows())
        throw dimension_mismatch("congruence: shape mismatch");
    return a.transpose().mul(x).mul(a);
}

} // namespace altiso
