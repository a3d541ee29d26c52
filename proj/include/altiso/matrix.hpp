#pragma once

#include <cstdint>
#include <vector>

#include "altiso/field.hpp"

namespace altiso {

// Dense matrix over GF(p), row-major, entries stored canonically in [0, p).
// Zero-row or zero-column shapes are legal (empty entry array).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), field_(2) {}
    Matrix(u32 rows, u32 cols, PrimeField field)
        : rows_(rows), cols_(cols), field_(field), a_(static_cast<size_t>(rows) * cols, 0) {}

    static Matrix identity(u32 n, PrimeField field) {
        Matrix m(n, n, field);
        for (u32 i = 0; i < n; ++i) m.at(i, i) = 1 % field.p();
        return m;
    }

    u32 rows() const noexcept { return rows_; }
    u32 cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }
    u32 p() const noexcept { return field_.p(); }

    u16& at(u32 i, u32 j) noexcept { return a_[static_cast<size_t>(i) * cols_ + j]; }
    u16 at(u32 i, u32 j) const noexcept { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<u16>& data() const noexcept { return a_; }
    std::vector<u16>& data() noexcept { return a_; }

    bool is_zero() const noexcept {
        for (u16 v : a_)
            if (v) return false;
        return true;
    }

    bool same_shape(const Matrix& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_;
    }

    bool operator==(const Matrix& o) const noexcept {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const noexcept { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_, field_);
        for (u32 i = 0; i < rows_; ++i)
            for (u32 j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;
    Matrix negate() const;
    Matrix scale(u32 c) const;
    Matrix mul(const Matrix& o) const;

    // Matrix-vector product, v given as a canonical coordinate array.
    std::vector<u16> apply(const std::vector<u16>& v) const;

private:
    u32 rows_, cols_;
    PrimeField field_;
    std::vector<u16> a_;
};

// A^t * X * A for square X.
Matrix congruence(const Matrix& x, const Matrix& a);

} // namespace altiso
