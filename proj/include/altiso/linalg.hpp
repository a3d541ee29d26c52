#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "altiso/matrix.hpp"

namespace altiso {

struct RrefResult {
    Matrix r;
    u32 rank = 0;
    std::vector<u32> pivots; // pivot column indices, ascending
};

// Reduced row echelon form. Deterministic elimination: pivot in the leftmost
// eligible column, first nonzero row below the current one in row order.
// (The result is the unique RREF of the input.)
RrefResult rref(const Matrix& m);

u32 rank(const Matrix& m);

// Basis of {v : M v = 0}. One basis vector per free column, in column order,
// with the free coordinate set to 1.
std::vector<std::vector<u16>> solve_homogeneous(const Matrix& m);

bool is_invertible(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

// Reduce v against the rows of an RREF matrix in place; returns true if v
// reduced to zero (i.e. v lies in the row space).
bool reduce_against_rref(const RrefResult& rr, std::vector<u16>& v);

// Incrementally maintained row space used for independence tests.
// Rows are reduced into an internal RREF.
class RowSpace {
public:
    RowSpace(u32 width, PrimeField field) : width_(width), field_(field), rr_(0, width, field) {}

    u32 dim() const noexcept { return dim_; }
    u32 width() const noexcept { return width_; }

    // Returns false (and leaves the space unchanged) if v is dependent.
    bool insert(std::vector<u16> v);
    bool contains(std::vector<u16> v) const;
    const Matrix& basis() const noexcept { return rr_; } // RREF, dim() rows

private:
    u32 width_;
    PrimeField field_;
    Matrix rr_;
    u32 dim_ = 0;
};

// Streaming enumeration of GL(n, q) in lexicographic row-major entry order.
// Construction checks q^(n^2) against the cap.
class GlStream {
public:
    GlStream(u32 n, PrimeField field, u64 cap = 10'000'000);

    // Writes the next invertible matrix into `out`; false when exhausted.
    bool next(Matrix& out);

    // Number of elements of GL(n, q); throws cap_exceeded on u64 overflow.
    static u64 count(u32 n, u32 q);

private:
    bool advance_row(u32 level);
    bool descend_from(u32 level);

    u32 n_;
    PrimeField field_;
    u64 qn_;                         // q^n
    std::vector<u64> row_value_;     // lexicographic rank of each chosen row
    std::vector<RowSpace> rr_stack_; // row space of the prefix rows
    bool done_, started_;
};

} // namespace altiso
