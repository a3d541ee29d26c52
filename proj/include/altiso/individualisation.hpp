#pragma once

#include "altiso/linalg.hpp"
#include "altiso/matrix.hpp"

namespace altiso {

// Streams every direct-sum decomposition F_q^n = L + R with an ordered basis
// (v_1..v_r) of L, as the invertible matrix [v_1..v_r | u_1+w_1 .. u_{n-r}+w_{n-r}]:
// one ordered independent r-tuple (v_i) per L-basis, one complement per
// (w_1..w_{n-r}) in L^{n-r}. Deterministic lexicographic order on
// (v-tuple, w-tuple); memory O(n^2).
class IndividualisationStream {
public:
    // `stride`/`offset` partition the stream by the lexicographic rank of v_1
    // for parallel consumption; the default covers everything.
    IndividualisationStream(u32 n, u32 r, PrimeField field, u64 cap = 200'000'000, u32 stride = 1,
                            u32 offset = 0);

    // Total number of emitted matrices: prod_{i<r}(q^n - q^i) * q^{r(n-r)}.
    static u64 count(u32 n, u32 r, u32 q);

    bool next(Matrix& a1);

private:
    bool advance_v(u32 level);
    bool descend_v(u32 level);
    void compute_complement();
    void emit(Matrix& a1) const;

    u32 n_, r_;
    PrimeField field_;
    u32 stride_, offset_;
    u64 qn_, qr_;
    u64 w_total_;              // q^{r(n-r)}
    std::vector<u64> v_rank_;  // chosen v-tuple, lexicographic ranks
    std::vector<RowSpace> vspace_;
    std::vector<std::vector<u16>> vs_;     // the r chosen vectors
    std::vector<std::vector<u16>> comp_;   // greedy complement basis u_1..u_{n-r}
    u64 w_code_;
    bool have_v_, done_;
};

} // namespace altiso
