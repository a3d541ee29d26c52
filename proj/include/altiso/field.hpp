#pragma once

#include <cstdint>
#include <stdexcept>

#include "altiso/errors.hpp"

namespace altiso {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i32 = std::int32_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Arithmetic context for GF(p), p prime, 2 <= p < 2^16.
// Elements are canonical residues in [0, p); products of two canonical
// elements fit in 32 bits, so no wide arithmetic is needed beyond the
// precomputed reciprocal used for the division-free reduction.
class PrimeField {
public:
    explicit PrimeField(u32 p) : p_(p) {
        if (p < 2 || p >= (1u << 16) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus must be a prime in [2, 2^16)");
        magic_ = ~u64{0} / p + 1;
    }

    u32 p() const noexcept { return p_; }

    // Reduces any 64-bit value to [0, p) without a hardware divide.
    u32 reduce(u64 x) const noexcept {
        u64 low = x * magic_;
        return static_cast<u32>((static_cast<u128>(low) * p_) >> 64);
    }

    u32 add(u32 a, u32 b) const noexcept {
        u32 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u32 sub(u32 a, u32 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const noexcept { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const noexcept { return reduce(static_cast<u64>(a) * b); }

    u32 pow(u32 a, u64 e) const noexcept {
        u32 base = a % p_, acc = 1 % p_;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    u32 inv(u32 a) const {
        if (a % p_ == 0) throw division_by_zero("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    // Smallest generator of the multiplicative group.
    u32 primitive_root() const {
        if (p_ == 2) return 1;
        for (u32 g = 2; g < p_; ++g) {
            bool ok = true;
            for (u32 q = 2; q * q <= p_ - 1; ++q) {
                if ((p_ - 1) % q == 0) {
                    if (pow(g, (p_ - 1) / q) == 1 || pow(g, (p_ - 1) / ((p_ - 1) / q)) == 1) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return g;
        }
        return p_ - 1;
    }

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

    static bool is_prime(u32 n) noexcept {
        if (n < 2) return false;
        for (u32 d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    u32 p_;
    u64 magic_;
};

} // namespace altiso
