#pragma once

#include <cstdint>

#include "altiso/field.hpp"

namespace altiso {

// Counter-based generator: a (seed, stream) pair fully determines the output
// sequence, so parallel trials each own a stream and stay reproducible.
// Bit-exactness is promised within this implementation only.
class Rng {
public:
    explicit Rng(u64 seed, u64 stream = 0)
        : state_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

    u64 next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in [0, bound), bound >= 1.
    u32 below(u32 bound) {
        return static_cast<u32>((static_cast<u128>(next_u64()) * bound) >> 64);
    }

private:
    static u64 mix(u64 z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    u64 state_;
};

} // namespace altiso
