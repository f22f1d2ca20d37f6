#pragma once

#include <cstdint>

namespace odyssey {

// PCG32 with pinned constants. std::mt19937 would also be portable, but the
// standard distributions are not; all range reduction lives here so that
// identical seeds replay bit-for-bit on every platform.
class Pcg32 {
public:
    Pcg32() = default;
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057b7ef767814full) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // Uniform in [lo, hi], unbiased via rejection.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (lo >= hi) return lo;
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t threshold = (0u - range) % range;
        for (;;) {
            std::uint64_t r = (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
            if (r >= threshold) return lo + static_cast<std::int64_t>(r % range);
        }
    }

    bool coin() { return (next_u32() & 1u) != 0; }

    std::uint64_t state() const { return state_; }
    std::uint64_t inc() const { return inc_; }
    void restore(std::uint64_t state, std::uint64_t inc) { state_ = state; inc_ = inc; }

private:
    std::uint64_t state_ = 0x853c49e6748fea9bull;
    std::uint64_t inc_ = 0xda3e39cb94b95bdbull;
};

// FNV-1a 64-bit, pinned constants. Used for token hashing in retrieval and
// for prompt hashes in episode logs.
inline std::uint64_t fnv1a64(const char* data, std::size_t n,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace odyssey
