#pragma once

#include <cstdint>
#include <random>

namespace cvrp {

// Seeded generator wrapper. mt19937_64 has a standard-mandated output
// sequence, so every draw here is reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0,1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi], inclusive, by rejection.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
        std::uint64_t r;
        do { r = gen_(); } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace cvrp
