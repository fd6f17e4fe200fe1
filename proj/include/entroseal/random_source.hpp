#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "entroseal/gf2/bit_poly.hpp"

namespace entroseal {

/// Source of uniform bits. Seeded instances are reproducible (mt19937_64);
/// system instances read the platform entropy source on every draw.
/// Not synchronized: give each thread its own instance.
class RandomSource {
   public:
    static RandomSource seeded(uint64_t seed);
    static RandomSource system();

    RandomSource(RandomSource &&) noexcept;
    RandomSource &operator=(RandomSource &&) noexcept;
    ~RandomSource();

    bool is_seeded() const noexcept {
        return !device_;
    }

    /// Throws an environment error if the entropy source fails.
    uint64_t next_u64();
    /// Uniform value in [0, bound).
    uint64_t below(uint64_t bound);
    gf2::BitPoly bits(size_t nbits);

   private:
    RandomSource() = default;

    std::mt19937_64 engine_;
    std::unique_ptr<std::random_device> device_;
};

}  // namespace entroseal
