#include "entroseal/random_source.hpp"

#include <exception>

#include "entroseal/error.hpp"

namespace entroseal {

RandomSource RandomSource::seeded(uint64_t seed) {
    RandomSource r;
    r.engine_.seed(seed);
    return r;
}

RandomSource RandomSource::system() {
    RandomSource r;
    try {
        r.device_ = std::make_unique<std::random_device>();
    } catch (const std::exception &e) {
        fail(ErrorKind::Environment, std::string("entropy source unavailable: ") + e.what());
    }
    return r;
}

RandomSource::RandomSource(RandomSource &&) noexcept = default;
RandomSource &RandomSource::operator=(RandomSource &&) noexcept = default;
RandomSource::~RandomSource() = default;

uint64_t RandomSource::next_u64() {
    if (!device_) {
        return engine_();
    }
    try {
        uint64_t hi = (*device_)();
        uint64_t lo = (*device_)();
        return (hi << 32) | (lo & 0xFFFFFFFFu);
    } catch (const std::exception &e) {
        fail(ErrorKind::Environment, std::string("entropy source failed: ") + e.what());
    }
}

uint64_t RandomSource::below(uint64_t bound) {
    require(bound > 0, ErrorKind::Precondition, "empty range");
    // Rejection sampling keeps the draw exactly uniform.
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound + 1) % bound;
    while (true) {
        uint64_t v = next_u64();
        if (v <= limit) {
            return v % bound;
        }
    }
}

gf2::BitPoly RandomSource::bits(size_t nbits) {
    gf2::BitPoly p(nbits);
    for (uint64_t &w : p.mutable_words()) {
        w = next_u64();
    }
    p.mask_tail();
    return p;
}

}  // namespace entroseal
