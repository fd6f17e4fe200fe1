#pragma once

// Word-array helpers shared by the field and irreducibility code.

#include <cstdint>
#include <vector>

#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/gf2/clmul.hpp"

namespace entroseal::gf2::detail {

inline uint64_t extract_bits(const uint64_t *words, size_t lo, size_t width) {
    size_t w = lo / 64;
    size_t s = lo % 64;
    uint64_t v = words[w] >> s;
    if (s != 0 && s + width > 64) {
        v |= words[w + 1] << (64 - s);
    }
    return width == 64 ? v : v & ((uint64_t{1} << width) - 1);
}

inline void xor_bits_at(uint64_t *words, size_t pos, uint64_t value, size_t width) {
    size_t w = pos / 64;
    size_t s = pos % 64;
    words[w] ^= value << s;
    if (s != 0 && s + width > 64) {
        words[w + 1] ^= value >> (64 - s);
    }
}

void clear_bits(uint64_t *words, size_t lo, size_t hi);

/// dst ^= src << shift, where dst has room for the shifted value.
void xor_shifted(uint64_t *dst, size_t dst_words, const uint64_t *src, size_t src_words, size_t shift);

/// Reduction modulo a fixed polynomial x^degree + sum x^e, processed top-down in
/// chunks narrow enough that every fold lands strictly below the chunk.
class SparseReducer {
   public:
    SparseReducer() = default;
    /// `low_exponents`: exponents < degree with coefficient 1.
    SparseReducer(size_t degree, std::vector<size_t> low_exponents);

    size_t degree() const {
        return degree_;
    }
    const std::vector<size_t> &low_exponents() const {
        return low_;
    }

    /// Reduces bits [0, nbits) of `words` in place; afterwards only bits < degree may be set.
    void reduce(uint64_t *words, size_t nbits) const;

   private:
    size_t degree_ = 0;
    std::vector<size_t> low_;
    size_t chunk_ = 1;
};

int64_t degree_of(const uint64_t *words, size_t n);

/// Degree of gcd(a, b); -1 when both are zero.
int64_t gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b);

}  // namespace entroseal::gf2::detail
