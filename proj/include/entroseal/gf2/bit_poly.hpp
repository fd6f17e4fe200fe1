#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace entroseal::gf2 {

/// A polynomial over GF(2) stored as a little-endian coefficient bitstring:
/// bit i is the coefficient of x^i. The declared length `nbits` is part of the
/// value; bits at positions >= nbits are always zero.
///
/// Keys, pads, public randomness and field elements are all BitPolys.
class BitPoly {
   public:
    BitPoly() = default;
    explicit BitPoly(size_t nbits);

    /// Low `nbits` bits of `value`. Bits of `value` above nbits must be zero.
    static BitPoly from_u64(uint64_t value, size_t nbits);
    /// Bit i of byte j becomes coefficient 8j+i. Extra high bits must be zero.
    static BitPoly from_bytes(std::span<const uint8_t> bytes, size_t nbits);
    /// Coefficients listed by exponent, e.g. {18, 9, 0} for x^18 + x^9 + 1.
    static BitPoly from_exponents(std::initializer_list<size_t> exponents, size_t nbits);
    static BitPoly monomial(size_t exponent, size_t nbits);

    size_t nbits() const noexcept {
        return nbits_;
    }
    bool empty() const noexcept {
        return nbits_ == 0;
    }
    bool bit(size_t i) const;
    void set_bit(size_t i, bool value);
    void flip_bit(size_t i);

    /// Degree of the polynomial, or -1 for the zero polynomial.
    int64_t degree() const noexcept;
    bool is_zero() const noexcept;
    size_t popcount() const noexcept;

    std::span<const uint64_t> words() const noexcept {
        return words_;
    }
    std::span<uint64_t> mutable_words() noexcept {
        return words_;
    }

    /// Zero-extends or truncates to `nbits` (truncation keeps low coefficients).
    BitPoly resized(size_t nbits) const;
    /// Bits [offset, offset + len) as a new BitPoly of length len.
    BitPoly slice(size_t offset, size_t len) const;
    /// this ‖ high: this occupies the low positions, `high` follows.
    BitPoly concat(const BitPoly &high) const;

    uint64_t to_u64() const;
    std::vector<uint8_t> to_bytes() const;
    /// Coefficients from x^(nbits-1) down to x^0, as '0'/'1' characters.
    std::string to_string() const;

    BitPoly &operator^=(const BitPoly &other);
    friend BitPoly operator^(BitPoly lhs, const BitPoly &rhs) {
        lhs ^= rhs;
        return lhs;
    }
    friend bool operator==(const BitPoly &a, const BitPoly &b) = default;

    /// Re-establishes the zero-tail invariant after raw word writes.
    void mask_tail() noexcept;

   private:
    std::vector<uint64_t> words_;
    size_t nbits_ = 0;
};

inline size_t words_for_bits(size_t nbits) {
    return (nbits + 63) / 64;
}

}  // namespace entroseal::gf2
