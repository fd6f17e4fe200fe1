#include "entroseal/gf2/bit_poly.hpp"

#include <algorithm>
#include <bit>

#include "entroseal/error.hpp"

namespace entroseal::gf2 {

BitPoly::BitPoly(size_t nbits) : words_(words_for_bits(nbits), 0), nbits_(nbits) {
}

BitPoly BitPoly::from_u64(uint64_t value, size_t nbits) {
    BitPoly result(nbits);
    if (nbits < 64) {
        require((value >> nbits) == 0, ErrorKind::Precondition, "value does not fit in declared length");
    }
    if (!result.words_.empty()) {
        result.words_[0] = value;
    } else {
        require(value == 0, ErrorKind::Precondition, "value does not fit in declared length");
    }
    return result;
}

BitPoly BitPoly::from_bytes(std::span<const uint8_t> bytes, size_t nbits) {
    require(bytes.size() * 8 >= nbits, ErrorKind::Precondition, "byte buffer shorter than declared length");
    BitPoly result(nbits);
    for (size_t j = 0; j < bytes.size(); ++j) {
        uint64_t byte = bytes[j];
        if (byte == 0) {
            continue;
        }
        require(8 * j + static_cast<size_t>(std::bit_width(byte)) <= nbits, ErrorKind::Precondition,
                "nonzero bits beyond declared length");
        result.words_[j / 8] |= byte << (8 * (j % 8));
    }
    return result;
}

BitPoly BitPoly::from_exponents(std::initializer_list<size_t> exponents, size_t nbits) {
    BitPoly result(nbits);
    for (size_t e : exponents) {
        result.flip_bit(e);
    }
    return result;
}

BitPoly BitPoly::monomial(size_t exponent, size_t nbits) {
    BitPoly result(nbits);
    result.set_bit(exponent, true);
    return result;
}

bool BitPoly::bit(size_t i) const {
    require(i < nbits_, ErrorKind::Precondition, "bit index out of range");
    return (words_[i / 64] >> (i % 64)) & 1;
}

void BitPoly::set_bit(size_t i, bool value) {
    require(i < nbits_, ErrorKind::Precondition, "bit index out of range");
    uint64_t mask = uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

void BitPoly::flip_bit(size_t i) {
    require(i < nbits_, ErrorKind::Precondition, "bit index out of range");
    words_[i / 64] ^= uint64_t{1} << (i % 64);
}

int64_t BitPoly::degree() const noexcept {
    for (size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != 0) {
            return static_cast<int64_t>(64 * w + 63 - std::countl_zero(words_[w]));
        }
    }
    return -1;
}

bool BitPoly::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

size_t BitPoly::popcount() const noexcept {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += static_cast<size_t>(std::popcount(w));
    }
    return total;
}

BitPoly BitPoly::resized(size_t nbits) const {
    BitPoly result(nbits);
    size_t n = std::min(result.words_.size(), words_.size());
    std::copy_n(words_.begin(), n, result.words_.begin());
    result.mask_tail();
    return result;
}

BitPoly BitPoly::slice(size_t offset, size_t len) const {
    require(offset <= nbits_ && len <= nbits_ - offset, ErrorKind::Precondition, "slice out of range");
    BitPoly result(len);
    size_t shift = offset % 64;
    size_t base = offset / 64;
    for (size_t w = 0; w < result.words_.size(); ++w) {
        uint64_t lo = base + w < words_.size() ? words_[base + w] : 0;
        uint64_t hi = base + w + 1 < words_.size() ? words_[base + w + 1] : 0;
        result.words_[w] = shift == 0 ? lo : (lo >> shift) | (hi << (64 - shift));
    }
    result.mask_tail();
    return result;
}

BitPoly BitPoly::concat(const BitPoly &high) const {
    BitPoly result = resized(nbits_ + high.nbits_);
    size_t shift = nbits_ % 64;
    size_t base = nbits_ / 64;
    for (size_t w = 0; w < high.words_.size(); ++w) {
        uint64_t v = high.words_[w];
        result.words_[base + w] |= v << shift;
        if (shift != 0 && base + w + 1 < result.words_.size()) {
            result.words_[base + w + 1] |= v >> (64 - shift);
        }
    }
    return result;
}

uint64_t BitPoly::to_u64() const {
    require(degree() < 64, ErrorKind::Precondition, "polynomial does not fit in 64 bits");
    return words_.empty() ? 0 : words_[0];
}

std::vector<uint8_t> BitPoly::to_bytes() const {
    std::vector<uint8_t> out((nbits_ + 7) / 8);
    for (size_t j = 0; j < out.size(); ++j) {
        out[j] = static_cast<uint8_t>(words_[j / 8] >> (8 * (j % 8)));
    }
    return out;
}

std::string BitPoly::to_string() const {
    std::string s;
    s.reserve(nbits_);
    for (size_t i = nbits_; i-- > 0;) {
        s.push_back(bit(i) ? '1' : '0');
    }
    return s;
}

BitPoly &BitPoly::operator^=(const BitPoly &other) {
    require(nbits_ == other.nbits_, ErrorKind::Precondition, "xor of BitPolys with different lengths");
    for (size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

void BitPoly::mask_tail() noexcept {
    if (nbits_ % 64 != 0 && !words_.empty()) {
        words_.back() &= (uint64_t{1} << (nbits_ % 64)) - 1;
    }
}

}  // namespace entroseal::gf2
