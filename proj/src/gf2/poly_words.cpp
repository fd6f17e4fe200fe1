#include "poly_words.hpp"

#include <algorithm>
#include <bit>

#include "entroseal/error.hpp"

namespace entroseal::gf2::detail {

void clear_bits(uint64_t *words, size_t lo, size_t hi) {
    while (lo < hi) {
        size_t w = lo / 64;
        size_t s = lo % 64;
        size_t span = std::min<size_t>(64 - s, hi - lo);
        uint64_t mask = span == 64 ? ~uint64_t{0} : ((uint64_t{1} << span) - 1) << s;
        words[w] &= ~mask;
        lo += span;
    }
}

void xor_shifted(uint64_t *dst, size_t dst_words, const uint64_t *src, size_t src_words, size_t shift) {
    size_t ws = shift / 64;
    size_t bs = shift % 64;
    for (size_t i = 0; i < src_words; ++i) {
        uint64_t v = src[i];
        if (v == 0) {
            continue;
        }
        if (i + ws < dst_words) {
            dst[i + ws] ^= v << bs;
        }
        if (bs != 0 && i + ws + 1 < dst_words) {
            dst[i + ws + 1] ^= v >> (64 - bs);
        }
    }
}

SparseReducer::SparseReducer(size_t degree, std::vector<size_t> low_exponents)
    : degree_(degree), low_(std::move(low_exponents)) {
    std::sort(low_.begin(), low_.end(), std::greater<>());
    require(low_.empty() || low_.front() < degree_, ErrorKind::Precondition,
            "reduction exponent not below modulus degree");
    size_t top = low_.empty() ? 0 : low_.front();
    chunk_ = std::min<size_t>(64, degree_ - top);
}

void SparseReducer::reduce(uint64_t *words, size_t nbits) const {
    if (chunk_ == 64 && nbits > degree_) {
        // Whole words above the degree word fold strictly below themselves.
        size_t top = (nbits - 1) / 64;
        size_t base = degree_ / 64;
        for (size_t i = top; i > base; --i) {
            uint64_t v = words[i];
            if (v == 0) {
                continue;
            }
            words[i] = 0;
            for (size_t e : low_) {
                xor_bits_at(words, 64 * i - degree_ + e, v, 64);
            }
        }
        size_t s = degree_ % 64;
        uint64_t v = s == 0 ? words[base] : words[base] >> s;
        if (v != 0) {
            words[base] ^= v << s;
            for (size_t e : low_) {
                xor_bits_at(words, e, v, 64 - s);
            }
        }
        return;
    }
    size_t hi = nbits;
    while (hi > degree_) {
        size_t width = std::min(chunk_, hi - degree_);
        size_t lo = hi - width;
        uint64_t v = extract_bits(words, lo, width);
        if (v != 0) {
            clear_bits(words, lo, hi);
            for (size_t e : low_) {
                xor_bits_at(words, lo - degree_ + e, v, width);
            }
        }
        hi = lo;
    }
}

int64_t degree_of(const uint64_t *words, size_t n) {
    for (size_t w = n; w-- > 0;) {
        if (words[w] != 0) {
            return static_cast<int64_t>(64 * w + 63 - std::countl_zero(words[w]));
        }
    }
    return -1;
}

namespace {

int degree64(uint64_t v) {
    return v == 0 ? -1 : 63 - std::countl_zero(v);
}

// One round of Lehmer's method on the top 64 coefficients of a. Quotients computed on
// the windows A = a >> s, B = b >> s agree with the full ones while 2·deg(r) >= deg(A),
// because cofactor degrees stay at most deg(A) − deg(previous remainder).
// Returns false when no quotient could be taken from the window.
bool lehmer_round(std::vector<uint64_t> &a, int64_t &da, std::vector<uint64_t> &b, int64_t &db,
                  std::vector<uint64_t> &scratch_a, std::vector<uint64_t> &scratch_b) {
    size_t s = da >= 63 ? static_cast<size_t>(da - 63) : 0;
    uint64_t r0 = extract_bits(a.data(), s, static_cast<size_t>(da) - s + 1);
    uint64_t r1 = db >= static_cast<int64_t>(s) ? extract_bits(b.data(), s, static_cast<size_t>(db) - s + 1) : 0;
    const int deg_window = degree64(r0);
    uint64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    int steps = 0;
    while (r1 != 0 && 2 * degree64(r1) >= deg_window) {
        int d1 = degree64(r1);
        for (int d0 = degree64(r0); d0 >= d1; d0 = degree64(r0)) {
            int shift = d0 - d1;
            r0 ^= r1 << shift;
            m00 ^= m10 << shift;
            m01 ^= m11 << shift;
        }
        std::swap(r0, r1);
        std::swap(m00, m10);
        std::swap(m01, m11);
        ++steps;
    }
    if (steps == 0) {
        return false;
    }
    size_t n = static_cast<size_t>(da) / 64 + 1;
    std::fill_n(scratch_a.begin(), n + 1, 0);
    std::fill_n(scratch_b.begin(), n + 1, 0);
    xor_mul_word(m00, a.data(), n, scratch_a.data());
    xor_mul_word(m01, b.data(), n, scratch_a.data());
    xor_mul_word(m10, a.data(), n, scratch_b.data());
    xor_mul_word(m11, b.data(), n, scratch_b.data());
    std::copy_n(scratch_a.begin(), n + 1, a.begin());
    std::copy_n(scratch_b.begin(), n + 1, b.begin());
    da = degree_of(a.data(), n + 1);
    db = degree_of(b.data(), n + 1);
    return true;
}

}  // namespace

int64_t gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b) {
    size_t size = std::max(a.size(), b.size()) + 1;
    a.resize(size, 0);
    b.resize(size, 0);
    std::vector<uint64_t> scratch_a(size + 1), scratch_b(size + 1);
    int64_t da = degree_of(a.data(), size);
    int64_t db = degree_of(b.data(), size);
    while (true) {
        if (da < db) {
            std::swap(a, b);
            std::swap(da, db);
        }
        if (db < 0) {
            return da;
        }
        if (lehmer_round(a, da, b, db, scratch_a, scratch_b)) {
            continue;
        }
        // Degrees too far apart for the window: one plain division step.
        size_t b_words = static_cast<size_t>(db) / 64 + 1;
        while (da >= db) {
            size_t shift = static_cast<size_t>(da - db);
            size_t top = static_cast<size_t>(da) / 64 + 1;
            xor_shifted(a.data(), top, b.data(), b_words, shift);
            da = degree_of(a.data(), top);
        }
        std::swap(a, b);
        std::swap(da, db);
    }
}

}  // namespace entroseal::gf2::detail
