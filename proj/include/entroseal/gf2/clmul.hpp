#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "entroseal/gf2/bit_poly.hpp"

namespace entroseal::gf2 {

/// Abstract bit-operation count. Additive under composition.
struct OpCount {
    uint64_t ands = 0;
    uint64_t xors = 0;

    OpCount &operator+=(const OpCount &other) {
        ands += other.ands;
        xors += other.xors;
        return *this;
    }
    friend OpCount operator+(OpCount a, const OpCount &b) {
        a += b;
        return a;
    }
    friend bool operator==(const OpCount &, const OpCount &) = default;
};

enum class Backend {
    Schoolbook,
    Karatsuba,
    SchonhageTernary,
};

std::string_view to_string(Backend backend);
/// Throws a configuration error for unknown names.
Backend parse_backend(std::string_view name);
/// Whether this build ships an implementation of the backend.
bool backend_available(Backend backend);
/// Word-level kernel selected at startup: "pclmul" or "portable".
std::string_view word_kernel();

/// Fast: word-parallel arithmetic, cost taken from the backend's recurrence.
/// Counting: bit-serial execution that tallies every AND/XOR gate it performs.
enum class ExecMode {
    Fast,
    Counting,
};

struct Product {
    BitPoly value;
    OpCount cost;
};

/// Carry-less product a·b in GF(2)[x]; result length is a.nbits() + b.nbits().
///
/// Bit-serial cost model (both backends are oblivious, so counts depend only
/// on the operand lengths):
///   Schoolbook  c_k = XOR_{i+j=k} a_i b_j:  ands = na·nb, xors = na·nb − (na+nb−1).
///   Karatsuba   operands zero-padded to ν = max(na, nb), split at h = ⌈ν/2⌉:
///               A(ν) = 2A(h) + A(ν−h),  X(ν) = 2X(h) + X(ν−h) + 4ν − 4,
///               A(1) = 1, X(1) = 0.
Product clmul(const BitPoly &a, const BitPoly &b, Backend backend, ExecMode mode = ExecMode::Fast);

/// The cost clmul reports for operands of the given lengths.
OpCount clmul_cost(size_t na, size_t nb, Backend backend);

namespace detail {

/// Carry-less product of raw word arrays; `out` must hold na + nb words and is overwritten.
void clmul_words(const uint64_t *a, size_t na, const uint64_t *b, size_t nb, uint64_t *out, Backend backend);
void clmul64(uint64_t a, uint64_t b, uint64_t &lo, uint64_t &hi);
/// out[0..n] ^= m · x[0..n).
void xor_mul_word(uint64_t m, const uint64_t *x, size_t n, uint64_t *out);
/// Squares `n` words into 2n words.
void square_words(const uint64_t *in, size_t n, uint64_t *out);

}  // namespace detail

}  // namespace entroseal::gf2
