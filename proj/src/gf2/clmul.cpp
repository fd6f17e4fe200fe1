#include "entroseal/gf2/clmul.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define ENTROSEAL_X86 1
#endif

#include "entroseal/error.hpp"

namespace entroseal::gf2 {

std::string_view to_string(Backend backend) {
    switch (backend) {
        case Backend::Schoolbook:
            return "schoolbook";
        case Backend::Karatsuba:
            return "karatsuba";
        case Backend::SchonhageTernary:
            return "schonhage-ternary";
    }
    return "unknown";
}

Backend parse_backend(std::string_view name) {
    if (name == "schoolbook") {
        return Backend::Schoolbook;
    }
    if (name == "karatsuba") {
        return Backend::Karatsuba;
    }
    if (name == "schonhage-ternary") {
        return Backend::SchonhageTernary;
    }
    fail(ErrorKind::Configuration, "unknown backend '" + std::string(name) + "'");
}

bool backend_available(Backend backend) {
    return backend == Backend::Schoolbook || backend == Backend::Karatsuba;
}

static void require_available(Backend backend) {
    require(backend_available(backend), ErrorKind::Configuration,
            "backend '" + std::string(to_string(backend)) + "' is not built in this configuration");
}

namespace detail {
namespace {

void clmul64_portable(uint64_t a, uint64_t b, uint64_t &lo, uint64_t &hi) {
    unsigned __int128 table[16];
    table[0] = 0;
    for (int i = 1; i < 16; ++i) {
        unsigned __int128 t = 0;
        for (int j = 0; j < 4; ++j) {
            if ((i >> j) & 1) {
                t ^= static_cast<unsigned __int128>(a) << j;
            }
        }
        table[i] = t;
    }
    unsigned __int128 r = 0;
    for (int k = 15; k >= 0; --k) {
        r = (r << 4) ^ table[(b >> (4 * k)) & 0xF];
    }
    lo = static_cast<uint64_t>(r);
    hi = static_cast<uint64_t>(r >> 64);
}

#ifdef ENTROSEAL_X86
__attribute__((target("pclmul,sse2"))) void clmul64_pclmul(uint64_t a, uint64_t b, uint64_t &lo, uint64_t &hi) {
    __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                     _mm_cvtsi64_si128(static_cast<long long>(b)), 0x00);
    lo = static_cast<uint64_t>(_mm_cvtsi128_si64(r));
    hi = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
}
#endif

using Clmul64Fn = void (*)(uint64_t, uint64_t, uint64_t &, uint64_t &);

// ENTROSEAL_PORTABLE_CLMUL forces the table-driven kernels so they can be tested on any host.
bool has_pclmul() {
    if (std::getenv("ENTROSEAL_PORTABLE_CLMUL") != nullptr) {
        return false;
    }
#ifdef ENTROSEAL_X86
    __builtin_cpu_init();
    return __builtin_cpu_supports("pclmul");
#else
    return false;
#endif
}

#ifdef ENTROSEAL_X86
const Clmul64Fn kClmul64 = has_pclmul() ? clmul64_pclmul : clmul64_portable;
#else
const Clmul64Fn kClmul64 = clmul64_portable;
#endif

using SchoolbookFn = void (*)(const uint64_t *, size_t, const uint64_t *, size_t, uint64_t *);

void schoolbook_portable(const uint64_t *a, size_t na, const uint64_t *b, size_t nb, uint64_t *out) {
    std::fill_n(out, na + nb, 0);
    for (size_t i = 0; i < na; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < nb; ++j) {
            uint64_t lo, hi;
            kClmul64(a[i], b[j], lo, hi);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

#ifdef ENTROSEAL_X86
__attribute__((target("pclmul,sse2"))) void schoolbook_pclmul(const uint64_t *a, size_t na, const uint64_t *b,
                                                              size_t nb, uint64_t *out) {
    std::fill_n(out, na + nb, 0);
    for (size_t i = 0; i < na; ++i) {
        if (a[i] == 0) {
            continue;
        }
        __m128i ai = _mm_cvtsi64_si128(static_cast<long long>(a[i]));
        uint64_t carry = 0;
        for (size_t j = 0; j < nb; ++j) {
            __m128i r = _mm_clmulepi64_si128(ai, _mm_cvtsi64_si128(static_cast<long long>(b[j])), 0x00);
            out[i + j] ^= static_cast<uint64_t>(_mm_cvtsi128_si64(r)) ^ carry;
            carry = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
        }
        out[i + nb] ^= carry;
    }
}
#endif

#ifdef ENTROSEAL_X86
const SchoolbookFn kSchoolbook = has_pclmul() ? schoolbook_pclmul : schoolbook_portable;
#else
const SchoolbookFn kSchoolbook = schoolbook_portable;
#endif

using RowFn = void (*)(uint64_t, const uint64_t *, size_t, uint64_t *);

void xor_mul_word_portable(uint64_t m, const uint64_t *x, size_t n, uint64_t *out) {
    for (size_t i = 0; i < n; ++i) {
        uint64_t lo, hi;
        kClmul64(m, x[i], lo, hi);
        out[i] ^= lo;
        out[i + 1] ^= hi;
    }
}

void square_portable(uint64_t, const uint64_t *in, size_t n, uint64_t *out) {
    for (size_t i = 0; i < n; ++i) {
        kClmul64(in[i], in[i], out[2 * i], out[2 * i + 1]);
    }
}

#ifdef ENTROSEAL_X86
__attribute__((target("pclmul,sse2"))) void xor_mul_word_pclmul(uint64_t m, const uint64_t *x, size_t n,
                                                                uint64_t *out) {
    __m128i mm = _mm_cvtsi64_si128(static_cast<long long>(m));
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        __m128i r = _mm_clmulepi64_si128(mm, _mm_cvtsi64_si128(static_cast<long long>(x[i])), 0x00);
        out[i] ^= static_cast<uint64_t>(_mm_cvtsi128_si64(r)) ^ carry;
        carry = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
    }
    out[n] ^= carry;
}

__attribute__((target("pclmul,sse2"))) void square_pclmul(uint64_t, const uint64_t *in, size_t n, uint64_t *out) {
    for (size_t i = 0; i < n; ++i) {
        __m128i v = _mm_cvtsi64_si128(static_cast<long long>(in[i]));
        _mm_storeu_si128(reinterpret_cast<__m128i *>(out + 2 * i), _mm_clmulepi64_si128(v, v, 0x00));
    }
}
#endif

#ifdef ENTROSEAL_X86
const RowFn kXorMulWord = has_pclmul() ? xor_mul_word_pclmul : xor_mul_word_portable;
const RowFn kSquare = has_pclmul() ? square_pclmul : square_portable;
#else
const RowFn kXorMulWord = xor_mul_word_portable;
const RowFn kSquare = square_portable;
#endif

void schoolbook_words(const uint64_t *a, size_t na, const uint64_t *b, size_t nb, uint64_t *out) {
    kSchoolbook(a, na, b, nb, out);
}

constexpr size_t kKaratsubaCutoffWords = 16;

// out: 2n words. scratch: at least 4n + 4·depth words.
void karatsuba_words(const uint64_t *a, const uint64_t *b, size_t n, uint64_t *out, uint64_t *scratch) {
    if (n <= kKaratsubaCutoffWords) {
        schoolbook_words(a, n, b, n, out);
        return;
    }
    size_t h = (n + 1) / 2;
    size_t m = n - h;
    karatsuba_words(a, b, h, out, scratch);
    karatsuba_words(a + h, b + h, m, out + 2 * h, scratch);
    uint64_t *sa = scratch;
    uint64_t *sb = scratch + h;
    uint64_t *mid = scratch + 2 * h;
    for (size_t i = 0; i < h; ++i) {
        sa[i] = a[i] ^ (i < m ? a[h + i] : 0);
        sb[i] = b[i] ^ (i < m ? b[h + i] : 0);
    }
    karatsuba_words(sa, sb, h, mid, scratch + 4 * h);
    for (size_t i = 0; i < 2 * h; ++i) {
        mid[i] ^= out[i] ^ (i < 2 * m ? out[2 * h + i] : 0);
    }
    for (size_t i = 0; i < 2 * h; ++i) {
        out[h + i] ^= mid[i];
    }
}

}  // namespace

void clmul64(uint64_t a, uint64_t b, uint64_t &lo, uint64_t &hi) {
    kClmul64(a, b, lo, hi);
}

void xor_mul_word(uint64_t m, const uint64_t *x, size_t n, uint64_t *out) {
    if (m != 0) {
        kXorMulWord(m, x, n, out);
    }
}

void square_words(const uint64_t *in, size_t n, uint64_t *out) {
    kSquare(0, in, n, out);
}

void clmul_words(const uint64_t *a, size_t na, const uint64_t *b, size_t nb, uint64_t *out, Backend backend) {
    require_available(backend);
    if (na == 0 || nb == 0) {
        std::fill_n(out, na + nb, 0);
        return;
    }
    size_t n = std::max(na, nb);
    if (backend == Backend::Schoolbook || n <= kKaratsubaCutoffWords || 4 * std::min(na, nb) < n) {
        schoolbook_words(a, na, b, nb, out);
        return;
    }
    std::vector<uint64_t> pa(a, a + na), pb(b, b + nb);
    pa.resize(n, 0);
    pb.resize(n, 0);
    std::vector<uint64_t> full(2 * n);
    std::vector<uint64_t> scratch(8 * n + 256);
    karatsuba_words(pa.data(), pb.data(), n, full.data(), scratch.data());
    std::copy_n(full.begin(), na + nb, out);
}

}  // namespace detail

namespace {

// Bit-serial reference implementations. Every gate that combines two computed
// values is counted; copies and structurally-zero placements are free.
using Bits = std::vector<uint8_t>;

Bits schoolbook_counted(const Bits &a, const Bits &b, OpCount &cost) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Bits c(a.size() + b.size() - 1, 0);
    std::vector<bool> seen(c.size(), false);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            uint8_t t = a[i] & b[j];
            ++cost.ands;
            if (seen[i + j]) {
                c[i + j] ^= t;
                ++cost.xors;
            } else {
                c[i + j] = t;
                seen[i + j] = true;
            }
        }
    }
    return c;
}

// Equal-length operands of nu >= 1 bits; returns 2nu-1 coefficients.
Bits karatsuba_counted(const Bits &a, const Bits &b, OpCount &cost) {
    size_t nu = a.size();
    if (nu == 1) {
        ++cost.ands;
        return {static_cast<uint8_t>(a[0] & b[0])};
    }
    size_t h = (nu + 1) / 2;
    size_t m = nu - h;
    Bits a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
    Bits b0(b.begin(), b.begin() + h), b1(b.begin() + h, b.end());
    Bits sa = a0, sb = b0;
    for (size_t i = 0; i < m; ++i) {
        sa[i] ^= a1[i];
        sb[i] ^= b1[i];
        cost.xors += 2;
    }
    Bits p0 = karatsuba_counted(a0, b0, cost);
    Bits p2 = karatsuba_counted(a1, b1, cost);
    Bits p1 = karatsuba_counted(sa, sb, cost);
    Bits mid(2 * h - 1);
    for (size_t i = 0; i < mid.size(); ++i) {
        mid[i] = p1[i] ^ p0[i];
        ++cost.xors;
        if (i < p2.size()) {
            mid[i] ^= p2[i];
            ++cost.xors;
        }
    }
    Bits c(2 * nu - 1, 0);
    std::copy(p0.begin(), p0.end(), c.begin());
    std::copy(p2.begin(), p2.end(), c.begin() + 2 * h);
    for (size_t i = 0; i < mid.size(); ++i) {
        if (h + i == 2 * h - 1) {
            c[h + i] = mid[i];
        } else {
            c[h + i] ^= mid[i];
            ++cost.xors;
        }
    }
    return c;
}

Bits to_bits(const BitPoly &p, size_t len) {
    Bits out(len, 0);
    for (size_t i = 0; i < p.nbits(); ++i) {
        out[i] = p.bit(i);
    }
    return out;
}

Product clmul_counting(const BitPoly &a, const BitPoly &b, Backend backend) {
    Product result{BitPoly(a.nbits() + b.nbits()), {}};
    if (a.empty() || b.empty()) {
        return result;
    }
    Bits c;
    if (backend == Backend::Schoolbook) {
        c = schoolbook_counted(to_bits(a, a.nbits()), to_bits(b, b.nbits()), result.cost);
    } else {
        size_t nu = std::max(a.nbits(), b.nbits());
        c = karatsuba_counted(to_bits(a, nu), to_bits(b, nu), result.cost);
    }
    for (size_t i = 0; i < c.size() && i < result.value.nbits(); ++i) {
        result.value.set_bit(i, c[i]);
    }
    return result;
}

OpCount karatsuba_cost(size_t nu, std::map<size_t, OpCount> &memo) {
    if (nu == 1) {
        return {1, 0};
    }
    if (auto it = memo.find(nu); it != memo.end()) {
        return it->second;
    }
    size_t h = (nu + 1) / 2;
    OpCount half = karatsuba_cost(h, memo);
    OpCount rest = karatsuba_cost(nu - h, memo);
    OpCount total{2 * half.ands + rest.ands, 2 * half.xors + rest.xors + 4 * nu - 4};
    memo.emplace(nu, total);
    return total;
}

}  // namespace

OpCount clmul_cost(size_t na, size_t nb, Backend backend) {
    require_available(backend);
    if (na == 0 || nb == 0) {
        return {};
    }
    if (backend == Backend::Schoolbook) {
        uint64_t ands = static_cast<uint64_t>(na) * nb;
        return {ands, ands - (na + nb - 1)};
    }
    std::map<size_t, OpCount> memo;
    return karatsuba_cost(std::max(na, nb), memo);
}

Product clmul(const BitPoly &a, const BitPoly &b, Backend backend, ExecMode mode) {
    require_available(backend);
    if (mode == ExecMode::Counting) {
        return clmul_counting(a, b, backend);
    }
    Product result{BitPoly(a.nbits() + b.nbits()), clmul_cost(a.nbits(), b.nbits(), backend)};
    auto wa = a.words();
    auto wb = b.words();
    if (wa.empty() || wb.empty()) {
        return result;
    }
    std::vector<uint64_t> out(wa.size() + wb.size());
    detail::clmul_words(wa.data(), wa.size(), wb.data(), wb.size(), out.data(), backend);
    auto dst = result.value.mutable_words();
    std::copy_n(out.begin(), dst.size(), dst.begin());
    result.value.mask_tail();
    return result;
}

std::string_view word_kernel() {
    static const bool pclmul = detail::has_pclmul();
    return pclmul ? "pclmul" : "portable";
}

}  // namespace entroseal::gf2
