#include <random>
#include <vector>

#include "entroseal/error.hpp"
#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/gf2/clmul.hpp"
#include "entroseal/gf2/field.hpp"
#include "entroseal/random_source.hpp"
#include "gtest/gtest.h"

using namespace entroseal;
using namespace entroseal::gf2;

namespace {

// ---- independent oracles: plain bit vectors, no word arithmetic ----

std::vector<int> to_vec(const BitPoly &p) {
    std::vector<int> v(p.nbits());
    for (size_t i = 0; i < p.nbits(); ++i) {
        v[i] = p.bit(i);
    }
    return v;
}

BitPoly from_vec(const std::vector<int> &v, size_t nbits) {
    BitPoly p(nbits);
    for (size_t i = 0; i < v.size() && i < nbits; ++i) {
        if (v[i]) {
            p.set_bit(i, true);
        }
    }
    return p;
}

struct OracleProduct {
    BitPoly value;
    uint64_t loop_iterations;
};

OracleProduct oracle_clmul(const BitPoly &a, const BitPoly &b) {
    auto va = to_vec(a), vb = to_vec(b);
    std::vector<int> c(a.nbits() + b.nbits(), 0);
    uint64_t iterations = 0;
    for (size_t i = 0; i < va.size(); ++i) {
        for (size_t j = 0; j < vb.size(); ++j) {
            c[i + j] ^= va[i] & vb[j];
            ++iterations;
        }
    }
    return {from_vec(c, c.size()), iterations};
}

// Repeated subtraction of shifted modulus copies.
BitPoly oracle_mod(const BitPoly &p, const BitPoly &modulus) {
    auto vp = to_vec(p), vm = to_vec(modulus);
    int dm = static_cast<int>(modulus.degree());
    for (int d = static_cast<int>(vp.size()) - 1; d >= dm; --d) {
        if (vp[d]) {
            for (int e = 0; e <= dm; ++e) {
                vp[d - dm + e] ^= vm[e];
            }
        }
    }
    vp.resize(dm);
    return from_vec(vp, dm);
}

// Trial division by every polynomial of degree 1..deg/2.
bool oracle_irreducible(uint64_t f) {
    int deg = 63 - __builtin_clzll(f);
    if (deg < 1) {
        return false;
    }
    for (int d = 1; 2 * d <= deg; ++d) {
        for (uint64_t g = uint64_t{1} << d; g < (uint64_t{1} << (d + 1)); ++g) {
            uint64_t r = f;
            for (int i = deg; i >= d; --i) {
                if ((r >> i) & 1) {
                    r ^= g << (i - d);
                }
            }
            if (r == 0) {
                return false;
            }
        }
    }
    return true;
}

// For 32 < deg < 64: Rabin's criterion with shift-and-add arithmetic on single words.
uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t f, int deg) {
    uint64_t acc = 0;
    for (int i = deg - 1; i >= 0; --i) {
        acc <<= 1;
        if ((acc >> deg) & 1) {
            acc ^= f;
        }
        if ((b >> i) & 1) {
            acc ^= a;
        }
    }
    return acc;
}

uint64_t gcd64(uint64_t a, uint64_t b) {
    while (b != 0) {
        int db = 63 - __builtin_clzll(b);
        while (a != 0 && 63 - __builtin_clzll(a) >= db) {
            a ^= b << (63 - __builtin_clzll(a) - db);
        }
        std::swap(a, b);
    }
    return a;
}

bool oracle_rabin(uint64_t f) {
    int deg = 63 - __builtin_clzll(f);
    std::vector<uint64_t> frob(deg + 1);
    frob[0] = 2;
    for (int i = 1; i <= deg; ++i) {
        frob[i] = mulmod64(frob[i - 1], frob[i - 1], f, deg);
    }
    if (frob[deg] != 2) {
        return false;
    }
    for (int r = 2; r <= deg; ++r) {
        bool prime = true;
        for (int q = 2; q * q <= r; ++q) {
            prime = prime && r % q != 0;
        }
        if (prime && deg % r == 0 && gcd64(f, frob[deg / r] ^ 2) != 1) {
            return false;
        }
    }
    return true;
}

BitPoly random_poly(std::mt19937_64 &rng, size_t nbits) {
    BitPoly p(nbits);
    for (size_t i = 0; i < nbits; ++i) {
        p.set_bit(i, rng() & 1);
    }
    return p;
}

}  // namespace

// ---- BitPoly ----

TEST(bit_poly, tail_invariant_and_degree) {
    BitPoly p = BitPoly::from_u64(0b10110, 5);
    EXPECT_EQ(p.degree(), 4);
    EXPECT_EQ(p.to_string(), "10110");
    EXPECT_EQ(BitPoly(7).degree(), -1);
    EXPECT_THROW(BitPoly::from_u64(0b100000, 5), Error);
    EXPECT_THROW(p.bit(5), Error);
    BitPoly q = BitPoly::from_u64(0b01101, 5);
    EXPECT_EQ((p ^ q).to_u64(), 0b11011u);
    EXPECT_EQ((p ^ q).nbits(), 5u);
    EXPECT_THROW(p ^= BitPoly(6), Error);
}

TEST(bit_poly, concat_slice_bytes_property) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        size_t la = rng() % 200, lb = rng() % 200;
        BitPoly a = random_poly(rng, la), b = random_poly(rng, lb);
        BitPoly ab = a.concat(b);
        ASSERT_EQ(ab.nbits(), la + lb);
        ASSERT_EQ(ab.slice(0, la), a);
        ASSERT_EQ(ab.slice(la, lb), b);
        ASSERT_EQ(BitPoly::from_bytes(ab.to_bytes(), ab.nbits()), ab);
    }
}

TEST(bit_poly, from_bytes_rejects_high_bits) {
    std::vector<uint8_t> bytes{0xFF, 0x01};
    EXPECT_EQ(BitPoly::from_bytes(bytes, 9).popcount(), 9u);
    EXPECT_THROW(BitPoly::from_bytes(bytes, 8), Error);
}

// ---- clmul ----

TEST(clmul, squaring_spreads_coefficients) {
    BitPoly a = BitPoly::from_u64(0b011, 3);
    for (Backend backend : {Backend::Schoolbook, Backend::Karatsuba}) {
        for (ExecMode mode : {ExecMode::Fast, ExecMode::Counting}) {
            Product p = clmul(a, a, backend, mode);
            EXPECT_EQ(p.value.nbits(), 6u);
            EXPECT_EQ(p.value.to_u64(), 0b101u);
        }
    }
}

TEST(clmul, zero_annihilates) {
    std::mt19937_64 rng(1);
    BitPoly a = BitPoly::from_u64(rng(), 64);
    for (Backend backend : {Backend::Schoolbook, Backend::Karatsuba}) {
        EXPECT_TRUE(clmul(a, BitPoly(64), backend).value.is_zero());
        EXPECT_TRUE(clmul(BitPoly(64), a, backend).value.is_zero());
    }
    EXPECT_EQ(clmul(BitPoly(), a, Backend::Karatsuba).value.nbits(), 64u);
}

TEST(clmul, schoolbook_and_count_is_nu_squared) {
    std::mt19937_64 rng(2);
    for (size_t nu : {8, 64, 243}) {
        BitPoly a = random_poly(rng, nu), b = random_poly(rng, nu);
        OracleProduct oracle = oracle_clmul(a, b);
        Product fast = clmul(a, b, Backend::Schoolbook);
        Product counted = clmul(a, b, Backend::Schoolbook, ExecMode::Counting);
        EXPECT_EQ(oracle.loop_iterations, nu * nu);
        EXPECT_EQ(fast.cost.ands, oracle.loop_iterations);
        EXPECT_EQ(counted.cost, fast.cost);
        EXPECT_EQ(fast.value, oracle.value);
        EXPECT_EQ(counted.value, oracle.value);
    }
}

TEST(clmul, backend_equivalence_random_pairs) {
    std::mt19937_64 rng(3);
    for (size_t nu : {8, 64, 243, 729}) {
        for (int trial = 0; trial < 1000; ++trial) {
            BitPoly a = random_poly(rng, nu), b = random_poly(rng, nu);
            BitPoly school = clmul(a, b, Backend::Schoolbook).value;
            ASSERT_EQ(clmul(a, b, Backend::Karatsuba).value, school) << "nu=" << nu;
            if (trial < 3) {
                ASSERT_EQ(oracle_clmul(a, b).value, school);
            }
        }
    }
}

TEST(clmul, unequal_lengths_match_oracle) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        size_t na = 1 + rng() % 1500, nb = 1 + rng() % 1500;
        BitPoly a = random_poly(rng, na), b = random_poly(rng, nb);
        BitPoly expect = oracle_clmul(a, b).value;
        ASSERT_EQ(clmul(a, b, Backend::Schoolbook).value, expect);
        ASSERT_EQ(clmul(a, b, Backend::Karatsuba).value, expect);
    }
}

TEST(clmul, counting_mode_matches_recurrence) {
    std::mt19937_64 rng(5);
    for (size_t na = 1; na <= 40; ++na) {
        for (size_t nb : {size_t{1}, na, na + 3, 2 * na}) {
            BitPoly a = random_poly(rng, na), b = random_poly(rng, nb);
            for (Backend backend : {Backend::Schoolbook, Backend::Karatsuba}) {
                Product counted = clmul(a, b, backend, ExecMode::Counting);
                Product fast = clmul(a, b, backend, ExecMode::Fast);
                ASSERT_EQ(counted.cost, fast.cost) << na << "x" << nb << " " << to_string(backend);
                ASSERT_EQ(counted.value, fast.value);
            }
        }
    }
}

TEST(clmul, karatsuba_and_count_power_of_two) {
    uint64_t expected = 1;
    for (size_t j = 0; j <= 15; ++j) {
        size_t nu = size_t{1} << j;
        EXPECT_EQ(clmul_cost(nu, nu, Backend::Karatsuba).ands, expected) << nu;
        expected *= 3;
    }
}

TEST(clmul, counts_do_not_depend_on_operand_values) {
    std::mt19937_64 rng(6);
    BitPoly zero(37);
    BitPoly ones = random_poly(rng, 37);
    for (Backend backend : {Backend::Schoolbook, Backend::Karatsuba}) {
        EXPECT_EQ(clmul(zero, zero, backend, ExecMode::Counting).cost,
                  clmul(ones, ones, backend, ExecMode::Counting).cost);
    }
}

TEST(clmul, backend_configuration_errors) {
    EXPECT_EQ(parse_backend("karatsuba"), Backend::Karatsuba);
    EXPECT_EQ(parse_backend("schoolbook"), Backend::Schoolbook);
    try {
        parse_backend("toom-cook");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Configuration);
    }
    EXPECT_FALSE(backend_available(Backend::SchonhageTernary));
    BitPoly a(8);
    try {
        clmul(a, a, Backend::SchonhageTernary);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Configuration);
    }
}

// ---- reduce ----

TEST(reduce, already_reduced_is_free) {
    const FieldSpec &f = find_irreducible(16);
    BitPoly p = BitPoly::from_u64(0xBEEF, 16);
    Product r = reduce(p, f);
    EXPECT_EQ(r.value, p);
    EXPECT_EQ(r.cost, (OpCount{0, 0}));
}

TEST(reduce, modulus_identity_for_twice_three) {
    const FieldSpec &f = find_irreducible(6);
    ASSERT_EQ(f.modulus, BitPoly::from_exponents({6, 3, 0}, 7));
    Product r = reduce(BitPoly::monomial(6, 12), f);
    EXPECT_EQ(r.value, BitPoly::from_exponents({3, 0}, 6));
    // 6 monomials at or above degree 6 processed, two XORs each.
    EXPECT_EQ(r.cost, (OpCount{0, 12}));
}

TEST(reduce, long_division_oracle) {
    std::mt19937_64 rng(8);
    for (size_t lambda : {3, 8, 64, 127, 163, 243}) {
        const FieldSpec &f = find_irreducible(lambda);
        for (int trial = 0; trial < 50; ++trial) {
            BitPoly p = random_poly(rng, 2 * lambda);
            p.set_bit(2 * lambda - 1, true);
            BitPoly expect = oracle_mod(p, f.modulus);
            Product fast = reduce(p, f);
            ASSERT_EQ(fast.value, expect) << lambda;
            if (trial == 0) {
                Product counted = reduce(p, f, ExecMode::Counting);
                ASSERT_EQ(counted.value, expect);
                ASSERT_EQ(counted.cost, fast.cost);
            }
            ASSERT_EQ(fast.cost.xors, lambda * (f.modulus_weight - 1));
            ASSERT_EQ(fast.cost.ands, 0u);
        }
    }
}

TEST(reduce, pentanomial_costs_four_xors_per_monomial) {
    const FieldSpec &f = find_irreducible(8);
    ASSERT_EQ(f.modulus_weight, 5u);
    EXPECT_EQ(reduce(BitPoly(16), f).cost.xors, 8u * 4u);
}

TEST(reduce, rejects_overlong_input) {
    const FieldSpec &f = find_irreducible(8);
    EXPECT_THROW(reduce(BitPoly(17), f), Error);
}

// ---- gf_mul ----

TEST(gf_mul, identity) {
    std::mt19937_64 rng(9);
    const FieldSpec &f = find_irreducible(16);
    BitPoly one = BitPoly::from_u64(1, 16);
    for (int trial = 0; trial < 100; ++trial) {
        BitPoly a = random_poly(rng, 16);
        EXPECT_EQ(gf_mul(a, one, f, Backend::Karatsuba).value, a);
        EXPECT_EQ(gf_mul(one, a, f, Backend::Schoolbook).value, a);
    }
}

TEST(gf_mul, x_squared_times_x_in_gf8) {
    const FieldSpec &f = find_irreducible(3);
    ASSERT_EQ(f.modulus, BitPoly::from_exponents({3, 1, 0}, 4));
    BitPoly x2 = BitPoly::from_u64(0b100, 3), x = BitPoly::from_u64(0b010, 3);
    BitPoly expect = oracle_mod(oracle_clmul(x2, x).value, f.modulus);
    EXPECT_EQ(expect, BitPoly::from_u64(0b011, 3));
    EXPECT_EQ(gf_mul(x2, x, f, Backend::Schoolbook).value, expect);
}

TEST(gf_mul, field_axioms_exhaustive_small) {
    for (size_t lambda = 1; lambda <= 4; ++lambda) {
        const FieldSpec &f = find_irreducible(lambda);
        uint64_t size = uint64_t{1} << lambda;
        auto el = [&](uint64_t v) { return BitPoly::from_u64(v, lambda); };
        auto mul = [&](uint64_t a, uint64_t b) { return gf_mul(el(a), el(b), f, Backend::Karatsuba).value; };
        for (uint64_t a = 0; a < size; ++a) {
            for (uint64_t b = 0; b < size; ++b) {
                ASSERT_EQ(mul(a, b), mul(b, a));
                for (uint64_t c = 0; c < size; ++c) {
                    ASSERT_EQ(gf_mul(mul(a, b), el(c), f, Backend::Schoolbook).value,
                              gf_mul(el(a), mul(b, c), f, Backend::Schoolbook).value);
                    ASSERT_EQ(mul(a, b ^ c), mul(a, b) ^ mul(a, c));
                }
            }
        }
    }
}

TEST(gf_mul, field_axioms_random) {
    std::mt19937_64 rng(10);
    for (size_t lambda : {8, 127, 243, 729}) {
        const FieldSpec &f = find_irreducible(lambda);
        for (int trial = 0; trial < 1000; ++trial) {
            BitPoly a = random_poly(rng, lambda), b = random_poly(rng, lambda), c = random_poly(rng, lambda);
            BitPoly ab = gf_mul(a, b, f, Backend::Karatsuba).value;
            ASSERT_EQ(ab, gf_mul(b, a, f, Backend::Schoolbook).value);
            ASSERT_EQ(gf_mul(ab, c, f, Backend::Karatsuba).value,
                      gf_mul(a, gf_mul(b, c, f, Backend::Karatsuba).value, f, Backend::Karatsuba).value);
            ASSERT_EQ(gf_mul(a, gf_add(b, c, f), f, Backend::Karatsuba).value,
                      gf_add(ab, gf_mul(a, c, f, Backend::Karatsuba).value, f));
        }
    }
}

TEST(gf_mul, every_nonzero_element_has_an_inverse) {
    for (size_t lambda = 1; lambda <= 8; ++lambda) {
        const FieldSpec &f = find_irreducible(lambda);
        uint64_t size = uint64_t{1} << lambda;
        BitPoly one = BitPoly::from_u64(1, lambda);
        for (uint64_t a = 1; a < size; ++a) {
            int inverses = 0;
            for (uint64_t b = 1; b < size; ++b) {
                if (gf_mul(BitPoly::from_u64(a, lambda), BitPoly::from_u64(b, lambda), f, Backend::Schoolbook)
                        .value == one) {
                    ++inverses;
                }
            }
            ASSERT_EQ(inverses, 1) << "lambda=" << lambda << " a=" << a;
        }
    }
}

TEST(gf_mul, cost_is_clmul_plus_reduce) {
    const FieldSpec &f = find_irreducible(45);
    BitPoly a(45), b(45);
    Product p = gf_mul(a, b, f, Backend::Schoolbook);
    EXPECT_EQ(p.cost.ands, 45u * 45u);
    EXPECT_EQ(p.cost, clmul_cost(45, 45, Backend::Schoolbook) + reduce_cost(90, f));
    EXPECT_EQ(gf_mul(a, b, f, Backend::Schoolbook, ExecMode::Counting).cost, p.cost);
}

TEST(gf_mul, rejects_unreduced_operand) {
    const FieldSpec &f = find_irreducible(8);
    EXPECT_THROW(gf_mul(BitPoly::monomial(8, 9), BitPoly(8), f, Backend::Karatsuba), Error);
    // A longer declared length is fine as long as the degree is below lambda.
    EXPECT_NO_THROW(gf_mul(BitPoly::monomial(7, 12), BitPoly(8), f, Backend::Karatsuba));
}

// ---- irreducibility and modulus selection ----

TEST(find_irreducible, degree_one) {
    const FieldSpec &f = find_irreducible(1);
    EXPECT_EQ(f.modulus, BitPoly::from_exponents({1, 0}, 2));
}

TEST(find_irreducible, twice_power_of_three_uses_the_trinomial) {
    EXPECT_TRUE(oracle_irreducible((uint64_t{1} << 18) | (uint64_t{1} << 9) | 1));
    const FieldSpec &f = find_irreducible(18);
    EXPECT_EQ(f.modulus, BitPoly::from_exponents({18, 9, 0}, 19));
    EXPECT_EQ(f.modulus_weight, 3u);
    EXPECT_EQ(find_irreducible(54).modulus, BitPoly::from_exponents({54, 27, 0}, 55));
    EXPECT_EQ(find_irreducible(162).modulus, BitPoly::from_exponents({162, 81, 0}, 163));
}

TEST(find_irreducible, lexicographic_search_matches_oracle) {
    for (size_t lambda = 2; lambda <= 20; ++lambda) {
        if (lambda == 2 || lambda == 6 || lambda == 18) {
            continue;  // 2·3^k degrees take the x^2m + x^m + 1 modulus
        }
        uint64_t top = uint64_t{1} << lambda;
        uint64_t expect = 0;
        for (size_t k = 1; k < lambda && !expect; ++k) {
            if (oracle_irreducible(top | (uint64_t{1} << k) | 1)) {
                expect = top | (uint64_t{1} << k) | 1;
            }
        }
        for (size_t a = 3; a < lambda && !expect; ++a) {
            for (size_t b = 2; b < a && !expect; ++b) {
                for (size_t c = 1; c < b && !expect; ++c) {
                    uint64_t cand = top | (uint64_t{1} << a) | (uint64_t{1} << b) | (uint64_t{1} << c) | 1;
                    if (oracle_irreducible(cand)) {
                        expect = cand;
                    }
                }
            }
        }
        ASSERT_NE(expect, 0u) << lambda;
        EXPECT_EQ(find_irreducible(lambda).modulus.to_u64(), expect) << "lambda=" << lambda;
    }
    EXPECT_EQ(find_irreducible(8).modulus, BitPoly::from_exponents({8, 4, 3, 1, 0}, 9));
}

TEST(find_irreducible, lexicographic_search_above_word_oracle_limit) {
    for (size_t lambda = 33; lambda <= 63; ++lambda) {
        if (lambda == 54) {
            continue;
        }
        uint64_t top = uint64_t{1} << lambda;
        uint64_t expect = 0;
        for (size_t k = 1; k < lambda && !expect; ++k) {
            if (oracle_rabin(top | (uint64_t{1} << k) | 1)) {
                expect = top | (uint64_t{1} << k) | 1;
            }
        }
        for (size_t a = 3; a < lambda && !expect; ++a) {
            for (size_t b = 2; b < a && !expect; ++b) {
                for (size_t c = 1; c < b && !expect; ++c) {
                    uint64_t cand = top | (uint64_t{1} << a) | (uint64_t{1} << b) | (uint64_t{1} << c) | 1;
                    if (oracle_rabin(cand)) {
                        expect = cand;
                    }
                }
            }
        }
        EXPECT_EQ(find_irreducible(lambda).modulus.to_u64(), expect) << "lambda=" << lambda;
    }
}

TEST(find_irreducible, rabin_oracle_agrees_with_trial_division) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        size_t deg = 2 + rng() % 18;
        uint64_t f = (uint64_t{1} << deg) | (rng() & ((uint64_t{1} << deg) - 1)) | 1;
        ASSERT_EQ(oracle_rabin(f), oracle_irreducible(f)) << f;
    }
}

TEST(find_irreducible, swan_parity_only_rejects_reducible_trinomials) {
    int rejected = 0;
    for (size_t n = 2; n <= 24; ++n) {
        for (size_t k = 1; k < n; ++k) {
            if (detail::trinomial_factor_count_even(n, k)) {
                ++rejected;
                EXPECT_FALSE(oracle_irreducible((uint64_t{1} << n) | (uint64_t{1} << k) | 1)) << n << "," << k;
            }
        }
    }
    EXPECT_GT(rejected, 100);
}

TEST(find_irreducible, deterministic_and_cached) {
    const FieldSpec &a = find_irreducible(243);
    const FieldSpec &b = find_irreducible(243);
    EXPECT_EQ(&a, &b);
    EXPECT_EQ(a.lambda, 243u);
    EXPECT_TRUE(a.modulus_weight == 3 || a.modulus_weight == 5);
    EXPECT_TRUE(is_irreducible(a.modulus));
}

TEST(find_irreducible, large_degrees_are_low_weight_and_irreducible) {
    for (size_t lambda : {33, 64, 127, 128, 163, 256, 729}) {
        const FieldSpec &f = find_irreducible(lambda);
        EXPECT_EQ(f.modulus.degree(), static_cast<int64_t>(lambda));
        EXPECT_TRUE(f.modulus_weight == 3 || f.modulus_weight == 5) << lambda;
        EXPECT_TRUE(is_irreducible(f.modulus)) << lambda;
    }
    // Multiples of 8 have no irreducible trinomials.
    EXPECT_EQ(find_irreducible(64).modulus_weight, 5u);
    EXPECT_EQ(find_irreducible(127).modulus, BitPoly::from_exponents({127, 1, 0}, 128));
}

TEST(is_irreducible, known_polynomials) {
    // Published irreducible trinomials and pentanomials (Mersenne-exponent trinomials, NIST binary curves, GCM).
    std::vector<std::vector<size_t>> irreducible = {
        {89, 38, 0},  {127, 1, 0},  {128, 7, 2, 1, 0}, {163, 7, 6, 3, 0}, {233, 74, 0},
        {283, 12, 7, 5, 0}, {409, 87, 0}, {521, 32, 0}, {571, 10, 5, 2, 0}, {607, 105, 0},
    };
    for (const auto &exps : irreducible) {
        BitPoly f(exps[0] + 1);
        for (size_t e : exps) {
            f.set_bit(e, true);
        }
        EXPECT_TRUE(is_irreducible(f)) << exps[0];
    }
}

TEST(is_irreducible, rejects_products) {
    std::mt19937_64 rng(11);
    const FieldSpec &a = find_irreducible(37);
    for (size_t other : {1, 2, 19, 40, 200}) {
        BitPoly g = random_poly(rng, other + 1);
        g.set_bit(other, true);
        g.set_bit(0, true);
        BitPoly prod = clmul(a.modulus, g, Backend::Karatsuba).value;
        EXPECT_FALSE(is_irreducible(prod)) << other;
    }
    // x^4 + x^2 + 1 = (x^2 + x + 1)^2; x^(2m) + x^m + 1 needs m = 3^k.
    EXPECT_FALSE(is_irreducible(BitPoly::from_exponents({4, 2, 0}, 5)));
    EXPECT_FALSE(is_irreducible(BitPoly::from_exponents({40, 20, 0}, 41)));
    BitPoly sq = clmul(a.modulus, a.modulus, Backend::Schoolbook).value;
    EXPECT_FALSE(is_irreducible(sq));
}

TEST(is_irreducible, agrees_with_oracle_below_32_bits) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        size_t deg = 2 + rng() % 14;
        uint64_t f = (uint64_t{1} << deg) | (rng() & ((uint64_t{1} << deg) - 1));
        EXPECT_EQ(is_irreducible(BitPoly::from_u64(f, deg + 1)), oracle_irreducible(f)) << f;
    }
}

// ---- lsb_truncate ----

TEST(lsb_truncate, examples) {
    BitPoly p = BitPoly::from_u64(0b10110, 5);
    EXPECT_EQ(lsb_truncate(p, 5), p);
    EXPECT_EQ(lsb_truncate(p, 3), BitPoly::from_u64(0b110, 3));
    EXPECT_EQ(lsb_truncate(p, 0).nbits(), 0u);
    EXPECT_THROW(lsb_truncate(p, 6), Error);
}
