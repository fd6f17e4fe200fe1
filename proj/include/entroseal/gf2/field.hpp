#pragma once

#include <cstddef>
#include <vector>

#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/gf2/clmul.hpp"

namespace entroseal::gf2 {

/// GF(2^lambda) fixed by an irreducible modulus of degree exactly lambda.
struct FieldSpec {
    size_t lambda = 0;
    /// lambda + 1 bits; bit lambda is set.
    BitPoly modulus;
    /// Number of nonzero coefficients: 3 for a trinomial, 5 for a pentanomial.
    size_t modulus_weight = 0;
    /// Exponents below lambda with coefficient 1, descending.
    std::vector<size_t> low_exponents;
};

/// Builds a FieldSpec from an explicit modulus; throws unless it is irreducible.
FieldSpec make_field(const BitPoly &modulus);

/// Deterministic modulus choice for GF(2^lambda), cached per lambda:
///   lambda = 1:          x + 1
///   lambda = 2·3^k:      x^lambda + x^(lambda/2) + 1
///   otherwise:           the smallest irreducible trinomial x^lambda + x^k + 1 (smallest k),
///                        else the smallest irreducible pentanomial
///                        x^lambda + x^a + x^b + x^c + 1 ordered by (a, b, c),
///                        else the smallest irreducible polynomial of any weight.
/// The returned reference stays valid for the life of the process.
const FieldSpec &find_irreducible(size_t lambda);

/// Exhaustive trial division for degree <= 32, Rabin's test above that.
bool is_irreducible(const BitPoly &f);

/// p mod modulus. Requires p.nbits() <= 2·lambda. Result has lambda bits.
/// Cost: (modulus_weight − 1) XORs for every coefficient position >= lambda of p.
Product reduce(const BitPoly &p, const FieldSpec &spec, ExecMode mode = ExecMode::Fast);
OpCount reduce_cost(size_t nbits, const FieldSpec &spec);

/// Product in GF(2^lambda). Operands must have degree < lambda (any declared length).
Product gf_mul(const BitPoly &a, const BitPoly &b, const FieldSpec &spec, Backend backend,
               ExecMode mode = ExecMode::Fast);
OpCount gf_mul_cost(const FieldSpec &spec, Backend backend);

/// Sum in GF(2^lambda): bitwise XOR of two lambda-bit elements.
BitPoly gf_add(const BitPoly &a, const BitPoly &b, const FieldSpec &spec);

/// The m low-order coefficients of p (the polynomial modulo x^m).
BitPoly lsb_truncate(const BitPoly &p, size_t m);

namespace detail {

/// True when Swan's theorem shows x^n + x^k + 1 (0 < k < n) has an even number of
/// irreducible factors, hence is reducible. False means the parity is odd or undecided.
bool trinomial_factor_count_even(size_t n, size_t k);

}  // namespace detail

}  // namespace entroseal::gf2
