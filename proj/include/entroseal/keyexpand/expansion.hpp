#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/gf2/clmul.hpp"
#include "entroseal/gf2/field.hpp"
#include "entroseal/random_source.hpp"

namespace entroseal::keyexpand {

enum class Mode {
    Classical,
    Quantum,
};

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

/// Shape of one key expansion. `n` counts message bits (classical) or qubits (quantum).
struct ExpansionParams {
    size_t n = 0;
    size_t ell = 0;
    Mode mode = Mode::Classical;
    size_t lambda = 0;
    size_t out_len = 0;
    size_t tail_len = 0;

    /// Validates 1 <= ell <= out_len and derives lambda = max(ell, out_len − ell).
    static ExpansionParams make(size_t n, size_t ell, Mode mode);

    friend bool operator==(const ExpansionParams &, const ExpansionParams &) = default;
};

/// k zero-extended into GF(2^lambda).
gf2::BitPoly embed_key(const gf2::BitPoly &k, size_t lambda);

/// Affine pad k ‖ ((u·k)_lsb ⊕ v): k occupies bits [0, ell), the tail bits [ell, out_len).
/// The product is taken in GF(2^lambda) with the modulus from find_irreducible(lambda);
/// `_lsb` keeps its tail_len low-order coefficients.
gf2::BitPoly expand_affine(const gf2::BitPoly &k, const gf2::BitPoly &u, const gf2::BitPoly &v,
                           const ExpansionParams &p, gf2::Backend backend = gf2::Backend::Karatsuba);

/// Same pad with an explicit field, for callers that hoist the modulus lookup.
gf2::BitPoly expand_affine(const gf2::BitPoly &k, const gf2::BitPoly &u, const gf2::BitPoly &v,
                           const ExpansionParams &p, const gf2::FieldSpec &field, gf2::Backend backend);

/// Baseline: k·i in GF(2^n) for an n-bit random string i (classical mode).
gf2::BitPoly expand_fullmul_classical(const gf2::BitPoly &k, const gf2::BitPoly &i, const ExpansionParams &p,
                                      gf2::Backend backend = gf2::Backend::Karatsuba);

/// Baseline: k·alpha in GF(2^{2n}) for a 2n-bit random string alpha (quantum mode).
gf2::BitPoly expand_fullmul_quantum(const gf2::BitPoly &k, const gf2::BitPoly &alpha, const ExpansionParams &p,
                                    gf2::Backend backend = gf2::Backend::Karatsuba);

/// Fresh uniform u (lambda bits) and v (tail_len bits).
std::pair<gf2::BitPoly, gf2::BitPoly> sample_public_randomness(const ExpansionParams &p, RandomSource &rng);

}  // namespace entroseal::keyexpand
