#pragma once

#include <cstddef>
#include <optional>

#include "entroseal/gf2/bit_poly.hpp"
#include "entroseal/keyexpand/expansion.hpp"
#include "entroseal/random_source.hpp"

namespace entroseal::ese {

using keyexpand::Mode;

/// Scheme parameters. `t` is the caller's min-entropy lower bound for the plaintext
/// (negative values are meaningful in quantum mode); security holds only if it is true.
struct SchemeParams {
    size_t n = 0;
    double t = 0;
    double epsilon = 0;
    Mode mode = Mode::Classical;
    size_t ell = 0;
    keyexpand::ExpansionParams expansion;

    /// ell from derive_key_length; throws a parameter error naming the violated bound.
    static SchemeParams derive(size_t n, double t, double epsilon, Mode mode);
    /// Parameters pinned by an existing ciphertext or key, with no security derivation
    /// attached (t and epsilon are NaN).
    static SchemeParams with_key_length(size_t n, size_t ell, Mode mode);
};

/// Classical: ceil(n − t + 2·log2(1/ε) − 5), requiring t >= 2·log2(1/ε) − 5 and ell in [1, n].
/// Quantum: ceil(n − t + 2·log2(1/ε) + 3), requiring −n <= t <= n and ell in [1, 2n].
size_t derive_key_length(size_t n, double t, double epsilon, Mode mode);

/// Quantum key length for entropic indistinguishability alone: ceil(n − t + 2·log2(1/ε)).
/// Advisory only; nullopt when it falls outside [1, 2n].
std::optional<size_t> advisory_indistinguishability_length(size_t n, double t, double epsilon);

/// Classical mode: payload = x ⊕ pad (n bits). Quantum key tag: payload = β, the 2n-bit
/// Pauli key pad(k, u, v) for the one-time pad on n qubits.
struct Ciphertext {
    Mode mode = Mode::Classical;
    size_t n = 0;
    size_t ell = 0;
    gf2::BitPoly u;
    gf2::BitPoly v;
    gf2::BitPoly payload;

    keyexpand::ExpansionParams expansion() const;
    /// Throws a format error if any length disagrees with (n, ell, mode).
    void validate() const;

    friend bool operator==(const Ciphertext &, const Ciphertext &) = default;
};

/// Uniform ell-bit key.
gf2::BitPoly gen(const SchemeParams &params, RandomSource &rng);

/// Fresh (u, v), then payload = x ⊕ expand_affine(key, u, v). Classical mode only.
Ciphertext encrypt(const gf2::BitPoly &key, const gf2::BitPoly &x, const SchemeParams &params, RandomSource &rng);

/// encrypt with caller-chosen (u, v).
Ciphertext encrypt_with(const gf2::BitPoly &key, const gf2::BitPoly &x, const SchemeParams &params,
                        const gf2::BitPoly &u, const gf2::BitPoly &v);

/// payload ⊕ expand_affine(key, u, v). A wrong key is not detected.
gf2::BitPoly decrypt(const gf2::BitPoly &key, const Ciphertext &c);

/// Quantum mode: fresh (u, v) and β = expand_affine(key, u, v).
Ciphertext quantum_keytag(const gf2::BitPoly &key, const SchemeParams &params, RandomSource &rng);
Ciphertext quantum_keytag_with(const gf2::BitPoly &key, const SchemeParams &params, const gf2::BitPoly &u,
                               const gf2::BitPoly &v);

}  // namespace entroseal::ese
