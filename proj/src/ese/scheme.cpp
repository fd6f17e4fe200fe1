#include "entroseal/ese/scheme.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "entroseal/ese/wire.hpp"

namespace entroseal::ese {

namespace {

// Absorbs rounding in log2 so that exact integer lengths are not bumped by one.
constexpr double kCeilTolerance = 1e-9;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double security_bits(double epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0, ErrorKind::Parameter,
            "epsilon = " + fmt(epsilon) + " must lie in (0, 1]");
    return 2.0 * std::log2(1.0 / epsilon);
}

// ceil(value) as a key length in [1, limit], or a parameter error naming the bound.
size_t bounded_ceil(double value, size_t limit, const std::string &limit_name) {
    double c = std::ceil(value - kCeilTolerance);
    require(c >= 1.0, ErrorKind::Parameter,
            "derived key length ceil(" + fmt(value) + ") is below the minimum of 1 bit");
    require(c <= static_cast<double>(limit), ErrorKind::Parameter,
            "derived key length " + fmt(c) + " exceeds the maximum " + limit_name + " = " + std::to_string(limit));
    return static_cast<size_t>(c);
}

void validate_keyed(const gf2::BitPoly &key, const keyexpand::ExpansionParams &p) {
    require(key.nbits() == p.ell, ErrorKind::Precondition,
            "key has " + std::to_string(key.nbits()) + " bits, expected " + std::to_string(p.ell));
}

}  // namespace

size_t derive_key_length(size_t n, double t, double epsilon, Mode mode) {
    require(n >= 1, ErrorKind::Parameter, "n must be at least 1");
    require(std::isfinite(t), ErrorKind::Parameter, "t must be finite");
    double sec = security_bits(epsilon);
    double dn = static_cast<double>(n);
    if (mode == Mode::Classical) {
        double floor_t = sec - 5.0;
        require(t >= floor_t - kCeilTolerance, ErrorKind::Parameter,
                "t = " + fmt(t) + " is below the classical minimum 2*log2(1/epsilon) - 5 = " + fmt(floor_t));
        return bounded_ceil(dn - t + sec - 5.0, n, "n");
    }
    require(t >= -dn && t <= dn, ErrorKind::Parameter,
            "t = " + fmt(t) + " is outside the quantum range [-n, n] = [-" + std::to_string(n) + ", " +
                std::to_string(n) + "]");
    return bounded_ceil(dn - t + sec + 3.0, 2 * n, "2n");
}

std::optional<size_t> advisory_indistinguishability_length(size_t n, double t, double epsilon) {
    double sec = security_bits(epsilon);
    double c = std::ceil(static_cast<double>(n) - t + sec - kCeilTolerance);
    if (!(c >= 1.0 && c <= 2.0 * static_cast<double>(n))) {
        return std::nullopt;
    }
    return static_cast<size_t>(c);
}

SchemeParams SchemeParams::derive(size_t n, double t, double epsilon, Mode mode) {
    SchemeParams p;
    p.n = n;
    p.t = t;
    p.epsilon = epsilon;
    p.mode = mode;
    p.ell = derive_key_length(n, t, epsilon, mode);
    p.expansion = keyexpand::ExpansionParams::make(n, p.ell, mode);
    return p;
}

SchemeParams SchemeParams::with_key_length(size_t n, size_t ell, Mode mode) {
    SchemeParams p;
    p.n = n;
    p.t = std::numeric_limits<double>::quiet_NaN();
    p.epsilon = std::numeric_limits<double>::quiet_NaN();
    p.mode = mode;
    p.ell = ell;
    p.expansion = keyexpand::ExpansionParams::make(n, ell, mode);
    return p;
}

keyexpand::ExpansionParams Ciphertext::expansion() const {
    return keyexpand::ExpansionParams::make(n, ell, mode);
}

void Ciphertext::validate() const {
    size_t out = mode == Mode::Classical ? n : 2 * n;
    if (n == 0 || ell == 0 || ell > out) {
        throw FormatError(WireError::InconsistentLength,
                          "ciphertext parameters n = " + std::to_string(n) + ", ell = " + std::to_string(ell) +
                              " are out of range");
    }
    keyexpand::ExpansionParams p = expansion();
    if (u.nbits() != p.lambda || v.nbits() != p.tail_len || payload.nbits() != p.out_len) {
        throw FormatError(WireError::InconsistentLength, "ciphertext field lengths disagree with (n, ell, mode)");
    }
}

gf2::BitPoly gen(const SchemeParams &params, RandomSource &rng) {
    return rng.bits(params.ell);
}

Ciphertext encrypt(const gf2::BitPoly &key, const gf2::BitPoly &x, const SchemeParams &params,
                   RandomSource &rng) {
    auto [u, v] = keyexpand::sample_public_randomness(params.expansion, rng);
    return encrypt_with(key, x, params, u, v);
}

Ciphertext encrypt_with(const gf2::BitPoly &key, const gf2::BitPoly &x, const SchemeParams &params,
                        const gf2::BitPoly &u, const gf2::BitPoly &v) {
    require(params.mode == Mode::Classical, ErrorKind::Precondition, "encrypt requires classical mode");
    validate_keyed(key, params.expansion);
    require(x.nbits() == params.n, ErrorKind::Precondition,
            "message has " + std::to_string(x.nbits()) + " bits, expected " + std::to_string(params.n));
    Ciphertext c;
    c.mode = Mode::Classical;
    c.n = params.n;
    c.ell = params.ell;
    c.payload = x ^ keyexpand::expand_affine(key, u, v, params.expansion);
    c.u = u;
    c.v = v;
    return c;
}

gf2::BitPoly decrypt(const gf2::BitPoly &key, const Ciphertext &c) {
    c.validate();
    require(c.mode == Mode::Classical, ErrorKind::Precondition,
            "decrypt applies to classical ciphertexts; a quantum key tag carries the Pauli key itself");
    keyexpand::ExpansionParams p = c.expansion();
    validate_keyed(key, p);
    return c.payload ^ keyexpand::expand_affine(key, c.u, c.v, p);
}

Ciphertext quantum_keytag(const gf2::BitPoly &key, const SchemeParams &params, RandomSource &rng) {
    auto [u, v] = keyexpand::sample_public_randomness(params.expansion, rng);
    return quantum_keytag_with(key, params, u, v);
}

Ciphertext quantum_keytag_with(const gf2::BitPoly &key, const SchemeParams &params, const gf2::BitPoly &u,
                               const gf2::BitPoly &v) {
    require(params.mode == Mode::Quantum, ErrorKind::Precondition, "quantum_keytag requires quantum mode");
    validate_keyed(key, params.expansion);
    Ciphertext c;
    c.mode = Mode::Quantum;
    c.n = params.n;
    c.ell = params.ell;
    c.payload = keyexpand::expand_affine(key, u, v, params.expansion);
    c.u = u;
    c.v = v;
    return c;
}

}  // namespace entroseal::ese
