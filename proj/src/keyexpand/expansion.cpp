#include "entroseal/keyexpand/expansion.hpp"

#include <algorithm>
#include <string>

#include "entroseal/error.hpp"

namespace entroseal::keyexpand {

using gf2::BitPoly;

std::string_view to_string(Mode mode) {
    return mode == Mode::Classical ? "classical" : "quantum";
}

Mode parse_mode(std::string_view name) {
    if (name == "classical") {
        return Mode::Classical;
    }
    if (name == "quantum") {
        return Mode::Quantum;
    }
    fail(ErrorKind::Configuration, "unknown mode '" + std::string(name) + "'");
}

ExpansionParams ExpansionParams::make(size_t n, size_t ell, Mode mode) {
    ExpansionParams p;
    p.n = n;
    p.ell = ell;
    p.mode = mode;
    p.out_len = mode == Mode::Classical ? n : 2 * n;
    require(ell >= 1 && ell <= p.out_len, ErrorKind::Precondition,
            "key length " + std::to_string(ell) + " outside [1, " + std::to_string(p.out_len) + "]");
    p.tail_len = p.out_len - ell;
    p.lambda = std::max(ell, p.tail_len);
    return p;
}

BitPoly embed_key(const BitPoly &k, size_t lambda) {
    require(k.nbits() <= lambda, ErrorKind::Precondition, "key longer than field degree");
    return k.resized(lambda);
}

namespace {

void check_operands(const BitPoly &k, const BitPoly &u, const BitPoly &v, const ExpansionParams &p) {
    require(k.nbits() == p.ell, ErrorKind::Precondition, "key length does not match ell");
    require(u.nbits() == p.lambda, ErrorKind::Precondition, "u length does not match lambda");
    require(v.nbits() == p.tail_len, ErrorKind::Precondition, "v length does not match tail length");
}

}  // namespace

BitPoly expand_affine(const BitPoly &k, const BitPoly &u, const BitPoly &v, const ExpansionParams &p,
                      const gf2::FieldSpec &field, gf2::Backend backend) {
    check_operands(k, u, v, p);
    require(field.lambda == p.lambda, ErrorKind::Precondition, "field degree does not match lambda");
    if (p.tail_len == 0) {
        return k;
    }
    BitPoly uk = gf2::gf_mul(u, embed_key(k, p.lambda), field, backend).value;
    BitPoly tail = gf2::lsb_truncate(uk, p.tail_len);
    tail ^= v;
    return k.concat(tail);
}

BitPoly expand_affine(const BitPoly &k, const BitPoly &u, const BitPoly &v, const ExpansionParams &p,
                      gf2::Backend backend) {
    check_operands(k, u, v, p);
    if (p.tail_len == 0) {
        return k;
    }
    return expand_affine(k, u, v, p, gf2::find_irreducible(p.lambda), backend);
}

namespace {

BitPoly fullmul(const BitPoly &k, const BitPoly &other, const ExpansionParams &p, size_t width,
                gf2::Backend backend) {
    require(k.nbits() == p.ell, ErrorKind::Precondition, "key length does not match ell");
    require(other.nbits() == width, ErrorKind::Precondition, "multiplier length does not match field degree");
    const gf2::FieldSpec &field = gf2::find_irreducible(width);
    return gf2::gf_mul(embed_key(k, width), other, field, backend).value;
}

}  // namespace

BitPoly expand_fullmul_classical(const BitPoly &k, const BitPoly &i, const ExpansionParams &p,
                                 gf2::Backend backend) {
    require(p.mode == Mode::Classical, ErrorKind::Precondition, "classical baseline needs classical parameters");
    return fullmul(k, i, p, p.n, backend);
}

BitPoly expand_fullmul_quantum(const BitPoly &k, const BitPoly &alpha, const ExpansionParams &p,
                               gf2::Backend backend) {
    require(p.mode == Mode::Quantum, ErrorKind::Precondition, "quantum baseline needs quantum parameters");
    return fullmul(k, alpha, p, 2 * p.n, backend);
}

std::pair<BitPoly, BitPoly> sample_public_randomness(const ExpansionParams &p, RandomSource &rng) {
    BitPoly u = rng.bits(p.lambda);
    BitPoly v = rng.bits(p.tail_len);
    return {std::move(u), std::move(v)};
}

}  // namespace entroseal::keyexpand
