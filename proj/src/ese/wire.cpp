#include "entroseal/ese/wire.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace entroseal::ese {

namespace {

constexpr std::array<uint8_t, 4> kMagic = {'E', 'S', 'E', '1'};
// Keeps 2n and the byte counts far from overflow; such inputs cannot be genuine.
constexpr uint64_t kMaxWireN = uint64_t{1} << 56;

size_t byte_len(size_t nbits) {
    return (nbits + 7) / 8;
}

void put_u64(std::vector<uint8_t> &out, uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<uint8_t>(value >> (8 * i)));
    }
}

uint64_t get_u64(const uint8_t *p) {
    uint64_t value = 0;
    for (int i = 7; i >= 0; --i) {
        value = (value << 8) | p[i];
    }
    return value;
}

void put_field(std::vector<uint8_t> &out, const gf2::BitPoly &field) {
    std::vector<uint8_t> bytes = field.to_bytes();
    out.insert(out.end(), bytes.begin(), bytes.end());
}

gf2::BitPoly take_field(std::span<const uint8_t> &rest, size_t nbits, const char *name) {
    size_t len = byte_len(nbits);
    std::span<const uint8_t> bytes = rest.first(len);
    if (nbits % 8 != 0 && (bytes[len - 1] >> (nbits % 8)) != 0) {
        throw FormatError(WireError::InconsistentLength, std::string("nonzero pad bits in field ") + name);
    }
    rest = rest.subspan(len);
    return gf2::BitPoly::from_bytes(bytes, nbits);
}

}  // namespace

std::string_view to_string(WireError code) {
    switch (code) {
        case WireError::BadMagic:
            return "bad_magic";
        case WireError::BadVersion:
            return "bad_version";
        case WireError::BadMode:
            return "bad_mode";
        case WireError::Truncated:
            return "truncated";
        case WireError::InconsistentLength:
            return "inconsistent_length";
    }
    return "unknown";
}

FormatError::FormatError(WireError code, const std::string &message)
    : Error(ErrorKind::Format, std::string(to_string(code)) + ": " + message), code_(code) {}

std::vector<uint8_t> serialize(const Ciphertext &c) {
    c.validate();
    std::vector<uint8_t> out(kMagic.begin(), kMagic.end());
    out.push_back(kWireVersion);
    out.push_back(c.mode == Mode::Classical ? 0x00 : 0x01);
    put_u64(out, c.n);
    put_u64(out, c.ell);
    put_field(out, c.u);
    put_field(out, c.v);
    put_field(out, c.payload);
    return out;
}

Ciphertext deserialize(std::span<const uint8_t> bytes) {
    size_t magic_seen = std::min(bytes.size(), kMagic.size());
    if (magic_seen > 0 && std::memcmp(bytes.data(), kMagic.data(), magic_seen) != 0) {
        throw FormatError(WireError::BadMagic, "input does not start with \"ESE1\"");
    }
    if (bytes.size() < kWireHeaderBytes) {
        if (bytes.size() > 4 && bytes[4] != kWireVersion) {
            throw FormatError(WireError::BadVersion, "unsupported version " + std::to_string(bytes[4]));
        }
        throw FormatError(WireError::Truncated, "header needs " + std::to_string(kWireHeaderBytes) +
                                                    " bytes, got " + std::to_string(bytes.size()));
    }
    if (bytes[4] != kWireVersion) {
        throw FormatError(WireError::BadVersion, "unsupported version " + std::to_string(bytes[4]));
    }
    Ciphertext c;
    switch (bytes[5]) {
        case 0x00:
            c.mode = Mode::Classical;
            break;
        case 0x01:
            c.mode = Mode::Quantum;
            break;
        default:
            throw FormatError(WireError::BadMode, "unknown mode byte " + std::to_string(bytes[5]));
    }
    uint64_t n = get_u64(bytes.data() + 6);
    uint64_t ell = get_u64(bytes.data() + 14);
    if (n == 0 || n > kMaxWireN) {
        throw FormatError(WireError::InconsistentLength, "n = " + std::to_string(n) + " is out of range");
    }
    uint64_t out_len = c.mode == Mode::Classical ? n : 2 * n;
    if (ell == 0 || ell > out_len) {
        throw FormatError(WireError::InconsistentLength, "ell = " + std::to_string(ell) + " is outside [1, " +
                                                             std::to_string(out_len) + "]");
    }
    c.n = n;
    c.ell = ell;
    keyexpand::ExpansionParams p = c.expansion();
    uint64_t body = byte_len(p.lambda) + byte_len(p.tail_len) + byte_len(p.out_len);
    std::span<const uint8_t> rest = bytes.subspan(kWireHeaderBytes);
    if (rest.size() < body) {
        throw FormatError(WireError::Truncated, "body needs " + std::to_string(body) + " bytes, got " +
                                                    std::to_string(rest.size()));
    }
    if (rest.size() > body) {
        throw FormatError(WireError::InconsistentLength,
                          std::to_string(rest.size() - body) + " trailing bytes after the payload");
    }
    c.u = take_field(rest, p.lambda, "u");
    c.v = take_field(rest, p.tail_len, "v");
    c.payload = take_field(rest, p.out_len, "payload");
    return c;
}

}  // namespace entroseal::ese
