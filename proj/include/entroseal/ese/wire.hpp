#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "entroseal/error.hpp"
#include "entroseal/ese/scheme.hpp"

namespace entroseal::ese {

// Layout, multi-byte integers little-endian, bit i of byte j is coefficient x^(8j+i):
//   "ESE1" | version 0x01 | mode (0x00 classical, 0x01 quantum key tag) | n (u64) | ell (u64)
//   | u (ceil(lambda/8)) | v (ceil(tail_len/8)) | payload (ceil(n/8) or ceil(2n/8))
// Unused high bits of the last byte of each field are zero.
inline constexpr uint8_t kWireVersion = 0x01;
inline constexpr size_t kWireHeaderBytes = 22;

enum class WireError {
    BadMagic,
    BadVersion,
    BadMode,
    Truncated,
    InconsistentLength,  // parameters out of range, nonzero pad bits, or trailing bytes
};

std::string_view to_string(WireError code);

class FormatError : public Error {
   public:
    FormatError(WireError code, const std::string &message);
    WireError code() const noexcept {
        return code_;
    }

   private:
    WireError code_;
};

std::vector<uint8_t> serialize(const Ciphertext &c);
Ciphertext deserialize(std::span<const uint8_t> bytes);

}  // namespace entroseal::ese
