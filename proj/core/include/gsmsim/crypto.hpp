#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "gsmsim/bytes.hpp"

namespace gsmsim {

// SIM-side / network-side key material. Sizes follow GSM convention:
// Ki 16 B, RAND 16 B, SRES 4 B, Kc 8 B. The types make wrong-length
// input a compile error; hex factories reject bad strings at parse time.

struct Ki {
    std::array<std::uint8_t, 16> bytes{};
    bool operator==(const Ki&) const = default;
};

struct Rand {
    std::array<std::uint8_t, 16> bytes{};
    bool operator==(const Rand&) const = default;
};

struct Sres {
    std::array<std::uint8_t, 4> bytes{};
    bool operator==(const Sres&) const = default;
};

struct Kc {
    std::array<std::uint8_t, 8> bytes{};
    bool operator==(const Kc&) const = default;
};

/// 16-byte pre-shared key for the end-to-end application-layer cipher.
using AppKey = std::array<std::uint8_t, 16>;

std::optional<Ki> ki_from_hex(std::string_view hex);
std::optional<AppKey> app_key_from_hex(std::string_view hex);

enum class CipherAlgoId : std::uint8_t {
    A5_0 = 0,   // null cipher
    A5_SIM = 1, // keystream stand-in for A5/1
};
const char* cipher_name(CipherAlgoId algo);

/// Which value feeds the Kc derivation: SRES per the authentication
/// diagram (default), or RAND as deployed GSM does.
enum class KcInput : std::uint8_t { Sres, Rand };

/// SRES = first 4 bytes of SHA-256(ki || rand || 0x03).
Sres a3_sres(const Ki& ki, const Rand& rand);

/// Kc = first 8 bytes of SHA-256(ki || input || 0x08), where input is the
/// bytes selected by KcInput (SRES or RAND).
Kc a8_kc(const Ki& ki, ByteView input);
Kc a8_kc(const Ki& ki, const Sres& sres);

constexpr std::uint32_t kFnModulus = 1u << 22;  // frame-number salt wraps at 2^22

/// Keystream for one radio burst. A5/0 yields zeros. A5_SIM yields
/// consecutive 32-byte blocks SHA-256(kc || fn_be4 || block_be4).
/// Throws std::invalid_argument when fn >= 2^22.
Bytes keystream(CipherAlgoId algo, const Kc& kc, std::uint32_t fn, std::size_t len);

/// XOR of payload with keystream; self-inverse for fixed (algo, kc, fn).
Bytes apply_cipher(CipherAlgoId algo, const Kc& kc, std::uint32_t fn, ByteView payload);

/// End-to-end payload cipher, independent of the radio cipher: XOR with
/// the A5_SIM keystream keyed by the first 8 bytes of psk at fn = 0.
Bytes app_layer_cipher(const AppKey& psk, ByteView payload);

}  // namespace gsmsim
