#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "gsmsim/bytes.hpp"
#include "gsmsim/crypto.hpp"

namespace gsmsim {

// Canonical byte encoding for every control/SMS message crossing the air
// interface. Layout per message: 1 tag byte, then fields in declaration
// order; big-endian integers; digit strings as packed BCD (two digits per
// byte, 0xF pad). This is deliberately not the 04.08 bit layout.

struct MobileIdentity {
    enum class Kind : std::uint8_t { Imsi = 1, Tmsi = 2 };
    Kind kind = Kind::Imsi;
    std::string imsi;       // exactly 15 digits when kind == Imsi
    std::uint32_t tmsi = 0; // when kind == Tmsi

    static MobileIdentity from_imsi(std::string digits);
    static MobileIdentity from_tmsi(std::uint32_t tmsi);
    bool operator==(const MobileIdentity&) const = default;
};

struct Lai {
    std::string mcc;  // 3 digits
    std::string mnc;  // 2 digits
    std::uint16_t lac = 0;
    bool operator==(const Lai&) const = default;
};

struct Classmark {
    std::uint8_t revision = 0;
    std::uint8_t es_ind = 0;          // 0/1
    std::uint8_t a5_1_supported = 0;  // 0/1
    std::uint8_t power_cap = 0;
    bool operator==(const Classmark&) const = default;
};

enum class RejectCause : std::uint8_t {
    AuthFailed = 1,
    NotAllowed = 2,
    UnknownSubscriber = 3,
    CipherUnsupported = 4,
    ProtocolError = 5,
};
const char* cause_name(RejectCause cause);

struct LocationUpdatingRequest {
    std::uint8_t update_type = 0;  // carried raw, not decoded
    Lai lai;
    MobileIdentity identity;
    Classmark classmark;
    bool operator==(const LocationUpdatingRequest&) const = default;
};

struct IdentityRequest {
    MobileIdentity::Kind requested = MobileIdentity::Kind::Imsi;
    bool operator==(const IdentityRequest&) const = default;
};

struct IdentityResponse {
    MobileIdentity identity;
    bool operator==(const IdentityResponse&) const = default;
};

struct AuthenticationRequest {
    Rand rand;
    bool operator==(const AuthenticationRequest&) const = default;
};

struct AuthenticationResponse {
    Sres sres;
    bool operator==(const AuthenticationResponse&) const = default;
};

struct CipherModeCommand {
    CipherAlgoId algo = CipherAlgoId::A5_0;
    bool operator==(const CipherModeCommand&) const = default;
};

struct CipherModeComplete {
    bool operator==(const CipherModeComplete&) const = default;
};

struct LocationUpdatingAccept {
    Lai lai;
    std::optional<std::uint32_t> new_tmsi;
    bool operator==(const LocationUpdatingAccept&) const = default;
};

struct LocationUpdatingReject {
    RejectCause cause = RejectCause::ProtocolError;
    bool operator==(const LocationUpdatingReject&) const = default;
};

struct WelcomeMessage {
    std::string text;
    bool operator==(const WelcomeMessage&) const = default;
};

struct CpData {
    std::uint8_t ti = 0;  // transaction id, 0..7
    Bytes rpdu;
    bool operator==(const CpData&) const = default;
};

struct CpAck {
    std::uint8_t ti = 0;
    bool operator==(const CpAck&) const = default;
};

struct RpData {
    std::string msisdn;  // routing address (destination on the MO leg)
    Bytes tpdu;
    bool operator==(const RpData&) const = default;
};

// SMS payload unit. The wire form carries the packed 7-bit user data plus
// its septet count; text packing/unpacking happens at the construction
// API so the end-to-end app-layer cipher can XOR user_data directly.
struct SmsTpdu {
    std::string sender;  // originator MSISDN digits; may be empty
    std::uint8_t septet_count = 0;
    Bytes user_data;

    static SmsTpdu from_text(const std::string& sender, std::string_view text);
    std::string text() const;
    bool operator==(const SmsTpdu&) const = default;
};

using L3Message = std::variant<LocationUpdatingRequest, IdentityRequest, IdentityResponse,
                               AuthenticationRequest, AuthenticationResponse, CipherModeCommand,
                               CipherModeComplete, LocationUpdatingAccept, LocationUpdatingReject,
                               WelcomeMessage, CpData, CpAck, RpData, SmsTpdu>;

struct DecodeError {
    std::size_t offset = 0;
    std::string reason;
};

using DecodeResult = std::variant<L3Message, DecodeError>;

Bytes encode(const L3Message& m);

/// Total: arbitrary input yields either a message or a structured error;
/// the whole buffer must be consumed.
DecodeResult decode(ByteView b);

std::string to_string(const L3Message& m);

/// Canonical 5-byte LAI wire form (packed BCD mcc+mnc, big-endian lac);
/// also serves as the cell beacon payload.
Bytes lai_bytes(const Lai& lai);

/// GSM 7-bit septet packing: character i contributes its low 7 bits
/// starting at bit 7*i of the output stream, little-endian within octets.
/// Characters outside the supported alphabet are rejected with nullopt.
std::optional<Bytes> pack_7bit(std::string_view text);
std::string unpack_7bit(ByteView packed, std::size_t septets);
bool is_gsm_text(std::string_view text);
constexpr std::size_t kMaxSmsSeptets = 160;

/// ceil(7*n/8): packed byte length for n septets.
constexpr std::size_t packed_7bit_size(std::size_t septets) {
    return (septets * 7 + 7) / 8;
}

}  // namespace gsmsim
