#include "gsmsim/crypto.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "gsmsim/sha256.hpp"

namespace gsmsim {

namespace {

constexpr std::uint8_t kA3DomainSuffix = 0x03;
constexpr std::uint8_t kA8DomainSuffix = 0x08;

template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> array_from_hex(std::string_view hex) {
    auto parsed = hex_parse(hex);
    auto* bytes = std::get_if<Bytes>(&parsed);
    if (!bytes || bytes->size() != N) return std::nullopt;
    std::array<std::uint8_t, N> out;
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

}  // namespace

std::optional<Ki> ki_from_hex(std::string_view hex) {
    auto a = array_from_hex<16>(hex);
    if (!a) return std::nullopt;
    return Ki{*a};
}

std::optional<AppKey> app_key_from_hex(std::string_view hex) {
    return array_from_hex<16>(hex);
}

const char* cipher_name(CipherAlgoId algo) {
    switch (algo) {
        case CipherAlgoId::A5_0: return "A5/0";
        case CipherAlgoId::A5_SIM: return "A5/SIM";
    }
    return "A5/?";
}

Sres a3_sres(const Ki& ki, const Rand& rand) {
    Sha256 h;
    h.update(ByteView(ki.bytes));
    h.update(ByteView(rand.bytes));
    h.update(ByteView(&kA3DomainSuffix, 1));
    Digest d = h.finish();
    Sres out;
    std::copy_n(d.begin(), out.bytes.size(), out.bytes.begin());
    return out;
}

Kc a8_kc(const Ki& ki, ByteView input) {
    Sha256 h;
    h.update(ByteView(ki.bytes));
    h.update(input);
    h.update(ByteView(&kA8DomainSuffix, 1));
    Digest d = h.finish();
    Kc out;
    std::copy_n(d.begin(), out.bytes.size(), out.bytes.begin());
    return out;
}

Kc a8_kc(const Ki& ki, const Sres& sres) {
    return a8_kc(ki, ByteView(sres.bytes));
}

Bytes keystream(CipherAlgoId algo, const Kc& kc, std::uint32_t fn, std::size_t len) {
    if (fn >= kFnModulus) throw std::invalid_argument("keystream: fn out of range");
    Bytes out(len, 0);
    if (algo == CipherAlgoId::A5_0 || len == 0) return out;

    std::uint8_t prefix[12];
    std::memcpy(prefix, kc.bytes.data(), 8);
    prefix[8] = static_cast<std::uint8_t>(fn >> 24);
    prefix[9] = static_cast<std::uint8_t>(fn >> 16);
    prefix[10] = static_cast<std::uint8_t>(fn >> 8);
    prefix[11] = static_cast<std::uint8_t>(fn);

    std::size_t produced = 0;
    for (std::uint32_t block = 0; produced < len; ++block) {
        Sha256 h;
        h.update(ByteView(prefix, sizeof prefix));
        std::uint8_t block_be[4] = {
            static_cast<std::uint8_t>(block >> 24),
            static_cast<std::uint8_t>(block >> 16),
            static_cast<std::uint8_t>(block >> 8),
            static_cast<std::uint8_t>(block),
        };
        h.update(ByteView(block_be, 4));
        Digest d = h.finish();
        std::size_t take = std::min<std::size_t>(d.size(), len - produced);
        std::copy_n(d.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(produced));
        produced += take;
    }
    return out;
}

Bytes apply_cipher(CipherAlgoId algo, const Kc& kc, std::uint32_t fn, ByteView payload) {
    Bytes ks = keystream(algo, kc, fn, payload.size());
    for (std::size_t i = 0; i < payload.size(); ++i) ks[i] ^= payload[i];
    return ks;
}

Bytes app_layer_cipher(const AppKey& psk, ByteView payload) {
    Kc key;
    std::copy_n(psk.begin(), key.bytes.size(), key.bytes.begin());
    return apply_cipher(CipherAlgoId::A5_SIM, key, 0, payload);
}

}  // namespace gsmsim
