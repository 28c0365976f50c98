#pragma once

#include <cstdarg>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gsmsim {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Lowercase hex rendering of a byte string ("" for empty input).
std::string hex_dump(ByteView bytes);

struct HexError {
    std::size_t offset = 0;
    std::string reason;
};

/// Inverse of hex_dump; accepts either case. Odd length or a non-hex
/// character yields HexError with the offending offset.
std::variant<Bytes, HexError> hex_parse(std::string_view hex);

void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
std::uint16_t get_u16_be(const std::uint8_t* p);
std::uint32_t get_u32_be(const std::uint8_t* p);

/// printf-style formatting into a std::string.
std::string strfmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

/// True when every character is a decimal digit (and the string is non-empty).
bool all_digits(std::string_view s);

/// Escapes non-printable bytes as \xNN so arbitrary payload text can be
/// logged on a single transcript line.
std::string escape_text(std::string_view s);

/// True when `needle` occurs as a contiguous subsequence of `hay`.
bool contains_bytes(ByteView hay, ByteView needle);

}  // namespace gsmsim
