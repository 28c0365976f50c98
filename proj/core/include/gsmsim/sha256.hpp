#pragma once

#include <array>
#include <cstdint>

#include "gsmsim/bytes.hpp"

namespace gsmsim {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256();
    void update(ByteView data);
    Digest finish();

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

Digest sha256(ByteView data);

}  // namespace gsmsim
