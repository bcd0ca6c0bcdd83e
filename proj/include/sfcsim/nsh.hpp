#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace sfcsim {

// NSH wire constants. The header is MD Type 2 with exactly one metadata TLV
// carrying the 64-bit flow hash:
//   bytes 0..3   base header      ver:2 | O:1 | U:1 | TTL:6 | Len:6 | R:4 | MD:4 | NextProto:8
//   bytes 4..7   service path     SPI:24 | SI:8
//   bytes 8..19  metadata TLV     Class:16 | Type:8 | U:1 | Len:7 | hash:64
constexpr std::size_t kNshHeaderBytes = 20;
constexpr std::uint8_t kNshLengthWords = 5;  // 20 bytes in 4-byte words
constexpr std::uint8_t kNshMdType = 2;
constexpr std::uint16_t kNshTlvClass = 0xFFFE;  // experimental class
constexpr std::uint8_t kNshTlvType = 0x01;      // flow hash
constexpr std::uint8_t kNshTlvLength = 8;
constexpr std::uint8_t kNshInitialTtl = 63;
constexpr std::uint32_t kNshMaxSpi = 0xFFFFFF;

struct NshHeader {
    std::uint8_t version = 0;                      // 2 bits, must be 0
    bool o_bit = false;
    bool u_bit = false;
    std::uint8_t ttl = kNshInitialTtl;             // 6 bits
    std::uint8_t length_words = kNshLengthWords;   // 6 bits
    std::uint8_t md_type = kNshMdType;             // 4 bits
    std::uint8_t next_protocol = 0x01;             // inner payload type
    std::uint32_t spi = 0;                         // 24 bits
    std::uint8_t si = 0;
    std::uint64_t flow_hash = 0;

    bool operator==(const NshHeader&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// True when every field fits its wire width.
bool nsh_header_valid(const NshHeader& h);

// Encodes to the fixed 20-byte layout. Throws std::invalid_argument on a
// header that does not fit.
std::array<std::uint8_t, kNshHeaderBytes> nsh_encode(const NshHeader& h);

// Strict decode: reserved bits must be zero and the TLV must be the flow-hash
// TLV, so any corrupted encoding either decodes to a different header or
// throws ParseError.
NshHeader nsh_decode(std::span<const std::uint8_t> bytes);

// Canonical 5-tuple; the flow hash is computed from its big-endian byte
// string so every node derives the same value.
struct FlowKey {
    std::uint32_t src_addr = 0;
    std::uint32_t dst_addr = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t protocol = 0;

    auto operator<=>(const FlowKey&) const = default;

    std::array<std::uint8_t, 13> canonical_bytes() const;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t flow_hash(const FlowKey& key);

}  // namespace sfcsim
