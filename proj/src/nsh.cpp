#include "sfcsim/nsh.hpp"

namespace sfcsim {

bool nsh_header_valid(const NshHeader& h) {
    return h.version < 4 && h.ttl < 64 && h.length_words < 64 &&
           h.md_type < 16 && h.spi <= kNshMaxSpi;
}

std::array<std::uint8_t, kNshHeaderBytes> nsh_encode(const NshHeader& h) {
    if (!nsh_header_valid(h)) {
        throw std::invalid_argument("NSH header field out of range");
    }
    std::array<std::uint8_t, kNshHeaderBytes> out{};
    out[0] = static_cast<std::uint8_t>((h.version << 6) |
                                       (h.o_bit ? 0x20 : 0) |
                                       (h.u_bit ? 0x10 : 0) | (h.ttl >> 2));
    out[1] = static_cast<std::uint8_t>(((h.ttl & 0x03) << 6) | h.length_words);
    out[2] = h.md_type;  // high nibble reserved, zero
    out[3] = h.next_protocol;
    out[4] = static_cast<std::uint8_t>(h.spi >> 16);
    out[5] = static_cast<std::uint8_t>(h.spi >> 8);
    out[6] = static_cast<std::uint8_t>(h.spi);
    out[7] = h.si;
    out[8] = static_cast<std::uint8_t>(kNshTlvClass >> 8);
    out[9] = static_cast<std::uint8_t>(kNshTlvClass);
    out[10] = kNshTlvType;  // TLV unassigned bit zero
    out[11] = kNshTlvLength;
    for (int i = 0; i < 8; ++i) {
        out[12 + i] = static_cast<std::uint8_t>(h.flow_hash >> (56 - 8 * i));
    }
    return out;
}

NshHeader nsh_decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw ParseError(bytes.size(), "truncated NSH base + service headers");
    }
    NshHeader h;
    h.version = bytes[0] >> 6;
    if (h.version != 0) throw ParseError(0, "unsupported NSH version");
    h.o_bit = (bytes[0] & 0x20) != 0;
    h.u_bit = (bytes[0] & 0x10) != 0;
    h.ttl = static_cast<std::uint8_t>(((bytes[0] & 0x0F) << 2) | (bytes[1] >> 6));
    h.length_words = bytes[1] & 0x3F;
    if (h.length_words != kNshLengthWords) {
        throw ParseError(1, "length inconsistent with MD Type 2 flow-hash TLV");
    }
    if ((bytes[2] & 0xF0) != 0) throw ParseError(2, "reserved bits set");
    h.md_type = bytes[2] & 0x0F;
    if (h.md_type != kNshMdType) throw ParseError(2, "unsupported MD type");
    h.next_protocol = bytes[3];
    h.spi = (static_cast<std::uint32_t>(bytes[4]) << 16) |
            (static_cast<std::uint32_t>(bytes[5]) << 8) | bytes[6];
    h.si = bytes[7];
    if (bytes.size() < kNshHeaderBytes) {
        throw ParseError(bytes.size(), "truncated metadata TLV");
    }
    const std::uint16_t tlv_class =
        static_cast<std::uint16_t>((bytes[8] << 8) | bytes[9]);
    if (tlv_class != kNshTlvClass) throw ParseError(8, "unknown TLV class");
    if (bytes[10] != kNshTlvType) throw ParseError(10, "unknown TLV type");
    if (bytes[11] != kNshTlvLength) throw ParseError(11, "bad TLV length");
    h.flow_hash = 0;
    for (int i = 0; i < 8; ++i) {
        h.flow_hash = (h.flow_hash << 8) | bytes[12 + i];
    }
    return h;
}

std::array<std::uint8_t, 13> FlowKey::canonical_bytes() const {
    std::array<std::uint8_t, 13> b{};
    b[0] = static_cast<std::uint8_t>(src_addr >> 24);
    b[1] = static_cast<std::uint8_t>(src_addr >> 16);
    b[2] = static_cast<std::uint8_t>(src_addr >> 8);
    b[3] = static_cast<std::uint8_t>(src_addr);
    b[4] = static_cast<std::uint8_t>(dst_addr >> 24);
    b[5] = static_cast<std::uint8_t>(dst_addr >> 16);
    b[6] = static_cast<std::uint8_t>(dst_addr >> 8);
    b[7] = static_cast<std::uint8_t>(dst_addr);
    b[8] = static_cast<std::uint8_t>(src_port >> 8);
    b[9] = static_cast<std::uint8_t>(src_port);
    b[10] = static_cast<std::uint8_t>(dst_port >> 8);
    b[11] = static_cast<std::uint8_t>(dst_port);
    b[12] = protocol;
    return b;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (std::uint8_t b : bytes) {
        hash ^= b;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

std::uint64_t flow_hash(const FlowKey& key) {
    const auto bytes = key.canonical_bytes();
    return fnv1a64(bytes);
}

}  // namespace sfcsim
