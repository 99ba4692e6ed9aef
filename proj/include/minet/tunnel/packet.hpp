#ifndef MINET_TUNNEL_PACKET_HPP
#define MINET_TUNNEL_PACKET_HPP

#include "minet/apov/crypto.hpp"
#include "minet/core/identifier.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace minet::tunnel {

using apov::Bytes;

enum SignalFlag : std::uint8_t {
  SYN = 0x01,
  ACK = 0x02,
  FIN = 0x04,
  RST = 0x08,
};

std::string
flagsToString(std::uint8_t flags);

/// Transport signaling carried across the CCN segment. The payload length is
/// derived from the attached payload and is not part of the header.
struct SignalingHeader
{
  std::uint8_t flags = 0;
  std::uint32_t seq = 0;
  std::uint32_t ack = 0;
  std::uint32_t srcAddr = 0;
  std::uint32_t dstAddr = 0;
  std::uint16_t srcPort = 0;
  std::uint16_t dstPort = 0;

  static constexpr std::size_t WIRE_SIZE = 21;

  bool
  isControl() const noexcept
  {
    return flags != 0;
  }

  friend bool operator==(const SignalingHeader&, const SignalingHeader&) = default;
};

/// A transport segment as seen on the IP side of a gateway.
struct Segment
{
  SignalingHeader header;
  Bytes payload;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct InterestPacket
{
  ContentName name;
  std::optional<SignalingHeader> signaling;
  std::optional<Bytes> payload;

  friend bool operator==(const InterestPacket&, const InterestPacket&) = default;
};

Bytes
encodeHeader(const SignalingHeader& h);

SignalingHeader
decodeHeader(std::span<const std::uint8_t> wire);

/// Layout: u16 name length, name text, u8 has-signaling, 21-byte header,
/// u8 has-payload, u32 payload length, payload. Big-endian throughout.
Bytes
encodeInterest(const InterestPacket& interest);

/// Throws ParseError on malformed or trailing input.
InterestPacket
decodeInterest(std::span<const std::uint8_t> wire);

/// IP-side framing: 21-byte header, u32 payload length, payload.
Bytes
encodeSegment(const Segment& segment);

Segment
decodeSegment(std::span<const std::uint8_t> wire);

/// Hash of the 4-tuple, as 16 hex digits. Symmetric in the two ends so both
/// directions of a connection share one discriminator.
std::string
connectionId(const SignalingHeader& h);

} // namespace minet::tunnel

#endif // MINET_TUNNEL_PACKET_HPP
