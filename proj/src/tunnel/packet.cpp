#include "minet/tunnel/packet.hpp"

#include "minet/apov/serialization.hpp"
#include "minet/core/error.hpp"

#include <algorithm>
#include <limits>

namespace minet::tunnel {

std::string
flagsToString(std::uint8_t flags)
{
  static const std::pair<std::uint8_t, const char*> NAMES[] = {{SYN, "SYN"}, {FIN, "FIN"}, {RST, "RST"}, {ACK, "ACK"}};
  std::string out;
  for (auto [bit, name] : NAMES) {
    if ((flags & bit) == 0)
      continue;
    if (!out.empty())
      out += '+';
    out += name;
  }
  return out.empty() ? "DATA" : out;
}

namespace {

void
writeHeader(apov::Writer& w, const SignalingHeader& h)
{
  w.u8(h.flags);
  w.u32(h.seq);
  w.u32(h.ack);
  w.u32(h.srcAddr);
  w.u32(h.dstAddr);
  w.u16(h.srcPort);
  w.u16(h.dstPort);
}

SignalingHeader
readHeader(apov::Reader& r)
{
  SignalingHeader h;
  h.flags = r.u8();
  h.seq = r.u32();
  h.ack = r.u32();
  h.srcAddr = r.u32();
  h.dstAddr = r.u32();
  h.srcPort = r.u16();
  h.dstPort = r.u16();
  return h;
}

void
expectEnd(const apov::Reader& r, const char* what)
{
  if (!r.atEnd())
    throw Error(Errc::ParseError, std::string("trailing bytes after ") + what);
}

} // namespace

Bytes
encodeHeader(const SignalingHeader& h)
{
  apov::Writer w;
  writeHeader(w, h);
  return w.release();
}

SignalingHeader
decodeHeader(std::span<const std::uint8_t> wire)
{
  apov::Reader r(wire);
  auto h = readHeader(r);
  expectEnd(r, "signaling header");
  return h;
}

Bytes
encodeInterest(const InterestPacket& interest)
{
  auto uri = interest.name.toUri();
  if (uri.size() > std::numeric_limits<std::uint16_t>::max())
    throw Error(Errc::OutOfRange, "interest name too long");
  apov::Writer w;
  w.u16(static_cast<std::uint16_t>(uri.size()));
  w.raw({reinterpret_cast<const std::uint8_t*>(uri.data()), uri.size()});
  w.u8(interest.signaling ? 1 : 0);
  if (interest.signaling)
    writeHeader(w, *interest.signaling);
  w.u8(interest.payload ? 1 : 0);
  if (interest.payload)
    w.bytes(*interest.payload);
  return w.release();
}

InterestPacket
decodeInterest(std::span<const std::uint8_t> wire)
{
  apov::Reader r(wire);
  InterestPacket p;
  auto len = r.u16();
  auto text = r.raw(len);
  p.name = ContentName::parse(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()));
  auto flag = [&](const char* field) {
    auto v = r.u8();
    if (v > 1)
      throw Error(Errc::ParseError, std::string("bad presence byte for ") + field);
    return v == 1;
  };
  if (flag("signaling"))
    p.signaling = readHeader(r);
  if (flag("payload"))
    p.payload = r.bytes();
  expectEnd(r, "interest");
  return p;
}

Bytes
encodeSegment(const Segment& segment)
{
  apov::Writer w;
  writeHeader(w, segment.header);
  w.bytes(segment.payload);
  return w.release();
}

Segment
decodeSegment(std::span<const std::uint8_t> wire)
{
  apov::Reader r(wire);
  Segment s;
  s.header = readHeader(r);
  s.payload = r.bytes();
  expectEnd(r, "segment");
  return s;
}

std::string
connectionId(const SignalingHeader& h)
{
  std::uint64_t a = (std::uint64_t{h.srcAddr} << 16) | h.srcPort;
  std::uint64_t b = (std::uint64_t{h.dstAddr} << 16) | h.dstPort;
  if (a > b)
    std::swap(a, b);
  apov::Writer w;
  w.u64(a);
  w.u64(b);
  auto d = apov::sha256(w.buffer());
  static const char HEX[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < 8; ++i) {
    out += HEX[d[i] >> 4];
    out += HEX[d[i] & 0xf];
  }
  return out;
}

} // namespace minet::tunnel
