#include "minet/core/error.hpp"
#include "minet/tunnel/scenario.hpp"

#include <doctest.h>

#include <random>

using namespace minet;
using namespace minet::tunnel;

namespace {

std::vector<std::uint8_t>
flagsOf(const std::vector<ControlExchange>& trace)
{
  std::vector<std::uint8_t> out;
  for (const auto& e : trace)
    out.push_back(e.flags);
  return out;
}

SignalingHeader
randomHeader(std::mt19937_64& rng)
{
  SignalingHeader h;
  h.flags = static_cast<std::uint8_t>(rng());
  h.seq = static_cast<std::uint32_t>(rng());
  h.ack = static_cast<std::uint32_t>(rng());
  h.srcAddr = static_cast<std::uint32_t>(rng());
  h.dstAddr = static_cast<std::uint32_t>(rng());
  h.srcPort = static_cast<std::uint16_t>(rng());
  h.dstPort = static_cast<std::uint16_t>(rng());
  return h;
}

MirTable
twoMirs()
{
  MirTable t;
  t.add({ContentName::parse("/mir1"), IpAddress::parse("192.0.2.1")});
  t.add({ContentName::parse("/mir2"), IpAddress::parse("192.0.2.2")});
  return t;
}

Errc
errorOf(const std::function<void()>& f)
{
  try {
    f();
  }
  catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::ParseError;
}

} // namespace

TEST_CASE("signaling header wire layout")
{
  SignalingHeader h{SYN | ACK, 0x01020304, 0x05060708, 0x0a000001, 0xc0000202, 0x1f90, 0x0050};
  auto wire = encodeHeader(h);
  CHECK(wire == Bytes{0x03, 1, 2, 3, 4, 5, 6, 7, 8, 0x0a, 0, 0, 1, 0xc0, 0, 2, 2, 0x1f, 0x90, 0, 0x50});
  CHECK(wire.size() == SignalingHeader::WIRE_SIZE);
  CHECK(decodeHeader(wire) == h);
  wire.pop_back();
  CHECK(errorOf([&] { decodeHeader(wire); }) == Errc::ParseError);
  CHECK(flagsToString(SYN | ACK) == "SYN+ACK");
  CHECK(flagsToString(0) == "DATA");
}

TEST_CASE("interest and segment framing round-trip")
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    InterestPacket p;
    p.name = ContentName::parse("/mir" + std::to_string(rng() % 5) + "/c" + std::to_string(rng()));
    if (rng() % 4)
      p.signaling = randomHeader(rng);
    if (rng() % 3) {
      p.payload = Bytes(rng() % 300);
      for (auto& b : *p.payload)
        b = static_cast<std::uint8_t>(rng());
    }
    CHECK(decodeInterest(encodeInterest(p)) == p);

    Segment s{randomHeader(rng), p.payload.value_or(Bytes{})};
    CHECK(decodeSegment(encodeSegment(s)) == s);
  }

  InterestPacket bare{ContentName::parse("/a"), std::nullopt, std::nullopt};
  auto wire = encodeInterest(bare);
  CHECK(wire == Bytes{0, 2, '/', 'a', 0, 0});
  wire.push_back(0);
  CHECK(errorOf([&] { decodeInterest(wire); }) == Errc::ParseError);
  CHECK(errorOf([&] { decodeInterest(Bytes{0, 2, '/', 'a', 2, 0}); }) == Errc::ParseError);
  CHECK(errorOf([&] { decodeInterest(Bytes{0, 9, '/', 'a'}); }) == Errc::ParseError);
}

TEST_CASE("connection discriminator is symmetric")
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto h = randomHeader(rng);
    auto r = h;
    std::swap(r.srcAddr, r.dstAddr);
    std::swap(r.srcPort, r.dstPort);
    r.flags ^= 0xff;
    r.seq += 1;
    CHECK(connectionId(h) == connectionId(r));
    CHECK(connectionId(h).size() == 16);
    auto other = h;
    other.srcPort ^= 1;
    CHECK(connectionId(other) != connectionId(h));
  }
}

TEST_CASE("MIR table")
{
  auto t = twoMirs();
  CHECK(t.size() == 2);
  CHECK(errorOf([&] { t.add({ContentName::parse("/mir1"), IpAddress::parse("192.0.2.9")}); }) == Errc::Duplicate);
  CHECK(errorOf([&] { t.add({ContentName::parse("/mir9"), IpAddress::parse("192.0.2.1")}); }) == Errc::Duplicate);
  CHECK(errorOf([&] { t.add({ContentName::parse("/v6"), IpAddress::parse("2001:db8::1")}); }) == Errc::MalformedIp);
  CHECK(errorOf([&] { t.byPrefix(ContentName::parse("/nope")); }) == Errc::UnknownMir);
  CHECK(errorOf([&] { t.byAddress(IpAddress::parse("10.1.1.1")); }) == Errc::UnknownMir);
  CHECK(t.size() == 2);

  for (const auto* p : {"/mir1", "/mir2"}) {
    auto prefix = ContentName::parse(p);
    CHECK(t.byAddress(t.byPrefix(prefix).ip).ccnPrefix == prefix);
  }
  CHECK(t.owning(ContentName::parse("/mir2/abc"))->ip == IpAddress::parse("192.0.2.2"));
  CHECK(t.owning(ContentName::parse("/mir3/abc")) == nullptr);
}

TEST_CASE("encapsulation")
{
  auto t = twoMirs();
  Segment syn{{SYN, 7, 0, 0x0a000001, 0x0a000002, 40000, 80}, {}};
  auto id = connectionId(syn.header);
  auto p = encapsulateSignal(t, syn, ContentName::parse("/mir2"), id);
  CHECK(p.name.toUri() == "/mir2/" + id);
  REQUIRE(p.signaling);
  CHECK(p.signaling->flags == SYN);
  CHECK_FALSE(p.payload);
  CHECK(decapsulate(t, p) == syn);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Segment s{randomHeader(rng), Bytes(rng() % 64, static_cast<std::uint8_t>(i))};
    auto q = encapsulateSignal(t, s, ContentName::parse(i % 2 ? "/mir1" : "/mir2"), connectionId(s.header));
    CHECK(decapsulate(t, decodeInterest(encodeInterest(q))) == s);
  }

  CHECK(errorOf([&] { encapsulateSignal(t, syn, ContentName::parse("/mir3"), id); }) == Errc::UnknownMir);
  CHECK(errorOf([&] { decapsulate(t, {ContentName::parse("/mir3/x"), syn.header, std::nullopt}); }) ==
        Errc::UnknownMir);
  CHECK(errorOf([&] { decapsulate(t, {ContentName::parse("/mir1/x"), std::nullopt, std::nullopt}); }) ==
        Errc::ParseError);
}

TEST_CASE("handshakes in every mode")
{
  for (auto mode : ALL_TUNNEL_MODES) {
    CAPTURE(to_string(mode));
    Tunnel t(mode);
    CHECK(t.initiator().state() == ConnState::Closed);
    auto open = t.establish();
    CHECK(flagsOf(open) == std::vector<std::uint8_t>{SYN, SYN | ACK, ACK});
    CHECK(open[0].fromInitiator);
    CHECK_FALSE(open[1].fromInitiator);
    std::size_t ccnLinks = mode == TunnelMode::CcnIpCcn ? 2 : 1;
    for (const auto& e : open) {
      CHECK(e.interests.size() == ccnLinks);
      for (const auto& n : e.interests)
        CHECK(t.mirs().owning(n) != nullptr);
    }
    CHECK(t.initiator().state() == ConnState::Established);
    CHECK(t.responder().state() == ConnState::Established);
    CHECK(errorOf([&] { t.establish(); }) == Errc::InvalidState);

    auto close = t.terminate();
    CHECK(flagsOf(close) == std::vector<std::uint8_t>{FIN, ACK, FIN, ACK});
    CHECK(close[0].fromInitiator);
    CHECK_FALSE(close[1].fromInitiator);
    CHECK_FALSE(close[2].fromInitiator);
    CHECK(close[3].fromInitiator);
    for (const auto& e : close)
      CHECK(e.interests.size() == ccnLinks);
    CHECK(t.initiator().state() == ConnState::Closed);
    CHECK(t.responder().state() == ConnState::Closed);
    CHECK(t.responder().received().empty());
    CHECK(t.interestsTotal() == 7 * ccnLinks);
    CHECK(errorOf([&] { t.terminate(); }) == Errc::InvalidState);

    CHECK(t.establish().size() == 3);
  }
}

TEST_CASE("silent peer times out")
{
  for (auto mode : ALL_TUNNEL_MODES) {
    TunnelOptions o;
    o.silentPeer = true;
    Tunnel t(mode, o);
    CHECK(errorOf([&] { t.establish(); }) == Errc::Timeout);
    CHECK(t.initiator().state() == ConnState::Closed);
    CHECK(t.responder().state() == ConnState::Closed);
  }
}

TEST_CASE("state errors")
{
  Tunnel t(TunnelMode::IpCcnIp);
  Bytes data(10, 1);
  CHECK(errorOf([&] { t.transfer(data); }) == Errc::InvalidState);
  CHECK(errorOf([&] { t.terminate(); }) == Errc::InvalidState);
}

TEST_CASE("byte-stream fidelity")
{
  SUBCASE("empty payload")
  {
    for (auto mode : ALL_TUNNEL_MODES) {
      auto r = runScenario(mode, {});
      CHECK(r.intact());
      CHECK(r.bytesDelivered == 0);
      CHECK(r.establishment.size() == 3);
      CHECK(r.termination.size() == 4);
    }
  }

  SUBCASE("random payloads with reordering and loss")
  {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 24; ++trial) {
      auto mode = ALL_TUNNEL_MODES[trial % 4];
      TunnelOptions o;
      o.seed = rng();
      o.jitter = 2'000'000;
      o.lossRate = trial % 3 == 0 ? 0.05 : 0.0;
      o.endpoint.segmentSize = 1 + static_cast<std::uint32_t>(rng() % 5000);
      auto payload = randomPayload(rng() % 300'000, rng());
      auto r = runScenario(mode, payload, o);
      CAPTURE(trial);
      CHECK(r.intact());
      CHECK(r.establishment.size() == 3);
      CHECK(r.termination.size() == 4);
      if (o.lossRate > 0 && !payload.empty())
        CHECK(r.retransmissions > 0);
    }
  }

  SUBCASE("16 MiB")
  {
    auto payload = randomPayload(16u << 20, 99);
    auto r = runScenario(TunnelMode::CcnIpCcn, payload);
    CHECK(r.intact());
    CHECK(r.interestsTotal == 2 * (7 + 2 * (16u << 20) / 4096));
  }
}

TEST_CASE("lossy link that never recovers")
{
  TunnelOptions o;
  o.lossRate = 0.9;
  o.endpoint.maxRetries = 2;
  Tunnel t(TunnelMode::IpCcn, o);
  t.establish();
  auto payload = randomPayload(200'000, 1);
  CHECK(errorOf([&] { t.transfer(payload); }) == Errc::Timeout);
}

TEST_CASE("deterministic")
{
  TunnelOptions o;
  o.seed = 42;
  o.jitter = 3'000'000;
  o.lossRate = 0.02;
  auto payload = randomPayload(500'000, 5);
  auto a = runScenario(TunnelMode::IpCcnIp, payload, o);
  auto b = runScenario(TunnelMode::IpCcnIp, payload, o);
  CHECK(a.interestsTotal == b.interestsTotal);
  CHECK(a.retransmissions == b.retransmissions);
  CHECK(a.virtualSeconds == b.virtualSeconds);
}

TEST_CASE("scenario configuration")
{
  auto c = parseScenarioConfig(R"({"mode": "ccn-ip", "payload_size": 1000, "seed": 4, "loss_rate": 0.1,
                                   "latency_us": 50, "jitter_us": 10, "window": 8, "segment_size": 512})");
  CHECK(c.mode == TunnelMode::CcnIp);
  CHECK(c.payloadSize == 1000);
  CHECK(c.options.seed == 4);
  CHECK(c.options.latency == 50'000);
  CHECK(c.options.jitter == 10'000);
  CHECK(c.options.endpoint.window == 8);
  CHECK(c.options.endpoint.segmentSize == 512);
  CHECK(errorOf([] { parseScenarioConfig(R"({"mode": "ip-ip"})"); }) == Errc::ConfigInvalid);
  CHECK(errorOf([] { parseScenarioConfig(R"({"loss_rate": 1.5})"); }) == Errc::ConfigInvalid);
  CHECK(errorOf([] { parseScenarioConfig(R"({"window": 0})"); }) == Errc::ConfigInvalid);
  CHECK(errorOf([] { parseScenarioConfig("[1]"); }) == Errc::ConfigInvalid);
  for (auto m : ALL_TUNNEL_MODES)
    CHECK(parseTunnelMode(to_string(m)) == m);
}
