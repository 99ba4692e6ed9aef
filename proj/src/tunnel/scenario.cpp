#include "minet/tunnel/scenario.hpp"

#include "minet/core/error.hpp"

#include <json.hpp>

#include <random>

namespace minet::tunnel {

std::string_view
to_string(TunnelMode m) noexcept
{
  switch (m) {
    case TunnelMode::IpCcnIp: return "ip-ccn-ip";
    case TunnelMode::IpCcn: return "ip-ccn";
    case TunnelMode::CcnIp: return "ccn-ip";
    case TunnelMode::CcnIpCcn: return "ccn-ip-ccn";
  }
  return "?";
}

TunnelMode
parseTunnelMode(std::string_view text)
{
  for (auto m : ALL_TUNNEL_MODES)
    if (text == to_string(m))
      return m;
  throw Error(Errc::ConfigInvalid, "unknown tunnel mode '" + std::string(text) + "'");
}

class Tunnel::Impl
{
public:
  enum class Kind { IpHost, CcnHost, Mir };

  struct Node
  {
    Kind kind;
    ContentName prefix;
    IpAddress ip;
    std::unique_ptr<Endpoint> endpoint;
  };

  Impl(TunnelMode mode, const TunnelOptions& options)
    : m_mode(mode)
    , m_options(options)
    , m_fabric(m_queue, options.seed)
  {
    using K = Kind;
    std::vector<K> kinds;
    switch (mode) {
      case TunnelMode::IpCcnIp: kinds = {K::IpHost, K::Mir, K::Mir, K::IpHost}; break;
      case TunnelMode::IpCcn: kinds = {K::IpHost, K::Mir, K::CcnHost}; break;
      case TunnelMode::CcnIp: kinds = {K::CcnHost, K::Mir, K::IpHost}; break;
      case TunnelMode::CcnIpCcn: kinds = {K::CcnHost, K::Mir, K::Mir, K::CcnHost}; break;
    }
    int mirs = 0;
    int ccnHosts = 0;
    int ipHosts = 0;
    for (auto k : kinds) {
      Node n{k, {}, {}, nullptr};
      switch (k) {
        case K::Mir:
          ++mirs;
          n.prefix = ContentName::parse("/mir" + std::to_string(mirs));
          n.ip = IpAddress::parse("192.0.2." + std::to_string(mirs));
          break;
        case K::CcnHost:
          ++ccnHosts;
          n.prefix = ContentName::parse("/host" + std::to_string(ccnHosts));
          n.ip = IpAddress::parse("198.51.100." + std::to_string(ccnHosts));
          break;
        case K::IpHost:
          ++ipHosts;
          n.ip = IpAddress::parse("10.0.0." + std::to_string(ipHosts));
          break;
      }
      if (k != K::IpHost)
        m_table.add({n.prefix, n.ip});
      m_nodes.push_back(std::move(n));
    }
    for (std::size_t i = 0; i + 1 < m_nodes.size(); ++i) {
      bool ccn = m_nodes[i].kind == K::CcnHost || m_nodes[i + 1].kind == K::CcnHost ||
                 (m_nodes[i].kind == K::Mir && m_nodes[i + 1].kind == K::Mir && mode == TunnelMode::IpCcnIp);
      m_fabric.addLink({ccn ? LinkKind::Ccn : LinkKind::Ip, options.latency, options.jitter, options.lossRate});
    }

    auto& first = m_nodes.front();
    auto& last = m_nodes.back();
    auto opts = options.endpoint;
    first.endpoint = std::make_unique<Endpoint>(m_queue, EndpointAddress{first.ip.toV4(), 40000}, opts);
    opts.isn += 0x10000;
    last.endpoint = std::make_unique<Endpoint>(m_queue, EndpointAddress{last.ip.toV4(), 80}, opts);
    first.endpoint->setOutput([this](const Segment& s, bool control) { emitted(0, +1, s, control); });
    last.endpoint->setOutput(
      [this](const Segment& s, bool control) { emitted(m_nodes.size() - 1, -1, s, control); });
  }

  void
  emitted(std::size_t from, int dir, const Segment& s, bool control)
  {
    if (control) {
      m_pending[encodeHeader(s.header)] = m_trace.size();
      m_trace.push_back({s.header.flags, dir > 0, {}});
    }
    forward(from, dir, s);
  }

  void
  forward(std::size_t from, int dir, const Segment& s)
  {
    std::size_t to = from + dir;
    std::size_t link = dir > 0 ? from : to;
    Bytes frame;
    bool ccn = m_fabric.link(link).kind == LinkKind::Ccn;
    if (ccn) {
      auto interest = encapsulateSignal(m_table, s, m_nodes[to].prefix, connectionId(s.header));
      auto it = m_pending.find(encodeHeader(s.header));
      if (it != m_pending.end())
        m_trace[it->second].interests.push_back(interest.name);
      frame = encodeInterest(interest);
      ++m_interests;
    }
    else {
      frame = encodeSegment(s);
    }
    m_fabric.transmit(link, std::move(frame), [this, to, dir, ccn](Bytes f) { arrive(to, dir, ccn, f); });
  }

  void
  arrive(std::size_t at, int dir, bool ccn, const Bytes& frame)
  {
    auto& node = m_nodes[at];
    Segment s;
    if (ccn) {
      auto interest = decodeInterest(frame);
      if (!node.prefix.isPrefixOf(interest.name))
        throw Error(Errc::UnknownMir, "interest " + std::string(interest.name.toUri()) + " reached " +
                                        std::string(node.prefix.toUri()));
      s = decapsulate(m_table, interest);
    }
    else {
      s = decodeSegment(frame);
    }
    if (node.kind == Kind::Mir) {
      if (m_options.silentPeer && at == silentIndex())
        return;
      forward(at, dir, s);
    }
    else {
      node.endpoint->receive(s);
    }
  }

  std::size_t
  silentIndex() const
  {
    for (std::size_t i = m_nodes.size(); i-- > 0;)
      if (m_nodes[i].kind == Kind::Mir)
        return i;
    return m_nodes.size();
  }

  Endpoint&
  initiator()
  {
    return *m_nodes.front().endpoint;
  }

  Endpoint&
  responder()
  {
    return *m_nodes.back().endpoint;
  }

  void
  beginTrace()
  {
    m_trace.clear();
    m_pending.clear();
  }

  std::vector<ControlExchange>
  establish()
  {
    if (initiator().state() != ConnState::Closed || responder().state() != ConnState::Closed)
      throw Error(Errc::InvalidState, "establish requires both ends Closed");
    beginTrace();
    m_fabric.setLossEnabled(false);
    initiator().connect(responder().address());
    m_queue.run();
    if (initiator().state() != ConnState::Established || responder().state() != ConnState::Established) {
      initiator().reset();
      responder().reset();
      throw Error(Errc::Timeout, "no answer to " + flagsToString(m_trace.back().flags) + " across " +
                                   std::string(to_string(m_mode)));
    }
    return m_trace;
  }

  void
  transfer(std::span<const std::uint8_t> bytes)
  {
    if (initiator().state() != ConnState::Established)
      throw Error(Errc::InvalidState, "transfer requires an Established connection");
    m_fabric.setLossEnabled(true);
    initiator().send(bytes);
    m_queue.run();
    m_fabric.setLossEnabled(false);
    if (initiator().failed() || !initiator().allAcked())
      throw Error(Errc::Timeout, "segments unacknowledged after retries");
  }

  std::vector<ControlExchange>
  terminate()
  {
    if (initiator().state() != ConnState::Established || responder().state() != ConnState::Established)
      throw Error(Errc::InvalidState, "terminate requires an Established connection");
    m_queue.run();
    beginTrace();
    initiator().close();
    m_queue.run();
    if (initiator().state() != ConnState::Closed || responder().state() != ConnState::Closed)
      throw Error(Errc::Timeout, "termination did not complete");
    return m_trace;
  }

  TunnelMode m_mode;
  TunnelOptions m_options;
  sim::EventQueue m_queue;
  Fabric m_fabric;
  MirTable m_table;
  std::vector<Node> m_nodes;
  std::vector<ControlExchange> m_trace;
  std::map<Bytes, std::size_t> m_pending;
  std::uint64_t m_interests = 0;
};

Tunnel::Tunnel(TunnelMode mode, TunnelOptions options)
  : m_impl(std::make_unique<Impl>(mode, options))
{
}

Tunnel::~Tunnel() = default;

std::vector<ControlExchange>
Tunnel::establish()
{
  return m_impl->establish();
}

void
Tunnel::transfer(std::span<const std::uint8_t> bytes)
{
  m_impl->transfer(bytes);
}

std::vector<ControlExchange>
Tunnel::terminate()
{
  return m_impl->terminate();
}

TunnelMode
Tunnel::mode() const noexcept
{
  return m_impl->m_mode;
}

const Endpoint&
Tunnel::initiator() const
{
  return m_impl->initiator();
}

const Endpoint&
Tunnel::responder() const
{
  return m_impl->responder();
}

const MirTable&
Tunnel::mirs() const
{
  return m_impl->m_table;
}

std::uint64_t
Tunnel::interestsTotal() const
{
  return m_impl->m_interests;
}

std::uint64_t
Tunnel::framesDropped() const
{
  return m_impl->m_fabric.framesDropped();
}

sim::SimTime
Tunnel::now() const
{
  return m_impl->m_queue.now();
}

TransferReport
runScenario(TunnelMode mode, std::span<const std::uint8_t> payload, const TunnelOptions& options)
{
  Tunnel t(mode, options);
  TransferReport r;
  r.mode = mode;
  r.establishment = t.establish();
  t.transfer(payload);
  r.termination = t.terminate();
  r.bytesSent = payload.size();
  r.sentDigest = apov::sha256(payload);
  r.bytesDelivered = t.responder().received().size();
  r.digest = apov::sha256(t.responder().received());
  r.interestsTotal = t.interestsTotal();
  r.retransmissions = t.initiator().retransmissions();
  r.framesDropped = t.framesDropped();
  r.virtualSeconds = sim::toSeconds(t.now());
  return r;
}

ScenarioConfig
parseScenarioConfig(std::string_view text, ScenarioConfig c)
{
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  }
  catch (const json::exception& e) {
    throw Error(Errc::ConfigInvalid, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object())
    throw Error(Errc::ConfigInvalid, "configuration must be a JSON object");
  try {
    if (j.contains("mode"))
      c.mode = parseTunnelMode(j.at("mode").get<std::string>());
    c.payloadSize = j.value("payload_size", c.payloadSize);
    c.options.seed = j.value("seed", c.options.seed);
    c.options.endpoint.segmentSize = j.value("segment_size", c.options.endpoint.segmentSize);
    c.options.endpoint.window = j.value("window", c.options.endpoint.window);
    if (j.contains("latency_us"))
      c.options.latency = j.at("latency_us").get<sim::SimTime>() * 1000;
    if (j.contains("jitter_us"))
      c.options.jitter = j.at("jitter_us").get<sim::SimTime>() * 1000;
    c.options.lossRate = j.value("loss_rate", c.options.lossRate);
    c.options.silentPeer = j.value("silent_peer", c.options.silentPeer);
  }
  catch (const json::exception& e) {
    throw Error(Errc::ConfigInvalid, std::string("bad configuration value: ") + e.what());
  }
  if (c.options.endpoint.segmentSize == 0 || c.options.endpoint.window == 0)
    throw Error(Errc::ConfigInvalid, "segment_size and window must be positive");
  if (c.options.latency < 0 || c.options.jitter < 0 || !(c.options.lossRate >= 0 && c.options.lossRate < 1))
    throw Error(Errc::ConfigInvalid, "latency, jitter must be non-negative and loss_rate in [0, 1)");
  return c;
}

Bytes
randomPayload(std::size_t size, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  Bytes out(size);
  std::size_t i = 0;
  for (; i + 8 <= size; i += 8) {
    auto v = rng();
    for (int k = 0; k < 8; ++k)
      out[i + k] = static_cast<std::uint8_t>(v >> (8 * k));
  }
  auto v = rng();
  for (int k = 0; i < size; ++i, ++k)
    out[i] = static_cast<std::uint8_t>(v >> (8 * k));
  return out;
}

} // namespace minet::tunnel
