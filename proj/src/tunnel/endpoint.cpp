#include "minet/tunnel/endpoint.hpp"

#include "minet/core/error.hpp"

#include <algorithm>
#include <limits>

namespace minet::tunnel {

std::string_view
to_string(ConnState s) noexcept
{
  switch (s) {
    case ConnState::Closed:
      return "Closed";
    case ConnState::SynSent:
      return "SynSent";
    case ConnState::SynReceived:
      return "SynReceived";
    case ConnState::Established:
      return "Established";
    case ConnState::FinWait:
      return "FinWait";
  }
  return "?";
}

Endpoint::Endpoint(sim::EventQueue& queue, EndpointAddress self, EndpointOptions options)
  : m_queue(queue)
  , m_self(self)
  , m_options(options)
{
  if (options.segmentSize == 0 || options.window == 0 || options.rto <= 0)
    throw Error(Errc::ConfigInvalid, "segment size, window and rto must be positive");
}

SignalingHeader
Endpoint::header(std::uint8_t flags, std::uint32_t seq, std::uint32_t ack) const
{
  return {flags, seq, ack, m_self.addr, m_peer.addr, m_self.port, m_peer.port};
}

std::uint32_t
Endpoint::finSeq() const noexcept
{
  return m_options.isn + 1 + static_cast<std::uint32_t>(m_outgoing.size());
}

void
Endpoint::emit(const Segment& s, bool control)
{
  if (m_output)
    m_output(s, control);
}

void
Endpoint::connect(EndpointAddress peer)
{
  if (m_state != ConnState::Closed)
    throw Error(Errc::InvalidState, "connect in state " + std::string(to_string(m_state)));
  reset();
  m_peer = peer;
  m_state = ConnState::SynSent;
  emit({header(SYN, m_options.isn, 0), {}}, true);
}

void
Endpoint::send(std::span<const std::uint8_t> bytes)
{
  if (m_state != ConnState::Established)
    throw Error(Errc::InvalidState, "send in state " + std::string(to_string(m_state)));
  if (m_outgoing.size() + bytes.size() > std::numeric_limits<std::uint32_t>::max())
    throw Error(Errc::OutOfRange, "stream exceeds 4 GiB");
  m_outgoing.insert(m_outgoing.end(), bytes.begin(), bytes.end());
  pump();
}

void
Endpoint::close()
{
  if (m_state != ConnState::Established)
    throw Error(Errc::InvalidState, "close in state " + std::string(to_string(m_state)));
  m_state = ConnState::FinWait;
  m_finSent = true;
  auto ack = m_peerIsn + 1 + static_cast<std::uint32_t>(m_received.size());
  emit({header(FIN, finSeq(), ack), {}}, true);
}

void
Endpoint::reset()
{
  m_state = ConnState::Closed;
  m_peerIsn = 0;
  m_finSent = m_finAcked = m_finReceived = false;
  m_outgoing.clear();
  m_nextOffset = 0;
  m_inflight.clear();
  m_received.clear();
  m_outOfOrder.clear();
  m_failed = false;
}

void
Endpoint::receive(const Segment& s)
{
  const auto& h = s.header;
  if (h.flags & RST) {
    reset();
    return;
  }
  bool bareAck = h.flags == ACK && s.payload.empty();
  if ((h.flags & (SYN | FIN)) || (bareAck && m_state == ConnState::SynReceived) ||
      (bareAck && m_state == ConnState::FinWait && h.ack == finSeq() + 1)) {
    onControl(h);
    return;
  }
  if (m_state == ConnState::Established || m_state == ConnState::FinWait)
    onData(s);
}

void
Endpoint::onControl(const SignalingHeader& h)
{
  auto mySeq = finSeq();
  switch (m_state) {
    case ConnState::Closed:
      if (h.flags == SYN) {
        reset();
        m_peer = {h.srcAddr, h.srcPort};
        m_peerIsn = h.seq;
        m_state = ConnState::SynReceived;
        emit({header(SYN | ACK, m_options.isn, m_peerIsn + 1), {}}, true);
      }
      break;
    case ConnState::SynSent:
      if (h.flags == (SYN | ACK) && h.ack == m_options.isn + 1) {
        m_peerIsn = h.seq;
        m_state = ConnState::Established;
        emit({header(ACK, m_options.isn + 1, m_peerIsn + 1), {}}, true);
      }
      break;
    case ConnState::SynReceived:
      if (h.flags == ACK && h.ack == m_options.isn + 1)
        m_state = ConnState::Established;
      break;
    case ConnState::Established:
      if (h.flags & FIN) {
        m_finReceived = true;
        m_finSent = true;
        m_state = ConnState::FinWait;
        emit({header(ACK, mySeq, h.seq + 1), {}}, true);
        emit({header(FIN, mySeq, h.seq + 1), {}}, true);
      }
      break;
    case ConnState::FinWait:
      if (h.flags & FIN) {
        m_finReceived = true;
        emit({header(ACK, mySeq + 1, h.seq + 1), {}}, true);
      }
      else if (h.flags == ACK && h.ack == mySeq + 1) {
        m_finAcked = true;
      }
      if (m_finAcked && m_finReceived)
        m_state = ConnState::Closed;
      break;
  }
}

void
Endpoint::onData(const Segment& s)
{
  const auto& h = s.header;
  if (h.flags == ACK && s.payload.empty()) {
    if (m_inflight.erase(h.ack) > 0)
      pump();
    return;
  }
  if (h.flags != 0)
    return;
  emit({header(ACK, 0, h.seq), {}}, false);
  if (h.seq < m_received.size())
    return;
  if (h.seq > m_received.size()) {
    m_outOfOrder.emplace(h.seq, s.payload);
    return;
  }
  m_received.insert(m_received.end(), s.payload.begin(), s.payload.end());
  for (auto it = m_outOfOrder.begin(); it != m_outOfOrder.end() && it->first <= m_received.size();
       it = m_outOfOrder.erase(it)) {
    auto end = it->first + it->second.size();
    if (end > m_received.size())
      m_received.insert(m_received.end(), it->second.end() - (end - m_received.size()), it->second.end());
  }
}

void
Endpoint::pump()
{
  while (m_inflight.size() < m_options.window && m_nextOffset < m_outgoing.size()) {
    auto offset = m_nextOffset;
    m_nextOffset += static_cast<std::uint32_t>(
      std::min<std::size_t>(m_options.segmentSize, m_outgoing.size() - m_nextOffset));
    m_inflight.emplace(offset, 0);
    transmitData(offset, 0);
  }
}

void
Endpoint::transmitData(std::uint32_t offset, std::uint32_t attempt)
{
  auto len = std::min<std::size_t>(m_options.segmentSize, m_outgoing.size() - offset);
  Segment s{header(0, offset, 0), Bytes(m_outgoing.begin() + offset, m_outgoing.begin() + offset + len)};
  emit(s, false);
  m_queue.scheduleAfter(m_options.rto, [this, offset, attempt] {
    auto it = m_inflight.find(offset);
    if (it == m_inflight.end() || it->second != attempt || m_failed)
      return;
    if (attempt + 1 > m_options.maxRetries) {
      m_failed = true;
      return;
    }
    it->second = attempt + 1;
    ++m_retransmissions;
    transmitData(offset, attempt + 1);
  });
}

} // namespace minet::tunnel
