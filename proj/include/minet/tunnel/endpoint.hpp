#ifndef MINET_TUNNEL_ENDPOINT_HPP
#define MINET_TUNNEL_ENDPOINT_HPP

#include "minet/sim/event-queue.hpp"
#include "minet/tunnel/packet.hpp"

#include <functional>
#include <map>
#include <string_view>

namespace minet::tunnel {

enum class ConnState { Closed, SynSent, SynReceived, Established, FinWait };

std::string_view
to_string(ConnState s) noexcept;

struct EndpointAddress
{
  std::uint32_t addr = 0;
  std::uint16_t port = 0;
};

struct EndpointOptions
{
  std::uint32_t segmentSize = 4096;
  /// Unacknowledged segments allowed in flight.
  std::uint32_t window = 64;
  sim::SimTime rto = 20'000'000;
  std::uint32_t maxRetries = 30;
  std::uint32_t isn = 0;
};

/// Byte-stream transport end: three-way open, four-way close, and a data
/// phase with per-segment acknowledgment and retransmission. Data segments
/// carry their stream offset in `seq`; an ack echoes it in `ack`.
class Endpoint
{
public:
  /// `control` is set for handshake and teardown segments.
  using Output = std::function<void(const Segment&, bool control)>;

  Endpoint(sim::EventQueue& queue, EndpointAddress self, EndpointOptions options = {});

  void
  setOutput(Output output)
  {
    m_output = std::move(output);
  }

  /// Active open. Throws InvalidState unless Closed.
  void
  connect(EndpointAddress peer);

  /// Queues bytes for delivery. Throws InvalidState unless Established.
  void
  send(std::span<const std::uint8_t> bytes);

  /// Active close. Throws InvalidState unless Established.
  void
  close();

  void
  receive(const Segment& segment);

  /// Drops all connection state.
  void
  reset();

  ConnState
  state() const noexcept
  {
    return m_state;
  }

  EndpointAddress
  address() const noexcept
  {
    return m_self;
  }

  /// In-order bytes received from the peer.
  const Bytes&
  received() const noexcept
  {
    return m_received;
  }

  bool
  allAcked() const noexcept
  {
    return m_inflight.empty() && m_nextOffset == m_outgoing.size();
  }

  bool
  failed() const noexcept
  {
    return m_failed;
  }

  std::uint64_t
  retransmissions() const noexcept
  {
    return m_retransmissions;
  }

  std::uint64_t
  bytesSent() const noexcept
  {
    return m_outgoing.size();
  }

private:
  SignalingHeader
  header(std::uint8_t flags, std::uint32_t seq, std::uint32_t ack) const;

  std::uint32_t
  finSeq() const noexcept;

  void
  emit(const Segment& s, bool control);

  void
  onControl(const SignalingHeader& h);

  void
  onData(const Segment& s);

  void
  pump();

  void
  transmitData(std::uint32_t offset, std::uint32_t attempt);

private:
  sim::EventQueue& m_queue;
  EndpointAddress m_self;
  EndpointAddress m_peer;
  EndpointOptions m_options;
  Output m_output;
  ConnState m_state = ConnState::Closed;
  std::uint32_t m_peerIsn = 0;
  bool m_finSent = false;
  bool m_finAcked = false;
  bool m_finReceived = false;

  Bytes m_outgoing;
  std::uint32_t m_nextOffset = 0;
  std::map<std::uint32_t, std::uint32_t> m_inflight; // offset -> attempt

  Bytes m_received;
  std::map<std::uint32_t, Bytes> m_outOfOrder;

  bool m_failed = false;
  std::uint64_t m_retransmissions = 0;
};

} // namespace minet::tunnel

#endif // MINET_TUNNEL_ENDPOINT_HPP
