#ifndef MINET_TUNNEL_SCENARIO_HPP
#define MINET_TUNNEL_SCENARIO_HPP

#include "minet/tunnel/endpoint.hpp"
#include "minet/tunnel/fabric.hpp"
#include "minet/tunnel/mir.hpp"

#include <memory>
#include <string_view>

namespace minet::tunnel {

/// Path shapes, named from initiator to responder.
///   IpCcnIp:  ip host - MIR = MIR - ip host
///   IpCcn:    ip host - MIR = ccn host
///   CcnIp:    ccn host = MIR - ip host
///   CcnIpCcn: ccn host = MIR - MIR = ccn host
/// where "=" is a CCN link carrying Interests and "-" an IP link.
enum class TunnelMode { IpCcnIp, IpCcn, CcnIp, CcnIpCcn };

std::string_view
to_string(TunnelMode m) noexcept;

/// Accepts ip-ccn-ip, ip-ccn, ccn-ip, ccn-ip-ccn. Throws ConfigInvalid.
TunnelMode
parseTunnelMode(std::string_view text);

inline constexpr TunnelMode ALL_TUNNEL_MODES[] = {TunnelMode::IpCcnIp, TunnelMode::IpCcn, TunnelMode::CcnIp,
                                                 TunnelMode::CcnIpCcn};

struct TunnelOptions
{
  std::uint64_t seed = 1;
  EndpointOptions endpoint;
  sim::SimTime latency = 200'000;
  sim::SimTime jitter = 100'000;
  /// Applies to data-phase frames only.
  double lossRate = 0;
  /// The MIR nearest the responder drops everything.
  bool silentPeer = false;
};

/// One transport control segment and the Interests that carried it.
struct ControlExchange
{
  std::uint8_t flags = 0;
  bool fromInitiator = true;
  std::vector<ContentName> interests;
};

class Tunnel
{
public:
  Tunnel(TunnelMode mode, TunnelOptions options = {});
  ~Tunnel();

  /// Three-way open. Throws InvalidState unless both ends are Closed and
  /// Timeout (after resetting both ends) if the handshake does not finish.
  std::vector<ControlExchange>
  establish();

  /// Pushes bytes from initiator to responder and waits for every segment to
  /// be acknowledged. Throws InvalidState or Timeout.
  void
  transfer(std::span<const std::uint8_t> bytes);

  /// Four-way close. Throws InvalidState unless Established.
  std::vector<ControlExchange>
  terminate();

  TunnelMode
  mode() const noexcept;

  const Endpoint&
  initiator() const;

  const Endpoint&
  responder() const;

  const MirTable&
  mirs() const;

  /// Interests sent on CCN links so far, retransmissions included.
  std::uint64_t
  interestsTotal() const;

  std::uint64_t
  framesDropped() const;

  sim::SimTime
  now() const;

private:
  class Impl;
  std::unique_ptr<Impl> m_impl;
};

struct TransferReport
{
  TunnelMode mode;
  std::uint64_t bytesSent = 0;
  std::uint64_t bytesDelivered = 0;
  apov::Digest sentDigest{};
  apov::Digest digest{};
  std::uint64_t interestsTotal = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t framesDropped = 0;
  std::vector<ControlExchange> establishment;
  std::vector<ControlExchange> termination;
  double virtualSeconds = 0;

  bool
  intact() const noexcept
  {
    return bytesDelivered == bytesSent && digest == sentDigest;
  }
};

/// Establish, transfer, terminate.
TransferReport
runScenario(TunnelMode mode, std::span<const std::uint8_t> payload, const TunnelOptions& options = {});

struct ScenarioConfig
{
  TunnelMode mode = TunnelMode::IpCcnIp;
  std::size_t payloadSize = 1 << 20;
  TunnelOptions options;
};

/// Keys: mode, payload_size, seed, segment_size, window, latency_us,
/// jitter_us, loss_rate, silent_peer. Throws ConfigInvalid.
ScenarioConfig
parseScenarioConfig(std::string_view json, ScenarioConfig base = {});

/// Payload of `size` bytes drawn from the seed.
Bytes
randomPayload(std::size_t size, std::uint64_t seed);

} // namespace minet::tunnel

#endif // MINET_TUNNEL_SCENARIO_HPP
