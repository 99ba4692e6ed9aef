#ifndef MINET_TUNNEL_FABRIC_HPP
#define MINET_TUNNEL_FABRIC_HPP

#include "minet/sim/event-queue.hpp"
#include "minet/tunnel/packet.hpp"

#include <functional>
#include <random>
#include <vector>

namespace minet::tunnel {

enum class LinkKind { Ip, Ccn };

struct LinkSpec
{
  LinkKind kind = LinkKind::Ip;
  sim::SimTime latency = 100'000;
  /// Extra delay drawn uniformly from [0, jitter]; enough jitter reorders frames.
  sim::SimTime jitter = 0;
  double lossRate = 0;
};

/// Point-to-point links over a shared event queue. All randomness comes from
/// one seeded generator, so delivery order is reproducible.
class Fabric
{
public:
  using Deliver = std::function<void(Bytes)>;

  Fabric(sim::EventQueue& queue, std::uint64_t seed);

  std::size_t
  addLink(const LinkSpec& spec);

  const LinkSpec&
  link(std::size_t id) const
  {
    return m_links.at(id).spec;
  }

  /// Loss only applies while enabled.
  void
  setLossEnabled(bool enabled) noexcept
  {
    m_lossEnabled = enabled;
  }

  void
  transmit(std::size_t link, Bytes frame, Deliver deliver);

  std::uint64_t
  framesSent(std::size_t link) const
  {
    return m_links.at(link).sent;
  }

  std::uint64_t
  framesDropped() const noexcept
  {
    return m_dropped;
  }

private:
  struct Link
  {
    LinkSpec spec;
    std::uint64_t sent = 0;
  };

  sim::EventQueue& m_queue;
  std::mt19937_64 m_rng;
  std::vector<Link> m_links;
  bool m_lossEnabled = false;
  std::uint64_t m_dropped = 0;
};

} // namespace minet::tunnel

#endif // MINET_TUNNEL_FABRIC_HPP
