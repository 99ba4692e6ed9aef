#ifndef MINET_SIM_NETWORK_HPP
#define MINET_SIM_NETWORK_HPP

#include "minet/sim/event-queue.hpp"

#include <cstdint>
#include <vector>

namespace minet::sim {

/**
 * Every node has one uplink and one downlink of the same bandwidth and no
 * propagation delay. A message occupies the sender's uplink and the
 * receiver's downlink; it has arrived once both have serialized it.
 *
 * Within a busy period each port's finish time is computed from the total
 * bytes queued since the period began, so back-to-back messages accumulate
 * no per-message rounding.
 */
class Network
{
public:
  Network(std::size_t nodeCount, std::uint64_t bytesPerSecond);

  /// Queues `bytes` from `from` to `to` at time `at`; returns the arrival time.
  SimTime
  transfer(std::size_t from, std::size_t to, std::uint64_t bytes, SimTime at);

  std::uint64_t
  bytesSent(std::size_t node) const
  {
    return m_up.at(node).total;
  }

  std::uint64_t
  bytesReceived(std::size_t node) const
  {
    return m_down.at(node).total;
  }

private:
  struct Port
  {
    SimTime busySince = 0;
    std::uint64_t queued = 0;
    SimTime freeAt = 0;
    std::uint64_t total = 0;
  };

  SimTime
  occupy(Port& port, std::uint64_t bytes, SimTime at) const;

private:
  std::uint64_t m_band;
  std::vector<Port> m_up;
  std::vector<Port> m_down;
};

} // namespace minet::sim

#endif // MINET_SIM_NETWORK_HPP
