#include "minet/sim/network.hpp"
#include "minet/core/error.hpp"

#include <algorithm>
#include <limits>

namespace minet::sim {

Network::Network(std::size_t nodeCount, std::uint64_t bytesPerSecond)
  : m_band(bytesPerSecond)
  , m_up(nodeCount)
  , m_down(nodeCount)
{
  if (bytesPerSecond == 0)
    throw Error(Errc::ConfigInvalid, "bandwidth must be positive");
}

SimTime
Network::occupy(Port& port, std::uint64_t bytes, SimTime at) const
{
  if (at >= port.freeAt) {
    port.busySince = at;
    port.queued = 0;
  }
  port.queued += bytes;
  port.total += bytes;
  constexpr auto limit = std::numeric_limits<std::uint64_t>::max() / NS_PER_SECOND;
  if (port.queued > limit)
    throw Error(Errc::OutOfRange, "too many bytes queued on one link");
  auto ns = (port.queued * NS_PER_SECOND + m_band - 1) / m_band;
  port.freeAt = port.busySince + static_cast<SimTime>(ns);
  return port.freeAt;
}

SimTime
Network::transfer(std::size_t from, std::size_t to, std::uint64_t bytes, SimTime at)
{
  if (from >= m_up.size() || to >= m_down.size())
    throw Error(Errc::UnknownNode, "no such node");
  auto upDone = occupy(m_up[from], bytes, at);
  auto downDone = occupy(m_down[to], bytes, at);
  return std::max(upDone, downDone);
}

} // namespace minet::sim
