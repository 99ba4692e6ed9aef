#include "minet/tunnel/fabric.hpp"

#include "minet/core/error.hpp"

namespace minet::tunnel {

Fabric::Fabric(sim::EventQueue& queue, std::uint64_t seed)
  : m_queue(queue)
  , m_rng(seed)
{
}

std::size_t
Fabric::addLink(const LinkSpec& spec)
{
  if (spec.latency < 0 || spec.jitter < 0)
    throw Error(Errc::ConfigInvalid, "link latency and jitter must be non-negative");
  if (!(spec.lossRate >= 0 && spec.lossRate < 1))
    throw Error(Errc::ConfigInvalid, "link loss rate must be in [0, 1)");
  m_links.push_back({spec});
  return m_links.size() - 1;
}

void
Fabric::transmit(std::size_t linkId, Bytes frame, Deliver deliver)
{
  auto& l = m_links.at(linkId);
  ++l.sent;
  double u = std::uniform_real_distribution<double>(0, 1)(m_rng);
  auto extra = l.spec.jitter > 0 ? std::uniform_int_distribution<sim::SimTime>(0, l.spec.jitter)(m_rng) : 0;
  if (m_lossEnabled && u < l.spec.lossRate) {
    ++m_dropped;
    return;
  }
  m_queue.scheduleAfter(l.spec.latency + extra,
                        [deliver = std::move(deliver), frame = std::move(frame)]() mutable { deliver(std::move(frame)); });
}

} // namespace minet::tunnel
