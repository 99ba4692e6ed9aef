#include "minet/sim/event-queue.hpp"
#include "minet/core/error.hpp"

#include <cmath>

namespace minet::sim {

SimTime
fromSeconds(double seconds)
{
  if (!(seconds >= 0) || seconds > 9e9)
    throw Error(Errc::OutOfRange, "duration out of range: " + std::to_string(seconds) + " s");
  return static_cast<SimTime>(std::llround(seconds * NS_PER_SECOND));
}

double
toSeconds(SimTime t) noexcept
{
  return static_cast<double>(t) / NS_PER_SECOND;
}

void
EventQueue::schedule(SimTime at, Action action)
{
  if (at < m_now)
    throw Error(Errc::InvalidState, "event scheduled in the past");
  m_events.push({at, m_seq++, std::move(action)});
}

std::size_t
EventQueue::run()
{
  std::size_t count = 0;
  while (!m_events.empty()) {
    // Moving out of top() is fine: the element is popped before anything else reads it.
    auto event = std::move(const_cast<Event&>(m_events.top()));
    m_events.pop();
    m_now = event.at;
    event.action();
    ++count;
  }
  return count;
}

} // namespace minet::sim
