#ifndef MINET_SIM_EVENT_QUEUE_HPP
#define MINET_SIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace minet::sim {

/// Virtual time in nanoseconds.
using SimTime = std::int64_t;

inline constexpr SimTime NS_PER_SECOND = 1'000'000'000;

SimTime
fromSeconds(double seconds);

double
toSeconds(SimTime t) noexcept;

/// Events at equal times run in scheduling order.
class EventQueue
{
public:
  using Action = std::function<void()>;

  void
  schedule(SimTime at, Action action);

  void
  scheduleAfter(SimTime delay, Action action)
  {
    schedule(m_now + delay, std::move(action));
  }

  /// Runs until no events remain. Returns the number of events executed.
  std::size_t
  run();

  SimTime
  now() const noexcept
  {
    return m_now;
  }

  bool
  empty() const noexcept
  {
    return m_events.empty();
  }

private:
  struct Event
  {
    SimTime at;
    std::uint64_t seq;
    Action action;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> m_events;
  SimTime m_now = 0;
  std::uint64_t m_seq = 0;
};

} // namespace minet::sim

#endif // MINET_SIM_EVENT_QUEUE_HPP
