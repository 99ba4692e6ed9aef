#include "minet/workload/generator.hpp"

#include "minet/core/error.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

namespace minet::workload {

std::string_view
to_string(QueryMode m) noexcept
{
  switch (m) {
    case QueryMode::Hit: return "hit";
    case QueryMode::Miss: return "miss";
    case QueryMode::Mixed: return "mixed";
  }
  return "?";
}

QueryMode
parseQueryMode(std::string_view text)
{
  for (auto m : {QueryMode::Hit, QueryMode::Miss, QueryMode::Mixed})
    if (text == to_string(m))
      return m;
  throw Error(Errc::ConfigInvalid, "unknown query mode '" + std::string(text) + "'");
}

void
WorkloadSpec::validate() const
{
  if (entryCount < 1)
    throw Error(Errc::ConfigInvalid, "entry count must be at least 1");
  if (alphabet < 1 || maxStoredLength < 1 || queryLength < 1)
    throw Error(Errc::ConfigInvalid, "alphabet, query length and maximum stored length must be positive");
  if (!(meanStoredLength >= 1 && meanStoredLength <= maxStoredLength))
    throw Error(Errc::InfeasibleSpec, "mean stored length must lie in [1, " + std::to_string(maxStoredLength) + "]");
  if (mode != QueryMode::Miss && queryLength < meanStoredLength)
    throw Error(Errc::InfeasibleSpec, "hit queries need N >= M (N = " + std::to_string(queryLength) +
                                        ", M = " + std::to_string(meanStoredLength) + ")");
  // Mean 1 puts all mass on length 1.
  std::uint32_t longest = meanStoredLength == 1 ? 1 : maxStoredLength;
  double capacity = 0;
  for (std::uint32_t k = 1; k <= longest && capacity < static_cast<double>(entryCount); ++k)
    capacity += std::pow(static_cast<double>(alphabet), k);
  if (capacity < static_cast<double>(entryCount))
    throw Error(Errc::InfeasibleSpec, "only " + std::to_string(static_cast<std::uint64_t>(capacity)) +
                                        " distinct names fit the alphabet and length bound");
}

std::vector<double>
storedLengthDistribution(double mean, std::uint32_t maxLength)
{
  if (!(mean >= 1 && mean <= maxLength))
    throw Error(Errc::InfeasibleSpec, "mean stored length outside [1, max length]");
  // P(k) ~ r^(k-1); the mean increases with r.
  auto probs = [&](double r) {
    std::vector<double> p(maxLength + 1, 0.0);
    double w = 1;
    double total = 0;
    for (std::uint32_t k = 1; k <= maxLength; ++k) {
      p[k] = w;
      total += w;
      w *= r;
    }
    for (auto& x : p)
      x /= total;
    return p;
  };
  auto meanOf = [&](double r) {
    auto p = probs(r);
    double m = 0;
    for (std::uint32_t k = 1; k <= maxLength; ++k)
      m += k * p[k];
    return m;
  };
  if (mean == 1 || maxLength == 1) {
    auto p = std::vector<double>(maxLength + 1, 0.0);
    p[1] = 1;
    return p;
  }
  double lo = -60;
  double hi = 60;
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    (meanOf(std::exp(mid)) < mean ? lo : hi) = mid;
  }
  return probs(std::exp((lo + hi) / 2));
}

namespace {

class Generator
{
public:
  explicit
  Generator(const WorkloadSpec& spec)
    : m_spec(spec)
    , m_rng(spec.seed)
    , m_dist(storedLengthDistribution(spec.meanStoredLength, spec.maxStoredLength))
    , m_lengthPick(m_dist.begin() + 1, m_dist.end())
    , m_byLength(spec.maxStoredLength + 1)
  {
  }

  Workload
  run()
  {
    Workload w;
    w.entries.reserve(m_spec.entryCount);
    makeEntries(w);
    w.queries.reserve(m_spec.queryCount);
    for (std::size_t i = 0; i < m_spec.queryCount; ++i) {
      bool hit = m_spec.mode == QueryMode::Hit || (m_spec.mode == QueryMode::Mixed && i % 2 == 0);
      w.queries.push_back(hit ? hitQuery(w) : missQuery());
    }
    return w;
  }

private:
  std::uint32_t
  storedLength()
  {
    return static_cast<std::uint32_t>(m_lengthPick(m_rng)) + 1;
  }

  std::string
  component()
  {
    return "c" + std::to_string(m_rng() % m_spec.alphabet);
  }

  std::string
  fresh()
  {
    return "f" + std::to_string(m_rng() % 1'000'000);
  }

  void
  makeEntries(Workload& w)
  {
    std::unordered_set<std::string> seen;
    seen.reserve(m_spec.entryCount * 2);
    std::vector<double> capacity(m_spec.maxStoredLength + 1);
    for (std::uint32_t k = 1; k <= m_spec.maxStoredLength; ++k)
      capacity[k] = std::pow(static_cast<double>(m_spec.alphabet), k);
    while (w.entries.size() < m_spec.entryCount) {
      auto len = storedLength();
      if (static_cast<double>(m_byLength[len].size()) >= capacity[len])
        continue;
      for (int attempt = 0; attempt < 64; ++attempt) {
        ContentName name;
        for (std::uint32_t k = 0; k < len; ++k)
          name = name.append(component());
        if (seen.insert(std::string(name.toUri())).second) {
          m_byLength[len].push_back(w.entries.size());
          w.entries.emplace_back(std::move(name), ForwardingInfo{static_cast<std::uint32_t>(1 + m_rng() % 256), std::nullopt});
          break;
        }
      }
    }
  }

  /// Symmetric offset in [-d, d]; consecutive draws of one stream pair up as
  /// (x, -x) so the mean is exact.
  int
  spread(int d, std::optional<int>& pending)
  {
    if (pending) {
      int v = -*pending;
      pending.reset();
      return v;
    }
    int v = d == 0 ? 0 : std::uniform_int_distribution<int>(-d, d)(m_rng);
    pending = v;
    return v;
  }

  ContentName
  missQuery()
  {
    int n = static_cast<int>(m_spec.queryLength);
    int d = std::min<int>(m_spec.lengthSpread, n - 1);
    int len = n + spread(d, m_missPending);
    ContentName q;
    for (int k = 0; k < len; ++k)
      q = q.append(fresh());
    return q;
  }

  ContentName
  hitQuery(const Workload& w)
  {
    auto s = storedLength();
    std::uint32_t pick = s;
    for (std::uint32_t off = 1; m_byLength[pick].empty(); ++off) {
      if (s + off <= m_spec.maxStoredLength && !m_byLength[s + off].empty())
        pick = s + off;
      else if (off < s && !m_byLength[s - off].empty())
        pick = s - off;
    }
    const auto& bucket = m_byLength[pick];
    ContentName q = w.entries[bucket[m_rng() % bucket.size()]].first;

    double extension = m_spec.queryLength - m_spec.meanStoredLength;
    int base = static_cast<int>(std::floor(extension));
    if (std::uniform_real_distribution<double>(0, 1)(m_rng) < extension - base)
      ++base;
    int d = std::min<int>(m_spec.lengthSpread, static_cast<int>(std::floor(extension)));
    int extra = std::max(0, base + spread(d, m_hitPending));
    for (int k = 0; k < extra; ++k)
      q = q.append(fresh());
    return q;
  }

private:
  const WorkloadSpec& m_spec;
  std::mt19937_64 m_rng;
  std::vector<double> m_dist;
  std::discrete_distribution<int> m_lengthPick;
  std::vector<std::vector<std::size_t>> m_byLength;
  std::optional<int> m_missPending;
  std::optional<int> m_hitPending;
};

} // namespace

Workload
generateWorkload(const WorkloadSpec& spec)
{
  spec.validate();
  return Generator(spec).run();
}

} // namespace minet::workload
