#include "minet/workload/bench.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <random>

namespace minet::workload {

namespace {

double
secondsSince(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint32_t
probeBound(std::size_t n)
{
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n) + 1))) + 1;
}

} // namespace

fib::Hpt
buildFib(const Workload& w)
{
  fib::Hpt fib;
  std::size_t components = 0;
  for (const auto& e : w.entries)
    components += e.first.size();
  fib.reserve(components);
  for (const auto& [name, fw] : w.entries)
    fib.insert(name, fw);
  return fib;
}

BenchReport
runBench(const WorkloadSpec& spec)
{
  BenchReport r;
  r.spec = spec;
  auto w = generateWorkload(spec);

  auto start = std::chrono::steady_clock::now();
  auto fib = buildFib(w);
  r.buildSeconds = secondsSince(start);

  std::uint64_t binaryProbes = 0;
  std::vector<fib::LookupResult> binary;
  binary.reserve(w.queries.size());
  start = std::chrono::steady_clock::now();
  for (const auto& q : w.queries) {
    binary.push_back(fib.lookupLpm(q));
    binaryProbes += binary.back().probes;
  }
  r.binarySeconds = secondsSince(start);

  std::uint64_t linearProbes = 0;
  std::vector<fib::LookupResult> linear;
  linear.reserve(w.queries.size());
  start = std::chrono::steady_clock::now();
  for (const auto& q : w.queries) {
    linear.push_back(fib.lookupOracle(q));
    linearProbes += linear.back().probes;
  }
  r.linearSeconds = secondsSince(start);

  for (std::size_t i = 0; i < binary.size(); ++i) {
    r.hits += binary[i].isHit();
    r.mismatches += !sameOutcome(binary[i], linear[i]);
  }
  auto n = static_cast<double>(std::max<std::size_t>(1, w.queries.size()));
  r.binaryAvgProbes = binaryProbes / n;
  r.linearAvgProbes = linearProbes / n;
  r.probeThroughputRatio = binaryProbes ? static_cast<double>(linearProbes) / binaryProbes : 0;
  r.timeThroughputRatio = r.binarySeconds > 0 ? r.linearSeconds / r.binarySeconds : 0;
  return r;
}

void
writeBenchCsv(std::ostream& os, std::span<const BenchReport> reports)
{
  os << "mode,entries,queries,M,N,seed,binary_avg_probes,linear_avg_probes,probe_throughput_ratio,"
        "binary_seconds,linear_seconds,time_throughput_ratio,build_seconds,hits,mismatches\n";
  auto old = os.precision(10);
  for (const auto& r : reports)
    os << to_string(r.spec.mode) << ',' << r.spec.entryCount << ',' << r.spec.queryCount << ','
       << r.spec.meanStoredLength << ',' << r.spec.queryLength << ',' << r.spec.seed << ',' << r.binaryAvgProbes
       << ',' << r.linearAvgProbes << ',' << r.probeThroughputRatio << ',' << r.binarySeconds << ','
       << r.linearSeconds << ',' << r.timeThroughputRatio << ',' << r.buildSeconds << ',' << r.hits << ','
       << r.mismatches << '\n';
  os.precision(old);
}

void
writeBenchJson(std::ostream& os, std::span<const BenchReport> reports)
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports)
    rows.push_back({{"mode", std::string(to_string(r.spec.mode))},
                    {"entries", r.spec.entryCount},
                    {"queries", r.spec.queryCount},
                    {"M", r.spec.meanStoredLength},
                    {"N", r.spec.queryLength},
                    {"alphabet", r.spec.alphabet},
                    {"seed", r.spec.seed},
                    {"binary_avg_probes", r.binaryAvgProbes},
                    {"linear_avg_probes", r.linearAvgProbes},
                    {"probe_throughput_ratio", r.probeThroughputRatio},
                    {"time_throughput_ratio", r.timeThroughputRatio},
                    {"build_seconds", r.buildSeconds},
                    {"hits", r.hits},
                    {"mismatches", r.mismatches}});
  os << nlohmann::json{{"note", std::string(SCALE_NOTE)}, {"points", rows}}.dump(2) << '\n';
}

double
timeBuild(std::size_t entries, std::uint64_t seed, double meanStoredLength)
{
  WorkloadSpec spec;
  spec.entryCount = entries;
  spec.queryCount = 0;
  spec.seed = seed;
  spec.meanStoredLength = meanStoredLength;
  auto w = generateWorkload(spec);
  auto start = std::chrono::steady_clock::now();
  auto fib = buildFib(w);
  auto elapsed = secondsSince(start);
  if (fib.realCount() != entries)
    return -1;
  return elapsed;
}

FibCheckReport
runFibCheck(std::size_t ops, std::size_t lookups, std::uint32_t alphabet, std::uint64_t seed,
            std::size_t checkEvery)
{
  FibCheckReport r;
  std::mt19937_64 rng(seed);
  auto randomName = [&](std::size_t maxLen) {
    ContentName n;
    auto len = 1 + rng() % maxLen;
    for (std::size_t k = 0; k < len; ++k)
      n = n.append("c" + std::to_string(rng() % alphabet));
    return n;
  };
  auto check = [&](const fib::Hpt& fib) {
    ++r.integrityChecks;
    for (const auto& v : fib.verifyIntegrity())
      r.violations.push_back("after op " + std::to_string(r.ops) + ": " + std::string(to_string(v.kind)) + " " +
                             v.name + " " + v.detail);
  };

  fib::Hpt fib;
  std::vector<ContentName> live;
  for (std::size_t i = 0; i < ops; ++i) {
    if (live.empty() || rng() % 3 != 0) {
      auto n = randomName(8);
      if (fib.stateOf(n) != fib::EntryState::Real)
        live.push_back(n);
      fib.insert(n, {static_cast<std::uint32_t>(i), std::nullopt});
    }
    else {
      auto idx = rng() % live.size();
      fib.erase(live[idx]);
      live[idx] = live.back();
      live.pop_back();
    }
    ++r.ops;
    if (checkEvery && r.ops % checkEvery == 0)
      check(fib);
  }
  check(fib);

  for (std::size_t i = 0; i < lookups; ++i) {
    ContentName q;
    if (!live.empty() && rng() % 2 == 0) {
      q = live[rng() % live.size()];
      auto extra = rng() % 4;
      for (std::size_t k = 0; k < extra; ++k)
        q = q.append("c" + std::to_string(rng() % alphabet));
    }
    else {
      q = randomName(10);
    }
    auto a = fib.lookupLpm(q);
    auto b = fib.lookupOracle(q);
    ++r.lookups;
    r.hits += a.isHit();
    r.mismatches += !sameOutcome(a, b);
    r.probeBoundExceeded += a.probes > probeBound(q.size());
  }
  return r;
}

} // namespace minet::workload
