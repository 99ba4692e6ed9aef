#ifndef MINET_WORKLOAD_BENCH_HPP
#define MINET_WORKLOAD_BENCH_HPP

#include "minet/fib/hpt.hpp"
#include "minet/workload/generator.hpp"

#include <ostream>
#include <span>

namespace minet::workload {

inline constexpr std::string_view SCALE_NOTE =
  "desk scale: defaults are 100000 entries and 50000 queries per point; the published runs used 5M entries "
  "and 500k queries";

struct BenchReport
{
  WorkloadSpec spec;
  double binaryAvgProbes = 0;
  double linearAvgProbes = 0;
  /// Binary throughput relative to linear (linear = 1), from probe counts.
  double probeThroughputRatio = 0;
  double binarySeconds = 0;
  double linearSeconds = 0;
  /// Same ratio from wall time.
  double timeThroughputRatio = 0;
  double buildSeconds = 0;
  std::uint64_t hits = 0;
  /// Queries where the two lookups disagree. Always expected to be 0.
  std::uint64_t mismatches = 0;
};

fib::Hpt
buildFib(const Workload& w);

BenchReport
runBench(const WorkloadSpec& spec);

void
writeBenchCsv(std::ostream& os, std::span<const BenchReport> reports);

void
writeBenchJson(std::ostream& os, std::span<const BenchReport> reports);

/// Wall time to insert `entries` generated names into an empty FIB.
double
timeBuild(std::size_t entries, std::uint64_t seed, double meanStoredLength = 3);

struct FibCheckReport
{
  std::size_t ops = 0;
  std::size_t lookups = 0;
  std::size_t integrityChecks = 0;
  std::vector<std::string> violations;
  std::uint64_t mismatches = 0;
  std::uint64_t probeBoundExceeded = 0;
  std::uint64_t hits = 0;

  bool
  ok() const noexcept
  {
    return violations.empty() && mismatches == 0 && probeBoundExceeded == 0;
  }
};

/// Random inserts and deletes over an `alphabet`-component pool with the
/// integrity suite run every `checkEvery` ops and at the end, then random
/// lookups compared against the linear oracle.
FibCheckReport
runFibCheck(std::size_t ops, std::size_t lookups, std::uint32_t alphabet, std::uint64_t seed,
            std::size_t checkEvery = 1000);

} // namespace minet::workload

#endif // MINET_WORKLOAD_BENCH_HPP
