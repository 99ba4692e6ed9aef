#ifndef MINET_SIM_SIMULATOR_HPP
#define MINET_SIM_SIMULATOR_HPP

#include "minet/sim/sim-config.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace minet::sim {

struct RoundMetrics
{
  std::uint64_t round = 0;
  double t1 = 0; // seconds of virtual time per step
  double t2 = 0;
  double t3 = 0;
  double t4 = 0;
  double tCons = 0;
  std::uint64_t committedTxs = 0;
  std::uint32_t leader = 0;
  std::uint32_t blocksCommitted = 0;
  bool forked = false;

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct SimResult
{
  std::vector<RoundMetrics> rounds;
  bool stalled = false;
  std::string diagnostic; // why the run stopped early
  std::uint64_t divergences = 0; // rounds after which live nodes disagreed on the chain tip
  std::vector<std::string> tipDigests; // per node, hex; empty for crashed nodes
  double totalTime = 0;
  std::uint64_t committedTxs = 0;

  double
  meanRoundTime() const noexcept;

  /// Committed transactions per second of virtual time.
  double
  throughput() const noexcept;

  /// round,t1,t2,t3,t4,t_cons,committed_txs
  void
  writeCsv(std::ostream& os) const;

  void
  writeSummaryJson(std::ostream& os, const SimConfig& config) const;
};

/// Per-step computation seconds for S1..S4 with n nodes.
std::array<double, 4>
stepComputeSeconds(ComputeModel model, std::uint32_t n);

/// Runs config.rounds APoV rounds in virtual time. Deterministic in the
/// configuration. A round that cannot complete stops the run with
/// `stalled` set. Throws ConfigInvalid.
SimResult
runRounds(const SimConfig& config);

} // namespace minet::sim

#endif // MINET_SIM_SIMULATOR_HPP
