#ifndef MINET_SIM_SIM_CONFIG_HPP
#define MINET_SIM_SIM_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace minet::sim {

enum class ComputeModel {
  StepFits,        // the per-step polynomial fits of the prototype
  ResidualShares,  // round-fit minus fitted transmission, split by the step-fit shares
  Zero,
};

std::string_view
to_string(ComputeModel m) noexcept;

ComputeModel
parseComputeModel(std::string_view text);

struct FaultSpec
{
  enum class Behavior { CrashAtRound, InvalidBlocks, DissentingVotes };

  std::uint32_t node = 0;
  Behavior behavior = Behavior::CrashAtRound;
  std::uint64_t round = 1; // CrashAtRound only: first round the node misses
};

std::string_view
to_string(FaultSpec::Behavior b) noexcept;

struct NodeRole
{
  bool bookkeeper = true;
  bool consortium = true;
};

struct SimConfig
{
  std::uint32_t nodeCount = 3;
  std::vector<NodeRole> roles; // empty: every node keeps books and votes
  bool leaderVotes = false;    // whether the round's leader also sits in the consortium
  std::uint64_t band = 125'000'000; // bytes per second, each direction
  std::uint32_t M = 266;
  std::uint32_t H = 692;
  std::uint32_t T = 40;
  std::uint32_t Hv = 400;
  std::uint32_t Vb = 100;
  std::uint32_t Hr = 170;
  std::uint32_t Rb = 400;
  std::uint32_t K = 10000;
  std::uint32_t termLength = 10;
  ComputeModel compute = ComputeModel::StepFits;
  std::uint64_t seed = 1;
  std::uint64_t rounds = 10;
  std::vector<FaultSpec> faults;

  /// Throws ConfigInvalid.
  void
  validate() const;

  NodeRole
  roleOf(std::uint32_t node) const
  {
    return roles.empty() ? NodeRole{} : roles.at(node);
  }
};

/// Returns `config` with `fault` added. Throws UnknownNode.
SimConfig
injectFault(SimConfig config, const FaultSpec& fault);

/// Reads a JSON object; absent keys keep their defaults. Throws ConfigInvalid.
SimConfig
parseSimConfig(std::string_view json, SimConfig base = {});

SimConfig
loadSimConfig(const std::string& path, SimConfig base = {});

} // namespace minet::sim

#endif // MINET_SIM_SIM_CONFIG_HPP
