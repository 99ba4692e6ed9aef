#include "minet/sim/sim-config.hpp"
#include "minet/core/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace minet::sim {

using nlohmann::json;

std::string_view
to_string(ComputeModel m) noexcept
{
  switch (m) {
    case ComputeModel::StepFits: return "step-fits";
    case ComputeModel::ResidualShares: return "residual-shares";
    case ComputeModel::Zero: return "zero";
  }
  return "?";
}

ComputeModel
parseComputeModel(std::string_view text)
{
  for (auto m : {ComputeModel::StepFits, ComputeModel::ResidualShares, ComputeModel::Zero})
    if (text == to_string(m))
      return m;
  throw Error(Errc::ConfigInvalid, "unknown compute model '" + std::string(text) + "'");
}

std::string_view
to_string(FaultSpec::Behavior b) noexcept
{
  switch (b) {
    case FaultSpec::Behavior::CrashAtRound: return "crash_at_round";
    case FaultSpec::Behavior::InvalidBlocks: return "invalid_blocks";
    case FaultSpec::Behavior::DissentingVotes: return "dissenting_votes";
  }
  return "?";
}

void
SimConfig::validate() const
{
  if (nodeCount < 2)
    throw Error(Errc::ConfigInvalid, "need at least two nodes");
  if (!roles.empty() && roles.size() != nodeCount)
    throw Error(Errc::ConfigInvalid, "roles must list every node");
  if (band == 0)
    throw Error(Errc::ConfigInvalid, "band must be positive");
  for (auto size : {M, H, T, Hv, Vb, Hr, Rb, K, termLength})
    if (size == 0)
      throw Error(Errc::ConfigInvalid, "message sizes, K and term length must be positive");
  std::uint32_t bookkeepers = 0;
  std::uint32_t voters = 0;
  for (std::uint32_t i = 0; i < nodeCount; ++i) {
    bookkeepers += roleOf(i).bookkeeper;
    voters += roleOf(i).consortium;
  }
  if (bookkeepers == 0 || voters == 0)
    throw Error(Errc::ConfigInvalid, "need at least one bookkeeper and one consortium node");
  for (const auto& f : faults)
    if (f.node >= nodeCount)
      throw Error(Errc::UnknownNode, "fault names node " + std::to_string(f.node));
}

SimConfig
injectFault(SimConfig config, const FaultSpec& fault)
{
  if (fault.node >= config.nodeCount)
    throw Error(Errc::UnknownNode, "node " + std::to_string(fault.node) + " does not exist");
  config.faults.push_back(fault);
  return config;
}

SimConfig
parseSimConfig(std::string_view text, SimConfig c)
{
  json j;
  try {
    j = json::parse(text);
  }
  catch (const json::exception& e) {
    throw Error(Errc::ConfigInvalid, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object())
    throw Error(Errc::ConfigInvalid, "configuration must be a JSON object");

  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key))
        field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("nodes", c.nodeCount);
    get("leader_votes", c.leaderVotes);
    if (j.contains("band"))
      c.band = static_cast<std::uint64_t>(j.at("band").get<double>());
    get("M", c.M);
    get("H", c.H);
    get("T", c.T);
    get("H_v", c.Hv);
    get("V_b", c.Vb);
    get("H_r", c.Hr);
    get("R_b", c.Rb);
    get("K", c.K);
    get("term_length", c.termLength);
    get("seed", c.seed);
    get("rounds", c.rounds);
    if (j.contains("compute"))
      c.compute = parseComputeModel(j.at("compute").get<std::string>());
    if (j.contains("roles")) {
      c.roles.clear();
      for (const auto& r : j.at("roles"))
        c.roles.push_back({r.value("bookkeeper", true), r.value("consortium", true)});
    }
    if (j.contains("faults")) {
      c.faults.clear();
      for (const auto& f : j.at("faults")) {
        FaultSpec spec;
        spec.node = f.at("node").get<std::uint32_t>();
        auto behavior = f.at("behavior").get<std::string>();
        if (behavior == "crash_at_round")
          spec.behavior = FaultSpec::Behavior::CrashAtRound;
        else if (behavior == "invalid_blocks")
          spec.behavior = FaultSpec::Behavior::InvalidBlocks;
        else if (behavior == "dissenting_votes")
          spec.behavior = FaultSpec::Behavior::DissentingVotes;
        else
          throw Error(Errc::ConfigInvalid, "unknown fault behavior '" + behavior + "'");
        spec.round = f.value("round", std::uint64_t{1});
        c.faults.push_back(spec);
      }
    }
  }
  catch (const json::exception& e) {
    throw Error(Errc::ConfigInvalid, std::string("bad configuration value: ") + e.what());
  }
  c.validate();
  return c;
}

SimConfig
loadSimConfig(const std::string& path, SimConfig base)
{
  std::ifstream is(path);
  if (!is)
    throw Error(Errc::ConfigInvalid, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parseSimConfig(ss.str(), std::move(base));
}

} // namespace minet::sim
