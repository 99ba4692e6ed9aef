#include "minet/sim/simulator.hpp"
#include "minet/apov/chain-store.hpp"
#include "minet/core/error.hpp"
#include "minet/model/perf-model.hpp"
#include "minet/sim/network.hpp"

#include <json.hpp>

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <set>

namespace minet::sim {

using namespace minet::apov;

namespace {

std::uint64_t
splitmix(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct NodeState
{
  std::unique_ptr<Chain> chain;
  std::optional<std::uint64_t> crashRound;
  bool invalidBlocks = false;
  bool dissenting = false;
  std::mt19937_64 opinionRng;

  bool
  downIn(std::uint64_t round) const noexcept
  {
    return crashRound && round >= *crashRound;
  }
};

class Simulation
{
public:
  explicit
  Simulation(const SimConfig& config)
    : m_cfg(config)
    , m_net(config.nodeCount, config.band)
    , m_compute(stepComputeSeconds(config.compute, config.nodeCount))
  {
    std::vector<NodeId> everyone;
    for (NodeId i = 0; i < config.nodeCount; ++i)
      everyone.push_back(i);
    auto genesis = makeGenesis(everyone, splitmix(config.seed));

    m_nodes.resize(config.nodeCount);
    for (NodeId i = 0; i < config.nodeCount; ++i) {
      m_nodes[i].chain = std::make_unique<Chain>(genesis);
      m_nodes[i].opinionRng.seed(splitmix(config.seed ^ (0xD15Cull << 32) ^ i));
    }
    for (const auto& f : config.faults) {
      auto& n = m_nodes.at(f.node);
      switch (f.behavior) {
        case FaultSpec::Behavior::CrashAtRound:
          n.crashRound = std::min(n.crashRound.value_or(f.round), f.round);
          break;
        case FaultSpec::Behavior::InvalidBlocks: n.invalidBlocks = true; break;
        case FaultSpec::Behavior::DissentingVotes: n.dissenting = true; break;
      }
    }
  }

  SimResult
  run()
  {
    SimResult result;
    for (std::uint64_t r = 1; r <= m_cfg.rounds; ++r) {
      auto metrics = runRound(r, result);
      if (!metrics)
        break;
      result.committedTxs += metrics->committedTxs;
      result.divergences += metrics->forked;
      result.rounds.push_back(*metrics);
    }
    result.totalTime = toSeconds(m_queue.now());
    auto lastRound = result.rounds.size() + (result.stalled ? 1 : 0);
    for (const auto& n : m_nodes)
      result.tipDigests.push_back(n.downIn(lastRound) ? std::string() : toHex(n.chain->tipDigest()));
    return result;
  }

private:
  struct Round
  {
    std::uint64_t height = 0;
    NodeId leader = 0;
    std::vector<NodeId> bookkeepers;
    std::vector<NodeId> consortium;
    std::vector<std::vector<Block>> blocks; // per node, as received
    std::vector<VoteMessage> votes;         // at the leader
    std::shared_ptr<const BlockGroup> group;
    std::vector<bool> applied;
    std::vector<bool> voting;
    bool sealScheduled = false;
    bool leaderHasBlocks = false;
    SimTime start = 0;
    SimTime s1End = 0;
    SimTime s2End = 0;
    SimTime s3End = 0;
    SimTime end = 0;
    std::string failure;
  };

  std::optional<RoundMetrics>
  runRound(std::uint64_t height, SimResult& result)
  {
    Round r;
    r.height = height;
    r.start = m_queue.now();
    r.s1End = r.s2End = r.s3End = r.end = r.start;
    r.blocks.resize(m_cfg.nodeCount);
    r.applied.assign(m_cfg.nodeCount, false);
    r.voting.assign(m_cfg.nodeCount, false);

    const Chain* reference = nullptr;
    for (const auto& n : m_nodes)
      if (!n.downIn(height)) {
        reference = n.chain.get();
        break;
      }
    if (reference == nullptr)
      return stall(result, height, "every node is down");
    r.leader = reference->tip().header.nextLeader;
    if (m_nodes[r.leader].downIn(height))
      return stall(result, height, "designated leader " + std::to_string(r.leader) + " is down");

    for (NodeId i = 0; i < m_cfg.nodeCount; ++i) {
      auto role = m_cfg.roleOf(i);
      if (role.bookkeeper)
        r.bookkeepers.push_back(i);
      if (role.consortium && (m_cfg.leaderVotes || i != r.leader))
        r.consortium.push_back(i);
    }
    if (r.consortium.empty())
      return stall(result, height, "no consortium node besides the leader");
    m_round = &r;

    for (auto b : r.bookkeepers)
      if (!m_nodes[b].downIn(height))
        m_queue.scheduleAfter(fromSeconds(m_compute[0]), [this, b] { produceBlock(b); });
    m_queue.run();

    // Blocks that never arrived: everyone who is still waiting gives up on
    // them and votes on what it holds.
    std::string missingBlocks;
    if (r.failure.empty() && !r.group) {
      missingBlocks = describeMissingBlocks(r);
      for (NodeId x = 0; x < m_cfg.nodeCount; ++x)
        if (!m_nodes[x].downIn(height))
          m_queue.schedule(m_queue.now(), [this, x] { blockWaitExpired(x); });
      m_queue.run();
    }
    m_round = nullptr;

    if (!r.failure.empty())
      return stall(result, height, r.failure);
    for (NodeId i = 0; i < m_cfg.nodeCount; ++i)
      if (!m_nodes[i].downIn(height) && !r.applied[i])
        return stall(result, height, describeStall(r) + missingBlocks);

    RoundMetrics m;
    m.round = height;
    m.leader = r.leader;
    SimTime b1 = r.s1End;
    SimTime b2 = std::max(b1, r.s2End);
    SimTime b3 = std::max(b2, r.s3End);
    SimTime b4 = std::max(b3, r.end);
    m.t1 = toSeconds(b1 - r.start);
    m.t2 = toSeconds(b2 - b1);
    m.t3 = toSeconds(b3 - b2);
    m.t4 = toSeconds(b4 - b3);
    m.tCons = toSeconds(b4 - r.start);
    m.committedTxs = r.group->txCount();
    m.blocksCommitted = static_cast<std::uint32_t>(r.group->body.size());

    std::set<Digest> tips;
    for (const auto& n : m_nodes)
      if (!n.downIn(height))
        tips.insert(n.chain->tipDigest());
    m.forked = tips.size() > 1;
    return m;
  }

  std::optional<RoundMetrics>
  stall(SimResult& result, std::uint64_t height, const std::string& why)
  {
    result.stalled = true;
    result.diagnostic = "round " + std::to_string(height) + " stalled: " + why;
    return std::nullopt;
  }

  std::string
  describeStall(const Round& r) const
  {
    std::string missing;
    std::set<NodeId> voted;
    for (const auto& v : r.votes)
      voted.insert(v.voter);
    for (auto c : r.consortium)
      if (!voted.count(c))
        missing += (missing.empty() ? "" : ", ") + std::to_string(c);
    if (!missing.empty())
      return "IncompleteVotes: no vote message from consortium node(s) " + missing;
    return "block group never reached every live node";
  }

  std::string
  describeMissingBlocks(const Round& r) const
  {
    std::set<NodeId> seen;
    for (const auto& b : r.blocks[r.leader])
      seen.insert(b.bookkeeper());
    std::string missing;
    for (auto b : r.bookkeepers)
      if (!seen.count(b))
        missing += (missing.empty() ? "" : ", ") + std::to_string(b);
    return missing.empty() ? "" : "; no block from bookkeeper(s) " + missing;
  }

  void
  blockWaitExpired(NodeId x)
  {
    auto& r = *m_round;
    if (r.blocks[x].size() == r.bookkeepers.size())
      return;
    startVoting(x);
    if (x == r.leader) {
      r.leaderHasBlocks = true;
      maybeSeal();
    }
  }

  void
  startVoting(NodeId x)
  {
    auto& r = *m_round;
    if (r.voting[x] || std::find(r.consortium.begin(), r.consortium.end(), x) == r.consortium.end())
      return;
    r.voting[x] = true;
    m_queue.scheduleAfter(fromSeconds(m_compute[1]), [this, x] { castVotes(x); });
  }

  ConsensusConfig
  consensusConfig(const Round& r) const
  {
    std::set<NodeId> b(r.bookkeepers.begin(), r.bookkeepers.end());
    std::uint32_t both = 0;
    for (auto c : r.consortium)
      both += b.count(c);
    return {static_cast<std::uint32_t>(r.bookkeepers.size()), static_cast<std::uint32_t>(r.consortium.size()),
            both, m_cfg.K, m_cfg.termLength};
  }

  void
  produceBlock(NodeId b)
  {
    auto& r = *m_round;
    auto& node = m_nodes[b];
    std::vector<Transaction> txs(m_cfg.K);
    std::uint64_t base = (r.height * m_cfg.nodeCount + b) * std::uint64_t{m_cfg.K};
    for (std::uint32_t i = 0; i < m_cfg.K; ++i)
      txs[i] = Transaction{base + i, {}, m_cfg.T};
    auto block = makeBlock(b, std::move(txs), node.chain->tipDigest(), r.height, m_cfg.K);
    if (node.invalidBlocks)
      block = block.withMerkleRoot(sha256("corrupted:" + std::to_string(r.height)));

    std::uint64_t bytes = std::uint64_t{m_cfg.M} + m_cfg.H + std::uint64_t{m_cfg.T} * block.txs().size();
    auto now = m_queue.now();
    for (NodeId x = 0; x < m_cfg.nodeCount; ++x) {
      if (x == b)
        continue;
      auto arrival = m_net.transfer(b, x, bytes, now);
      m_queue.schedule(arrival, [this, x, block] { receiveBlock(x, block); });
    }
    receiveBlock(b, block);
  }

  void
  receiveBlock(NodeId x, const Block& block)
  {
    auto& r = *m_round;
    if (m_nodes[x].downIn(r.height))
      return;
    r.s1End = std::max(r.s1End, m_queue.now());
    r.blocks[x].push_back(block);
    if (r.blocks[x].size() != r.bookkeepers.size())
      return;

    startVoting(x);
    if (x == r.leader) {
      r.leaderHasBlocks = true;
      maybeSeal();
    }
  }

  void
  castVotes(NodeId x)
  {
    auto& r = *m_round;
    auto& node = m_nodes[x];
    BlockPolicy policy = honestPolicy(node.chain->tipDigest(), m_cfg.K);
    if (node.dissenting)
      policy = [&node](const Block&) { return node.opinionRng() % 2 ? Opinion::Approve : Opinion::Disapprove; };
    auto msg = castValidationVotes(x, r.blocks[x], policy, m_auth);

    if (x == r.leader) {
      receiveVotes(std::move(msg));
      return;
    }
    std::uint64_t bytes = std::uint64_t{m_cfg.M} + m_cfg.Hv + std::uint64_t{m_cfg.Vb} * msg.votes.size();
    auto arrival = m_net.transfer(x, r.leader, bytes, m_queue.now());
    m_queue.schedule(arrival, [this, msg = std::move(msg)]() mutable { receiveVotes(std::move(msg)); });
  }

  void
  receiveVotes(VoteMessage msg)
  {
    auto& r = *m_round;
    r.s2End = std::max(r.s2End, m_queue.now());
    r.votes.push_back(std::move(msg));
    maybeSeal();
  }

  void
  maybeSeal()
  {
    auto& r = *m_round;
    if (r.sealScheduled || !r.leaderHasBlocks || r.votes.size() != r.consortium.size())
      return;
    r.sealScheduled = true;
    m_queue.scheduleAfter(fromSeconds(m_compute[2]), [this] { seal(); });
  }

  void
  seal()
  {
    auto& r = *m_round;
    RoundContext ctx;
    ctx.height = r.height;
    ctx.leader = r.leader;
    ctx.prevGroupHash = m_nodes[r.leader].chain->tipDigest();
    ctx.consortium = r.consortium;
    for (NodeId i = 0; i < m_cfg.nodeCount; ++i)
      ctx.eligibleLeaders.push_back(i);
    ctx.seed = splitmix(m_cfg.seed + r.height);
    try {
      r.group = std::make_shared<const BlockGroup>(tallyAndSeal(ctx, r.votes, r.blocks[r.leader], m_auth));
    }
    catch (const Error& e) {
      r.failure = e.what();
      return;
    }

    auto blocks = r.blocks[r.leader].size();
    std::uint64_t bytes = std::uint64_t{m_cfg.M} + m_cfg.Hr + std::uint64_t{m_cfg.Rb} * blocks +
                          r.consortium.size() * (std::uint64_t{m_cfg.Hv} + std::uint64_t{m_cfg.Vb} * blocks);
    auto now = m_queue.now();
    for (NodeId x = 0; x < m_cfg.nodeCount; ++x) {
      if (x == r.leader)
        continue;
      auto arrival = m_net.transfer(r.leader, x, bytes, now);
      m_queue.schedule(arrival, [this, x] { receiveGroup(x); });
    }
    receiveGroup(r.leader);
  }

  void
  receiveGroup(NodeId x)
  {
    auto& r = *m_round;
    if (m_nodes[x].downIn(r.height))
      return;
    r.s3End = std::max(r.s3End, m_queue.now());
    m_queue.scheduleAfter(fromSeconds(m_compute[3]), [this, x] { applyGroup(x); });
  }

  void
  applyGroup(NodeId x)
  {
    auto& r = *m_round;
    auto report = m_nodes[x].chain->append(*r.group, consensusConfig(r), m_auth);
    if (!report.ok() && r.failure.empty())
      r.failure = "node " + std::to_string(x) + " rejected the block group: " +
                  std::string(to_string(report.issues.front().reason)) + " (" + report.issues.front().detail + ")";
    r.applied[x] = true;
    r.end = std::max(r.end, m_queue.now());
  }

private:
  const SimConfig& m_cfg;
  EventQueue m_queue;
  Network m_net;
  std::array<double, 4> m_compute;
  HmacAuthenticator m_auth;
  std::vector<NodeState> m_nodes;
  Round* m_round = nullptr;
};

} // namespace

double
SimResult::meanRoundTime() const noexcept
{
  if (rounds.empty())
    return 0;
  double sum = 0;
  for (const auto& r : rounds)
    sum += r.tCons;
  return sum / static_cast<double>(rounds.size());
}

double
SimResult::throughput() const noexcept
{
  return totalTime > 0 ? static_cast<double>(committedTxs) / totalTime : 0;
}

void
SimResult::writeCsv(std::ostream& os) const
{
  auto old = os.precision(9);
  os << "round,t1,t2,t3,t4,t_cons,committed_txs\n";
  for (const auto& r : rounds)
    os << r.round << ',' << r.t1 << ',' << r.t2 << ',' << r.t3 << ',' << r.t4 << ',' << r.tCons << ','
       << r.committedTxs << '\n';
  os.precision(old);
}

void
SimResult::writeSummaryJson(std::ostream& os, const SimConfig& config) const
{
  nlohmann::json faults = nlohmann::json::array();
  for (const auto& f : config.faults)
    faults.push_back({{"node", f.node}, {"behavior", std::string(to_string(f.behavior))}, {"round", f.round}});
  nlohmann::json j = {
    {"nodes", config.nodeCount},
    {"band", config.band},
    {"K", config.K},
    {"compute", std::string(to_string(config.compute))},
    {"seed", config.seed},
    {"rounds_requested", config.rounds},
    {"rounds_completed", rounds.size()},
    {"stalled", stalled},
    {"diagnostic", diagnostic},
    {"divergences", divergences},
    {"mean_round_time", meanRoundTime()},
    {"total_time", totalTime},
    {"committed_txs", committedTxs},
    {"throughput", throughput()},
    {"faults", faults},
  };
  os << j.dump(2) << '\n';
}

std::array<double, 4>
stepComputeSeconds(ComputeModel model, std::uint32_t n)
{
  auto fits = model::computationTimes(n);
  std::array<double, 4> steps{fits.s1, fits.s2, fits.s3, fits.s4};
  switch (model) {
    case ComputeModel::StepFits: return steps;
    case ComputeModel::ResidualShares: {
      double scale = model::residualComputationTime(n) / fits.total();
      for (auto& s : steps)
        s *= scale;
      return steps;
    }
    case ComputeModel::Zero: return {0, 0, 0, 0};
  }
  return steps;
}

SimResult
runRounds(const SimConfig& config)
{
  config.validate();
  Simulation sim(config);
  return sim.run();
}

} // namespace minet::sim
