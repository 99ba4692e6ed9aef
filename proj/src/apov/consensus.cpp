#include "minet/apov/consensus.hpp"
#include "minet/core/error.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace minet::apov {

namespace {

void
serializeHeader(Writer& w, const BlockGroupHeader& h)
{
  w.u64(h.height);
  w.u32(h.leader);
  w.digest(h.prevGroupHash);
  w.u32(static_cast<std::uint32_t>(h.tally.size()));
  for (const auto& t : h.tally) {
    w.digest(t.blockHash);
    w.u32(t.approve);
    w.u32(t.disapprove);
  }
  w.u32(static_cast<std::uint32_t>(h.voteMessages.size()));
  for (const auto& m : h.voteMessages) {
    w.u32(m.voter);
    w.u32(static_cast<std::uint32_t>(m.votes.size()));
    for (const auto& v : m.votes) {
      w.digest(v.blockHash);
      w.u8(static_cast<std::uint8_t>(v.opinion));
      w.digest(v.signature);
    }
  }
  w.u32(h.nextLeader);
  w.u64(h.leaderSeed);
}

BlockGroupHeader
deserializeHeader(Reader& r)
{
  BlockGroupHeader h;
  h.height = r.u64();
  h.leader = r.u32();
  h.prevGroupHash = r.digest();
  auto tallies = r.u32();
  for (std::uint32_t i = 0; i < tallies; ++i) {
    BlockTally t;
    t.blockHash = r.digest();
    t.approve = r.u32();
    t.disapprove = r.u32();
    h.tally.push_back(t);
  }
  auto messages = r.u32();
  for (std::uint32_t i = 0; i < messages; ++i) {
    VoteMessage m;
    m.voter = r.u32();
    auto votes = r.u32();
    for (std::uint32_t j = 0; j < votes; ++j) {
      ValidationVote v;
      v.blockHash = r.digest();
      auto opinion = r.u8();
      if (opinion > 1)
        throw Error(Errc::ParseError, "bad vote opinion " + std::to_string(opinion));
      v.opinion = static_cast<Opinion>(opinion);
      v.signature = r.digest();
      m.votes.push_back(v);
    }
    h.voteMessages.push_back(std::move(m));
  }
  h.nextLeader = r.u32();
  h.leaderSeed = r.u64();
  return h;
}

bool
hasMajority(std::uint32_t approve, std::uint32_t nc)
{
  return 2ull * approve > nc;
}

std::vector<const Block*>
canonicalOrder(std::span<const Block> blocks)
{
  std::vector<const Block*> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks)
    out.push_back(&b);
  std::sort(out.begin(), out.end(), [](const Block* a, const Block* b) {
    auto ka = a->bookkeeper(), kb = b->bookkeeper();
    return std::tie(ka, a->hash()) < std::tie(kb, b->hash());
  });
  return out;
}

} // namespace

void
BlockGroup::serialize(Writer& w) const
{
  serializeHeader(w, header);
  w.u32(static_cast<std::uint32_t>(body.size()));
  for (const auto& b : body)
    b.serialize(w);
}

BlockGroup
BlockGroup::deserialize(Reader& r)
{
  BlockGroup g;
  g.header = deserializeHeader(r);
  auto count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i)
    g.body.push_back(Block::deserialize(r));
  return g;
}

Bytes
BlockGroup::toBytes() const
{
  Writer w;
  serialize(w);
  return w.release();
}

Digest
BlockGroup::digest() const
{
  return sha256(toBytes());
}

std::uint64_t
BlockGroup::txCount() const noexcept
{
  std::uint64_t n = 0;
  for (const auto& b : body)
    n += b.txs().size();
  return n;
}

void
ConsensusConfig::validate() const
{
  if (nb < 1 || nc < 1)
    throw Error(Errc::ConfigInvalid, "need at least one bookkeeper and one consortium node");
  if (nbc > std::min(nb, nc))
    throw Error(Errc::ConfigInvalid, "n_bc exceeds min(n_b, n_c)");
  if (maxTxs < 1)
    throw Error(Errc::ConfigInvalid, "K must be at least 1");
  if (termLength < 1)
    throw Error(Errc::ConfigInvalid, "term length must be at least 1");
}

Block
makeBlock(NodeId bookkeeper, std::vector<Transaction> txs, const Digest& prevGroupHash,
          std::uint64_t now, std::uint32_t maxTxs)
{
  if (txs.size() > maxTxs)
    throw Error(Errc::TooManyTransactions,
                std::to_string(txs.size()) + " transactions exceed K = " + std::to_string(maxTxs));
  return Block(prevGroupHash, bookkeeper, now, std::move(txs));
}

bool
isValidBlock(const Block& block, const Digest& expectedPrev, std::uint32_t maxTxs)
{
  return block.txs().size() <= maxTxs && block.prevGroupHash() == expectedPrev &&
         block.hasUniqueIds() && block.merkleRoot() == block.computedMerkleRoot();
}

BlockPolicy
honestPolicy(const Digest& expectedPrev, std::uint32_t maxTxs)
{
  return [expectedPrev, maxTxs](const Block& b) {
    return isValidBlock(b, expectedPrev, maxTxs) ? Opinion::Approve : Opinion::Disapprove;
  };
}

Bytes
voteSigningBytes(const Digest& blockHash, Opinion opinion, NodeId voter)
{
  Writer w;
  w.raw(std::span(reinterpret_cast<const std::uint8_t*>("vote"), 4));
  w.digest(blockHash);
  w.u8(static_cast<std::uint8_t>(opinion));
  w.u32(voter);
  return w.release();
}

VoteMessage
castValidationVotes(NodeId voter, std::span<const Block> blocks, const BlockPolicy& policy,
                    const Authenticator& auth)
{
  VoteMessage msg;
  msg.voter = voter;
  msg.votes.reserve(blocks.size());
  for (const auto* b : canonicalOrder(blocks)) {
    ValidationVote v;
    v.blockHash = b->hash();
    v.opinion = policy(*b);
    v.signature = auth.sign(voter, voteSigningBytes(v.blockHash, v.opinion, voter));
    msg.votes.push_back(v);
  }
  return msg;
}

std::uint64_t
uniformIndex(std::uint64_t seed, std::uint64_t bound)
{
  if (bound == 0)
    throw Error(Errc::OutOfRange, "empty range");
  std::mt19937_64 rng(seed);
  auto threshold = (0 - bound) % bound;
  while (true) {
    auto x = rng();
    if (x >= threshold)
      return x % bound;
  }
}

BlockGroup
tallyAndSeal(const RoundContext& ctx, std::span<const VoteMessage> votes,
             std::span<const Block> blocks, const Authenticator& auth)
{
  if (ctx.eligibleLeaders.empty())
    throw Error(Errc::ConfigInvalid, "no node is eligible to lead the next round");

  auto ordered = canonicalOrder(blocks);
  std::map<Digest, std::size_t> position;
  for (std::size_t i = 0; i < ordered.size(); ++i)
    position.emplace(ordered[i]->hash(), i);

  std::map<NodeId, const VoteMessage*> byVoter;
  for (const auto& m : votes)
    if (!byVoter.emplace(m.voter, &m).second)
      throw Error(Errc::IncompleteVotes, "two vote messages from node " + std::to_string(m.voter));

  BlockGroup group;
  auto& h = group.header;
  h.height = ctx.height;
  h.leader = ctx.leader;
  h.prevGroupHash = ctx.prevGroupHash;
  h.tally.resize(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    h.tally[i].blockHash = ordered[i]->hash();

  std::set<NodeId> consortium(ctx.consortium.begin(), ctx.consortium.end());
  for (auto node : consortium) {
    auto it = byVoter.find(node);
    if (it == byVoter.end())
      throw Error(Errc::IncompleteVotes, "no vote message from consortium node " + std::to_string(node));
    const auto& msg = *it->second;
    if (msg.votes.size() != ordered.size())
      throw Error(Errc::IncompleteVotes, "node " + std::to_string(node) + " voted on " +
                                           std::to_string(msg.votes.size()) + " of " +
                                           std::to_string(ordered.size()) + " blocks");
    std::vector<bool> seen(ordered.size(), false);
    for (const auto& v : msg.votes) {
      auto pos = position.find(v.blockHash);
      if (pos == position.end() || seen[pos->second])
        throw Error(Errc::IncompleteVotes, "node " + std::to_string(node) + " voted on an unknown or repeated block");
      if (!auth.verify(node, voteSigningBytes(v.blockHash, v.opinion, node), v.signature))
        throw Error(Errc::IncompleteVotes, "bad vote signature from node " + std::to_string(node));
      seen[pos->second] = true;
      auto& t = h.tally[pos->second];
      (v.opinion == Opinion::Approve ? t.approve : t.disapprove) += 1;
    }
    h.voteMessages.push_back(msg);
  }
  if (byVoter.size() != consortium.size())
    throw Error(Errc::IncompleteVotes, "vote message from a node outside the consortium");

  auto nc = static_cast<std::uint32_t>(consortium.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    if (hasMajority(h.tally[i].approve, nc))
      group.body.push_back(*ordered[i]);

  h.leaderSeed = ctx.seed;
  h.nextLeader = ctx.eligibleLeaders[uniformIndex(ctx.seed, ctx.eligibleLeaders.size())];
  return group;
}

std::string_view
to_string(ValidationIssue::Reason reason) noexcept
{
  using R = ValidationIssue::Reason;
  switch (reason) {
    case R::Linkage: return "Linkage";
    case R::VoteCount: return "VoteCount";
    case R::Coverage: return "Coverage";
    case R::Signature: return "Signature";
    case R::TallyMismatch: return "TallyMismatch";
    case R::MajorityRule: return "MajorityRule";
    case R::MerkleRoot: return "MerkleRoot";
    case R::BlockSize: return "BlockSize";
  }
  return "?";
}

bool
ValidationReport::has(ValidationIssue::Reason reason) const noexcept
{
  return std::any_of(issues.begin(), issues.end(), [reason](const auto& i) { return i.reason == reason; });
}

ValidationReport
validateBlockGroup(const BlockGroup& group, const ConsensusConfig& config, const Digest& prevHash,
                   const Authenticator& auth)
{
  using R = ValidationIssue::Reason;
  ValidationReport report;
  auto issue = [&](R reason, std::string detail) { report.issues.push_back({reason, std::move(detail)}); };
  const auto& h = group.header;

  if (h.prevGroupHash != prevHash)
    issue(R::Linkage, "header links to " + toHex(h.prevGroupHash) + ", expected " + toHex(prevHash));
  for (const auto& b : group.body) {
    if (b.prevGroupHash() != prevHash)
      issue(R::Linkage, "block " + toHex(b.hash()) + " links to the wrong group");
    if (b.merkleRoot() != b.computedMerkleRoot())
      issue(R::MerkleRoot, "block " + toHex(b.hash()) + " states a merkle root that does not verify");
    if (b.txs().size() > config.maxTxs || !b.hasUniqueIds())
      issue(R::BlockSize, "block " + toHex(b.hash()) + " exceeds K or repeats a transaction id");
  }

  if (h.voteMessages.size() != config.nc)
    issue(R::VoteCount, std::to_string(h.voteMessages.size()) + " vote messages, expected " +
                          std::to_string(config.nc));

  std::map<Digest, std::size_t> position;
  for (std::size_t i = 0; i < h.tally.size(); ++i)
    if (!position.emplace(h.tally[i].blockHash, i).second)
      issue(R::Coverage, "block tallied twice");

  std::vector<BlockTally> recount(h.tally.size());
  for (std::size_t i = 0; i < h.tally.size(); ++i)
    recount[i].blockHash = h.tally[i].blockHash;
  std::set<NodeId> voters;
  for (const auto& m : h.voteMessages) {
    if (!voters.insert(m.voter).second)
      issue(R::VoteCount, "node " + std::to_string(m.voter) + " has two vote messages");
    if (m.votes.size() != h.tally.size())
      issue(R::Coverage, "node " + std::to_string(m.voter) + " did not vote exactly once per block");
    for (const auto& v : m.votes) {
      if (!auth.verify(m.voter, voteSigningBytes(v.blockHash, v.opinion, m.voter), v.signature))
        issue(R::Signature, "vote of node " + std::to_string(m.voter) + " does not verify");
      auto pos = position.find(v.blockHash);
      if (pos == position.end()) {
        issue(R::Coverage, "node " + std::to_string(m.voter) + " voted on an untallied block");
        continue;
      }
      auto& t = recount[pos->second];
      (v.opinion == Opinion::Approve ? t.approve : t.disapprove) += 1;
    }
  }
  if (recount != h.tally)
    issue(R::TallyMismatch, "tally does not match the recorded vote messages");

  for (const auto& b : group.body) {
    auto pos = position.find(b.hash());
    if (pos == position.end()) {
      issue(R::Coverage, "block " + toHex(b.hash()) + " in the body was never voted on");
      continue;
    }
    if (!hasMajority(h.tally[pos->second].approve, config.nc))
      issue(R::MajorityRule, "block " + toHex(b.hash()) + " has " + std::to_string(h.tally[pos->second].approve) +
                               " approvals of " + std::to_string(config.nc));
  }
  return report;
}

std::vector<NodeId>
electBookkeepers(std::span<const NodeId> candidates, std::span<const ConfidenceVote> votes,
                 std::uint32_t nb)
{
  std::set<NodeId> unique(candidates.begin(), candidates.end());
  if (unique.size() < nb)
    throw Error(Errc::NotEnoughCandidates,
                std::to_string(unique.size()) + " candidates for " + std::to_string(nb) + " seats");

  std::set<std::pair<NodeId, NodeId>> ballots; // (voter, candidate)
  std::map<NodeId, std::uint64_t> score;
  for (auto c : unique)
    score[c] = 0;
  for (const auto& v : votes)
    if (unique.count(v.candidate) && ballots.emplace(v.voter, v.candidate).second)
      ++score[v.candidate];

  std::vector<NodeId> ranked(unique.begin(), unique.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](NodeId a, NodeId b) { return score[a] > score[b]; });
  ranked.resize(nb);
  return ranked;
}

} // namespace minet::apov
