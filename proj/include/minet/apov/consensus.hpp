#ifndef MINET_APOV_CONSENSUS_HPP
#define MINET_APOV_CONSENSUS_HPP

#include "minet/apov/block.hpp"

#include <functional>
#include <string>

namespace minet::apov {

enum class Opinion : std::uint8_t { Disapprove = 0, Approve = 1 };

struct ValidationVote
{
  Digest blockHash{};
  Opinion opinion = Opinion::Disapprove;
  Digest signature{}; // authenticator tag over (block hash, opinion, voter)

  friend bool operator==(const ValidationVote&, const ValidationVote&) = default;
};

/// Everything one consortium node says about one round's blocks.
struct VoteMessage
{
  NodeId voter = 0;
  std::vector<ValidationVote> votes;

  friend bool operator==(const VoteMessage&, const VoteMessage&) = default;
};

struct ConfidenceVote
{
  NodeId candidate = 0;
  NodeId voter = 0;
};

struct BlockTally
{
  Digest blockHash{};
  std::uint32_t approve = 0;
  std::uint32_t disapprove = 0;

  friend bool operator==(const BlockTally&, const BlockTally&) = default;
};

struct BlockGroupHeader
{
  std::uint64_t height = 0;
  NodeId leader = 0;
  Digest prevGroupHash{};
  std::vector<BlockTally> tally; // one per block of the round, in canonical block order
  std::vector<VoteMessage> voteMessages; // sorted by voter
  NodeId nextLeader = 0;
  std::uint64_t leaderSeed = 0; // seed the next leader was drawn with

  friend bool operator==(const BlockGroupHeader&, const BlockGroupHeader&) = default;
};

struct BlockGroup
{
  BlockGroupHeader header;
  std::vector<Block> body; // blocks approved by a strict majority

  void
  serialize(Writer& w) const;

  static BlockGroup
  deserialize(Reader& r);

  Bytes
  toBytes() const;

  /// Digest of the canonical serialization; what the next round links to.
  Digest
  digest() const;

  std::uint64_t
  txCount() const noexcept;
};

struct ConsensusConfig
{
  std::uint32_t nb = 1;
  std::uint32_t nc = 1;
  std::uint32_t nbc = 0;
  std::uint32_t maxTxs = 10000; // K
  std::uint32_t termLength = 10;

  /// Throws ConfigInvalid.
  void
  validate() const;
};

/// Throws TooManyTransactions when txs exceeds maxTxs.
Block
makeBlock(NodeId bookkeeper, std::vector<Transaction> txs, const Digest& prevGroupHash,
          std::uint64_t now, std::uint32_t maxTxs);

/// The honest validity predicate: size within K, distinct transaction ids,
/// expected previous group hash, and a stated merkle root that verifies.
bool
isValidBlock(const Block& block, const Digest& expectedPrev, std::uint32_t maxTxs);

using BlockPolicy = std::function<Opinion(const Block&)>;

BlockPolicy
honestPolicy(const Digest& expectedPrev, std::uint32_t maxTxs);

/// The bytes a validation vote's signature covers.
Bytes
voteSigningBytes(const Digest& blockHash, Opinion opinion, NodeId voter);

VoteMessage
castValidationVotes(NodeId voter, std::span<const Block> blocks, const BlockPolicy& policy,
                    const Authenticator& auth);

/// What the leader knows about the round it is sealing.
struct RoundContext
{
  std::uint64_t height = 1;
  NodeId leader = 0;
  Digest prevGroupHash{};
  std::vector<NodeId> consortium;
  std::vector<NodeId> eligibleLeaders;
  std::uint64_t seed = 0;
};

/// Uniform draw from [0, bound) by rejection, independent of the standard
/// library's distribution implementations.
std::uint64_t
uniformIndex(std::uint64_t seed, std::uint64_t bound);

/**
 * Counts the votes of every consortium node and seals the round's block group.
 * Votes must come from exactly the consortium, each with a verifying
 * signature and one vote per block; otherwise throws IncompleteVotes.
 */
BlockGroup
tallyAndSeal(const RoundContext& ctx, std::span<const VoteMessage> votes,
             std::span<const Block> blocks, const Authenticator& auth);

struct ValidationIssue
{
  enum class Reason {
    Linkage,
    VoteCount,
    Coverage,
    Signature,
    TallyMismatch,
    MajorityRule,
    MerkleRoot,
    BlockSize,
  };

  Reason reason;
  std::string detail;
};

std::string_view
to_string(ValidationIssue::Reason reason) noexcept;

struct ValidationReport
{
  std::vector<ValidationIssue> issues;

  bool
  ok() const noexcept
  {
    return issues.empty();
  }

  bool
  has(ValidationIssue::Reason reason) const noexcept;
};

ValidationReport
validateBlockGroup(const BlockGroup& group, const ConsensusConfig& config, const Digest& prevHash,
                   const Authenticator& auth);

/// Candidates ranked by distinct confidence votes received, ties broken by
/// ascending id. Throws NotEnoughCandidates when fewer than nb candidates.
std::vector<NodeId>
electBookkeepers(std::span<const NodeId> candidates, std::span<const ConfidenceVote> votes,
                 std::uint32_t nb);

} // namespace minet::apov

#endif // MINET_APOV_CONSENSUS_HPP
