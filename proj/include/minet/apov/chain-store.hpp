#ifndef MINET_APOV_CHAIN_STORE_HPP
#define MINET_APOV_CHAIN_STORE_HPP

#include "minet/apov/consensus.hpp"

#include <filesystem>
#include <optional>

namespace minet::apov {

/// Height 0, empty body, all-zero previous hash. The first leader is drawn
/// from `eligibleLeaders` with `seed`, as for any other round.
BlockGroup
makeGenesis(std::span<const NodeId> eligibleLeaders, std::uint64_t seed);

/**
 * One node's copy of the chain. Every appended group must validate against
 * the current tip and carry the next height.
 */
class Chain
{
public:
  explicit
  Chain(BlockGroup genesis);

  /// Returns the validation report; the group is appended only when it is ok.
  ValidationReport
  append(BlockGroup group, const ConsensusConfig& config, const Authenticator& auth);

  std::uint64_t
  height() const noexcept
  {
    return m_groups.back().header.height;
  }

  const BlockGroup&
  tip() const noexcept
  {
    return m_groups.back();
  }

  const Digest&
  tipDigest() const noexcept
  {
    return m_digests.back();
  }

  const BlockGroup&
  at(std::uint64_t height) const;

  const Digest&
  digestAt(std::uint64_t height) const;

  std::size_t
  size() const noexcept
  {
    return m_groups.size();
  }

  /// Rechecks linkage and heights of the whole chain.
  bool
  verifyLinkage() const;

  /// Height of the group whose body holds transaction `txId`, if any.
  std::optional<std::uint64_t>
  findTransaction(std::uint64_t txId) const;

private:
  std::vector<BlockGroup> m_groups;
  std::vector<Digest> m_digests;
};

/// Append-only file of u32-length-prefixed serialized block groups.
class ChainFile
{
public:
  explicit
  ChainFile(std::filesystem::path path);

  void
  append(const BlockGroup& group) const;

  std::vector<BlockGroup>
  readAll() const;

private:
  std::filesystem::path m_path;
};

} // namespace minet::apov

#endif // MINET_APOV_CHAIN_STORE_HPP
