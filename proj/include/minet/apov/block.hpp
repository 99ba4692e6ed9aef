#ifndef MINET_APOV_BLOCK_HPP
#define MINET_APOV_BLOCK_HPP

#include "minet/apov/serialization.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace minet::apov {

struct Transaction
{
  std::uint64_t id = 0;
  Bytes payload;
  std::uint32_t nominalSize = 0; // bytes this transaction stands for on the wire

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

/**
 * Merkle root over transaction ids. Leaves are H(0x00 || id), inner nodes
 * H(0x01 || left || right); an unpaired node is promoted unchanged to the next
 * level. The root of zero transactions is SHA-256 of the empty string.
 */
Digest
merkleRoot(std::span<const Transaction> txs);

/**
 * An immutable block. Copies share the transaction list, and the values
 * derived from it (computed merkle root, id uniqueness) are computed at most
 * once per list.
 */
class Block
{
public:
  /// The stated merkle root defaults to the one computed from `txs`.
  Block(const Digest& prevGroupHash, NodeId bookkeeper, std::uint64_t timestamp,
        std::vector<Transaction> txs, std::optional<Digest> statedRoot = std::nullopt);

  const Digest&
  prevGroupHash() const noexcept
  {
    return m_prevGroupHash;
  }

  /// The root written in the block, which a faulty bookkeeper may get wrong.
  const Digest&
  merkleRoot() const noexcept
  {
    return m_merkleRoot;
  }

  NodeId
  bookkeeper() const noexcept
  {
    return m_bookkeeper;
  }

  std::uint64_t
  timestamp() const noexcept
  {
    return m_timestamp;
  }

  std::span<const Transaction>
  txs() const noexcept
  {
    return m_body->txs;
  }

  const Digest&
  computedMerkleRoot() const;

  bool
  hasUniqueIds() const;

  /// Sum of nominal transaction sizes.
  std::uint64_t
  nominalBodySize() const noexcept
  {
    return m_body->nominalSize;
  }

  /// Digest of the canonical serialization.
  const Digest&
  hash() const noexcept
  {
    return m_hash;
  }

  /// Same transactions with a different stated root.
  Block
  withMerkleRoot(const Digest& root) const;

  void
  serialize(Writer& w) const;

  static Block
  deserialize(Reader& r);

  friend bool
  operator==(const Block& a, const Block& b) noexcept
  {
    return a.m_hash == b.m_hash;
  }

private:
  struct Body
  {
    std::vector<Transaction> txs;
    std::uint64_t nominalSize = 0;
    mutable std::once_flag rootOnce;
    mutable Digest root{};
    mutable std::once_flag uniqueOnce;
    mutable bool unique = false;
  };

  Block(const Digest& prevGroupHash, NodeId bookkeeper, std::uint64_t timestamp,
        std::shared_ptr<const Body> body, const Digest& statedRoot);

  void
  serializeFields(Writer& w) const;

private:
  Digest m_prevGroupHash;
  Digest m_merkleRoot;
  NodeId m_bookkeeper;
  std::uint64_t m_timestamp;
  std::shared_ptr<const Body> m_body;
  Digest m_hash;
};

} // namespace minet::apov

#endif // MINET_APOV_BLOCK_HPP
