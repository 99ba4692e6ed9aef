#ifndef MINET_FIB_HPT_HPP
#define MINET_FIB_HPT_HPP

#include "minet/core/identifier.hpp"

#include <absl/container/flat_hash_map.h>

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace minet::fib {

/**
 * Entry categories of a reconstructed FIB.
 *
 * Real entries carry forwarding information. Non-real entries only exist so
 * that every proper prefix of a stored name is present in the hash table:
 * a Virtual entry has no Real proper prefix, a SemiVirtual one has at least
 * one, which is what lets a binary search that ends on it backtrack to a
 * Real ancestor instead of reporting a false MISS.
 */
enum class EntryState : std::uint8_t { Real, Virtual, SemiVirtual };

std::string_view
to_string(EntryState state) noexcept;

std::optional<EntryState>
parseEntryState(std::string_view text) noexcept;

using NodeId = std::uint32_t;
inline constexpr NodeId NO_NODE = std::numeric_limits<NodeId>::max();

/// Prefix-tree node. Children form a sibling chain; order is irrelevant.
struct FibNode
{
  std::string component; // edge label from the parent
  EntryState state = EntryState::Virtual;
  std::uint32_t depth = 0;
  NodeId parent = NO_NODE;
  NodeId firstChild = NO_NODE;
  NodeId nextSibling = NO_NODE;
  NodeId prevSibling = NO_NODE;
  std::optional<ForwardingInfo> forwarding;
  std::vector<Identifier> bindings; // the forward link: other identifiers of this content

  bool
  isLeaf() const noexcept
  {
    return firstChild == NO_NODE;
  }
};

struct LookupResult
{
  struct Hit
  {
    ContentName matchedPrefix;
    ForwardingInfo forwarding;
    friend bool operator==(const Hit&, const Hit&) = default;
  };

  std::optional<Hit> hit;
  std::uint32_t probes = 0; // hash-table accesses only

  bool
  isHit() const noexcept
  {
    return hit.has_value();
  }

  /// Outcome equality, ignoring the probe count.
  friend bool
  sameOutcome(const LookupResult& a, const LookupResult& b)
  {
    return a.hit == b.hit;
  }
};

struct Violation
{
  enum class Kind {
    PrefixClosure,
    StateCorrectness,
    NonRealLeaf,
    ForwardingPresence,
    IndexConsistency,
    TreeLinks,
    Binding,
  };

  Kind kind;
  std::string name;
  std::string detail;
};

std::string_view
to_string(Violation::Kind kind) noexcept;

/**
 * FIB combining a hash table (full name -> tree node) with a prefix tree.
 *
 * The table is kept prefix-closed so that membership is monotone in prefix
 * length, which makes binary search over prefix lengths valid. The tree
 * supplies the structure needed for reconstruction, deletion and
 * backtracking from SemiVirtual entries.
 *
 * Single writer, multiple readers: lookups are const and may run
 * concurrently; mutations need exclusive access.
 */
class Hpt
{
public:
  Hpt();
  Hpt(const Hpt& other);
  Hpt(Hpt&& other) noexcept;
  Hpt& operator=(const Hpt& other);
  Hpt& operator=(Hpt&& other) noexcept;
  ~Hpt() = default;

  /// Preallocates node storage for `nodeCount` entries (Real and filler) before a bulk load.
  void
  reserve(std::size_t nodeCount);

  /// Makes `name` a Real entry with forwarding `fw`, adding filler entries for
  /// missing prefixes. Re-inserting a Real name only updates its forwarding.
  void
  insert(const ContentName& name, const ForwardingInfo& fw);

  /// Removes the Real entry `name`; no-op if `name` is not Real.
  void
  erase(const ContentName& name);

  /// Binary search over prefix lengths with SemiVirtual backtracking.
  LookupResult
  lookupLpm(const ContentName& name) const;

  /// Linear longest-first probe of every prefix length. Reference algorithm.
  LookupResult
  lookupOracle(const ContentName& name) const;

  /// Attaches a non-content identifier to the Real entry `content`.
  /// Throws UnknownContent, DuplicateBinding, or InvalidState for a content-kind `alt`.
  void
  bindIdentifier(const ContentName& content, const Identifier& alt);

  /// Content identifiers translate to themselves; others go through their
  /// binding. Throws NotBound.
  ContentName
  translate(const Identifier& alt) const;

  std::vector<Violation>
  verifyIntegrity() const;

  /// Exact-match access; nullptr if `name` is not indexed.
  const FibNode*
  find(const ContentName& name) const;

  std::optional<EntryState>
  stateOf(const ContentName& name) const;

  /// Number of indexed entries (real and non-real).
  std::size_t
  size() const noexcept
  {
    return m_index.size();
  }

  std::size_t
  realCount() const noexcept
  {
    return m_realCount;
  }

  ContentName
  nameOf(NodeId id) const;

  const FibNode&
  node(NodeId id) const
  {
    return m_nodes[id];
  }

  /// Calls f(canonicalName, node) for every indexed entry, in no particular order.
  template<typename F>
  void
  forEachEntry(F&& f) const
  {
    for (const auto& [key, id] : m_index)
      f(std::string_view(key), m_nodes[id]);
  }

  /// Total hash probes issued by lookups on this table since construction.
  std::uint64_t
  totalProbes() const noexcept
  {
    return m_probes.value.load(std::memory_order_relaxed);
  }

  /// Overwrites an entry's state without any bookkeeping. Exists so integrity
  /// checking can be exercised against deliberately corrupted tables.
  void
  forceState(const ContentName& name, EntryState state);

private:
  struct StringHash
  {
    using is_transparent = void;
    std::size_t
    operator()(std::string_view s) const noexcept
    {
      return std::hash<std::string_view>{}(s);
    }
  };

  using Index = absl::flat_hash_map<std::string, NodeId, StringHash, std::equal_to<>>;

  struct ProbeCounter
  {
    std::atomic<std::uint64_t> value{0};
    ProbeCounter() = default;
    ProbeCounter(const ProbeCounter& o) noexcept
      : value(o.value.load(std::memory_order_relaxed))
    {
    }
    ProbeCounter&
    operator=(const ProbeCounter& o) noexcept
    {
      value.store(o.value.load(std::memory_order_relaxed), std::memory_order_relaxed);
      return *this;
    }
  };

  NodeId
  findId(std::string_view key) const;

  NodeId
  allocate(std::string_view component, std::uint32_t depth);

  void
  release(NodeId id);

  void
  link(NodeId child, NodeId parent);

  void
  unlink(NodeId child);

  void
  dropBindings(NodeId id);

  LookupResult
  makeHit(const ContentName& query, NodeId id, std::uint32_t probes) const;

private:
  static constexpr NodeId ROOT = 0;

  std::vector<FibNode> m_nodes;
  std::vector<NodeId> m_free;
  Index m_index;
  std::unordered_map<std::string, NodeId> m_altIndex; // identifier text -> Real node
  std::size_t m_realCount = 0;
  mutable ProbeCounter m_probes;
};

} // namespace minet::fib

#endif // MINET_FIB_HPT_HPP
