#ifndef MINET_REGISTRY_DOMAIN_HPP
#define MINET_REGISTRY_DOMAIN_HPP

#include "minet/apov/chain-store.hpp"
#include "minet/fib/hpt.hpp"
#include "minet/registry/record-store.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

namespace minet::registry {

struct RegisterRequest
{
  Identifier identifier;
  Identifier owner;
  ForwardingInfo forwarding;
  std::optional<ContentName> boundTo;
};

class Domain;

/// Reason for rejection, or nothing if the request is compliant.
using CompliancePredicate = std::function<std::optional<std::string>(const RegisterRequest&, const Domain&)>;

/// Owner is an identity; content names are non-empty and never bound; IP
/// identifiers must be bound to a content entry.
std::optional<std::string>
defaultCompliance(const RegisterRequest& request, const Domain& domain);

struct DomainOptions
{
  std::uint32_t supervisors = 4;
  std::uint64_t seed = 1;
  std::size_t cacheCapacity = 256;
  std::optional<std::filesystem::path> storeDir;
};

/**
 * One administrative domain: a supervisor-run APoV chain, the off-chain
 * record map, and the domain FIB. Each registration is one consensus round
 * in which the round leader is the only bookkeeper and every other
 * supervisor votes.
 */
class Domain
{
public:
  Domain(ContentName name, Domain* parent, DomainOptions options = {});

  const ContentName&
  name() const noexcept
  {
    return m_name;
  }

  Domain*
  parent() const noexcept
  {
    return m_parent;
  }

  const std::vector<Domain*>&
  children() const noexcept
  {
    return m_children;
  }

  void
  addChild(Domain* child)
  {
    m_children.push_back(child);
  }

  const apov::Chain&
  chain() const noexcept
  {
    return m_chain;
  }

  const fib::Hpt&
  fib() const noexcept
  {
    return m_fib;
  }

  const RecordStore&
  store() const noexcept
  {
    return m_store;
  }

  std::size_t
  recordCount() const noexcept
  {
    return m_records.size();
  }

  const std::map<std::string, RegistrationRecord>&
  records() const noexcept
  {
    return m_records;
  }

  const RegistrationRecord*
  findRecord(const Identifier& id) const;

  /// Forwarding the domain FIB holds for `id`, exact match only.
  std::optional<ForwardingInfo>
  forwardingOf(const Identifier& id) const;

  /// Runs one consensus round for the request and, once sealed, stores the
  /// record and updates the FIB. Throws ConsensusFailed.
  RegistrationRecord
  commit(const RegisterRequest& request);

  /// Offline supervisors neither lead nor vote.
  void
  setOffline(std::set<apov::NodeId> nodes)
  {
    m_offline = std::move(nodes);
  }

  const RegistrationRecord*
  cached(const Identifier& id) const;

  void
  cache(const RegistrationRecord& r);

  std::uint64_t
  transactionId(const Identifier& id) const;

private:
  ContentName m_name;
  Domain* m_parent;
  std::vector<Domain*> m_children;
  DomainOptions m_options;
  apov::HmacAuthenticator m_auth;
  apov::ConsensusConfig m_consensus;
  apov::Chain m_chain;
  fib::Hpt m_fib;
  RecordStore m_store;
  std::map<std::string, RegistrationRecord> m_records;
  std::set<apov::NodeId> m_offline;
  std::map<std::string, RegistrationRecord> m_cache;
  std::deque<std::string> m_cacheOrder;
};

} // namespace minet::registry

#endif // MINET_REGISTRY_DOMAIN_HPP
