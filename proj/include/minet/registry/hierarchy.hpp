#ifndef MINET_REGISTRY_HIERARCHY_HPP
#define MINET_REGISTRY_HIERARCHY_HPP

#include "minet/registry/domain.hpp"

#include <memory>

namespace minet::registry {

struct ResolutionResult
{
  enum class Outcome { Resolved, ProxiedToIp, NotFound };

  Outcome outcome = Outcome::NotFound;
  std::optional<RegistrationRecord> record;
  std::optional<ForwardingInfo> forwarding;
  /// Domain that answered; for a cache answer, the querying domain.
  std::optional<ContentName> answeredBy;
  bool fromCache = false;
  std::string message;
  std::vector<ContentName> hops;
};

std::string_view
to_string(ResolutionResult::Outcome o) noexcept;

/// Tree of domains under a single top-level domain.
class Hierarchy
{
public:
  explicit
  Hierarchy(DomainOptions defaults = {});

  /// The first domain added is the top. Every later one hangs under its
  /// longest existing proper prefix. Throws UnknownDomain if there is none,
  /// Duplicate if the name exists.
  Domain&
  addDomain(const ContentName& name);

  Domain&
  addDomain(std::string_view uri)
  {
    return addDomain(ContentName::parse(uri));
  }

  /// Throws UnknownDomain.
  Domain&
  domain(const ContentName& name) const;

  Domain&
  top() const;

  std::size_t
  size() const noexcept
  {
    return m_domains.size();
  }

  /// In insertion order.
  std::vector<Domain*>
  domains() const;

  void
  setCompliance(CompliancePredicate predicate)
  {
    m_compliance = std::move(predicate);
  }

  /// Throws UnknownDomain, ComplianceRejected, Duplicate, ConsensusFailed.
  RegistrationRecord
  registerIdentifier(const ContentName& domain, const RegisterRequest& request);

  /// Local check, then up to the top, then down: along the domain path the
  /// identifier carries if any, breadth-first over the rest otherwise.
  ResolutionResult
  resolve(const ContentName& origin, const Identifier& id);

  /// Committed record for `id` anywhere in the hierarchy.
  const RegistrationRecord*
  findCommitted(const Identifier& id) const;

private:
  DomainOptions m_defaults;
  std::vector<std::unique_ptr<Domain>> m_domains;
  std::map<ContentName, Domain*> m_byName;
  CompliancePredicate m_compliance = defaultCompliance;
};

} // namespace minet::registry

#endif // MINET_REGISTRY_HIERARCHY_HPP
