#include "minet/registry/hierarchy.hpp"

#include "minet/core/error.hpp"

#include <queue>

namespace minet::registry {

std::string_view
to_string(ResolutionResult::Outcome o) noexcept
{
  switch (o) {
    case ResolutionResult::Outcome::Resolved: return "resolved";
    case ResolutionResult::Outcome::ProxiedToIp: return "proxied-to-ip";
    case ResolutionResult::Outcome::NotFound: return "not-found";
  }
  return "?";
}

Hierarchy::Hierarchy(DomainOptions defaults)
  : m_defaults(std::move(defaults))
{
}

Domain&
Hierarchy::addDomain(const ContentName& name)
{
  if (name.empty())
    throw Error(Errc::EmptyName, "domain names must have at least one component");
  if (m_byName.count(name))
    throw Error(Errc::Duplicate, "domain " + std::string(name.toUri()) + " exists");
  Domain* parent = nullptr;
  if (!m_domains.empty()) {
    for (std::size_t k = name.size() - 1; k >= 1 && parent == nullptr; --k) {
      auto it = m_byName.find(name.prefix(k));
      if (it != m_byName.end())
        parent = it->second;
    }
    if (parent == nullptr)
      throw Error(Errc::UnknownDomain, "no parent domain for " + std::string(name.toUri()) + " under " +
                                         std::string(top().name().toUri()));
  }
  auto options = m_defaults;
  options.seed = m_defaults.seed + m_domains.size();
  m_domains.push_back(std::make_unique<Domain>(name, parent, options));
  auto* d = m_domains.back().get();
  if (parent)
    parent->addChild(d);
  m_byName.emplace(name, d);
  return *d;
}

Domain&
Hierarchy::domain(const ContentName& name) const
{
  auto it = m_byName.find(name);
  if (it == m_byName.end())
    throw Error(Errc::UnknownDomain, "no domain " + std::string(name.toUri()));
  return *it->second;
}

Domain&
Hierarchy::top() const
{
  if (m_domains.empty())
    throw Error(Errc::UnknownDomain, "hierarchy is empty");
  return *m_domains.front();
}

std::vector<Domain*>
Hierarchy::domains() const
{
  std::vector<Domain*> out;
  for (const auto& d : m_domains)
    out.push_back(d.get());
  return out;
}

const RegistrationRecord*
Hierarchy::findCommitted(const Identifier& id) const
{
  for (const auto& d : m_domains)
    if (const auto* r = d->findRecord(id))
      return r;
  return nullptr;
}

RegistrationRecord
Hierarchy::registerIdentifier(const ContentName& domainName, const RegisterRequest& request)
{
  auto& d = domain(domainName);
  if (auto reason = m_compliance(request, d))
    throw Error(Errc::ComplianceRejected, request.identifier.toString() + ": " + *reason);
  if (const auto* existing = findCommitted(request.identifier))
    throw Error(Errc::Duplicate, request.identifier.toString() + " is already registered in " +
                                   std::string(existing->domain.toUri()));
  return d.commit(request);
}

ResolutionResult
Hierarchy::resolve(const ContentName& originName, const Identifier& id)
{
  using O = ResolutionResult::Outcome;
  auto& origin = domain(originName);
  ResolutionResult res;
  res.hops.push_back(origin.name());

  if (id.kind() == Identifier::Kind::Ip) {
    if (auto fw = origin.forwardingOf(id)) {
      res.outcome = O::Resolved;
      res.forwarding = fw;
      res.answeredBy = origin.name();
      if (const auto* r = origin.findRecord(id))
        res.record = *r;
    }
    else {
      res.outcome = O::ProxiedToIp;
      res.message = id.toString() + " is not in the local FIB; forwarding through the IP proxy";
    }
    return res;
  }

  std::set<const Domain*> visited{&origin};
  auto answer = [&](const Domain& d) {
    const auto* r = d.findRecord(id);
    if (r == nullptr)
      return false;
    res.outcome = O::Resolved;
    res.record = *r;
    res.forwarding = d.forwardingOf(id);
    res.answeredBy = d.name();
    if (&d != &origin)
      origin.cache(*r);
    return true;
  };
  auto visit = [&](const Domain& d) {
    if (!visited.insert(&d).second)
      return false;
    res.hops.push_back(d.name());
    return answer(d);
  };

  // S1
  if (answer(origin))
    return res;
  if (const auto* r = origin.cached(id)) {
    res.outcome = O::Resolved;
    res.record = *r;
    res.forwarding = r->forwarding;
    res.answeredBy = origin.name();
    res.fromCache = true;
    return res;
  }

  // S2
  for (const Domain* d = origin.parent(); d != nullptr; d = d->parent())
    if (visit(*d))
      return res;

  // S3
  if (id.isContent()) {
    const Domain* cur = &top();
    while (cur != nullptr) {
      const Domain* next = nullptr;
      for (const auto* c : cur->children())
        if (c->name().isPrefixOf(id.content()))
          next = c;
      if (next && visit(*next))
        return res;
      cur = next;
    }
  }
  std::queue<const Domain*> frontier;
  frontier.push(&top());
  while (!frontier.empty()) {
    const auto* d = frontier.front();
    frontier.pop();
    if (visit(*d))
      return res;
    for (const auto* c : d->children())
      frontier.push(c);
  }

  res.outcome = O::NotFound;
  res.message = id.toString() + " is not registered in any of the " + std::to_string(res.hops.size()) +
                " domains searched";
  return res;
}

} // namespace minet::registry
