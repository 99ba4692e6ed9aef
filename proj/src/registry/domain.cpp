#include "minet/registry/domain.hpp"

#include "minet/apov/serialization.hpp"
#include "minet/core/error.hpp"

#include <numeric>

namespace minet::registry {

namespace {

std::uint64_t
splitmix(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<apov::NodeId>
allSupervisors(std::uint32_t n)
{
  std::vector<apov::NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

std::string
fileStem(const ContentName& name)
{
  std::string stem;
  for (std::size_t i = 0; i < name.size(); ++i)
    stem += (i ? "." : "") + std::string(name.component(i));
  return stem.empty() ? "root" : stem;
}

} // namespace

std::optional<std::string>
defaultCompliance(const RegisterRequest& request, const Domain&)
{
  if (request.owner.kind() != Identifier::Kind::Identity)
    return "owner must be an identity identifier";
  if (request.identifier.isContent()) {
    if (request.identifier.content().empty())
      return "content name must be non-empty";
    if (request.boundTo)
      return "content identifiers are not bound";
  }
  else if (request.identifier.kind() == Identifier::Kind::Ip && !request.boundTo) {
    return "IP identifiers must be bound to a content entry";
  }
  if (request.boundTo && request.boundTo->empty())
    return "binding target must be non-empty";
  return std::nullopt;
}

Domain::Domain(ContentName name, Domain* parent, DomainOptions options)
  : m_name(std::move(name))
  , m_parent(parent)
  , m_options(options)
  , m_auth("domain:" + std::string(m_name.toUri()))
  , m_chain([&] {
    if (options.supervisors < 2)
      throw Error(Errc::ConfigInvalid, "a domain needs at least two supervisors");
    auto ids = allSupervisors(options.supervisors);
    return apov::makeGenesis(ids, splitmix(options.seed));
  }())
{
  m_consensus.nb = 1;
  m_consensus.nc = options.supervisors - 1;
  m_consensus.nbc = 0;
  m_consensus.maxTxs = 1;
  if (options.storeDir)
    m_store = RecordStore(*options.storeDir, fileStem(m_name), options.supervisors);
}

const RegistrationRecord*
Domain::findRecord(const Identifier& id) const
{
  auto it = m_records.find(id.toString());
  return it == m_records.end() ? nullptr : &it->second;
}

std::optional<ForwardingInfo>
Domain::forwardingOf(const Identifier& id) const
{
  const fib::FibNode* node = nullptr;
  if (id.isContent()) {
    node = m_fib.find(id.content());
  }
  else {
    try {
      node = m_fib.find(m_fib.translate(id));
    }
    catch (const Error&) {
      return std::nullopt;
    }
  }
  if (node == nullptr || node->state != fib::EntryState::Real)
    return std::nullopt;
  return node->forwarding;
}

std::uint64_t
Domain::transactionId(const Identifier& id) const
{
  auto d = apov::sha256("registration:" + id.toString());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v = (v << 8) | d[i];
  return v;
}

RegistrationRecord
Domain::commit(const RegisterRequest& request)
{
  auto leader = m_chain.tip().header.nextLeader;
  if (m_offline.count(leader))
    throw Error(Errc::ConsensusFailed, "round leader " + std::to_string(leader) + " of " +
                                         std::string(m_name.toUri()) + " is offline");

  apov::Writer w;
  w.text(request.identifier.toString());
  w.text(request.owner.toString());
  w.text(m_name.toUri());
  w.u32(request.forwarding.faceId);
  auto payload = w.release();
  auto size = static_cast<std::uint32_t>(payload.size());
  apov::Transaction tx{transactionId(request.identifier), std::move(payload), size};

  auto height = m_chain.height() + 1;
  const auto& prev = m_chain.tipDigest();
  std::vector<apov::Block> blocks{apov::makeBlock(leader, {tx}, prev, height, m_consensus.maxTxs)};

  apov::RoundContext ctx;
  ctx.height = height;
  ctx.leader = leader;
  ctx.prevGroupHash = prev;
  ctx.eligibleLeaders = allSupervisors(m_options.supervisors);
  for (auto id : ctx.eligibleLeaders)
    if (id != leader)
      ctx.consortium.push_back(id);
  ctx.seed = splitmix(m_options.seed + height);

  std::vector<apov::VoteMessage> votes;
  auto policy = apov::honestPolicy(prev, m_consensus.maxTxs);
  for (auto voter : ctx.consortium)
    if (!m_offline.count(voter))
      votes.push_back(apov::castValidationVotes(voter, blocks, policy, m_auth));

  apov::BlockGroup group;
  try {
    group = apov::tallyAndSeal(ctx, votes, blocks, m_auth);
  }
  catch (const Error& e) {
    throw Error(Errc::ConsensusFailed, std::string(m_name.toUri()) + ": " + e.what());
  }
  if (group.body.empty())
    throw Error(Errc::ConsensusFailed, "registration of " + request.identifier.toString() + " was voted down");
  auto report = m_chain.append(group, m_consensus, m_auth);
  if (!report.ok())
    throw Error(Errc::ConsensusFailed, "sealed group rejected: " + report.issues.front().detail);

  RegistrationRecord r;
  r.identifier = request.identifier;
  r.owner = request.owner;
  r.domain = m_name;
  r.height = height;
  r.txId = tx.id;
  r.forwarding = request.forwarding;
  r.boundTo = request.boundTo;

  if (request.identifier.isContent()) {
    m_fib.insert(request.identifier.content(), request.forwarding);
  }
  else if (request.boundTo) {
    if (m_fib.stateOf(*request.boundTo) != fib::EntryState::Real)
      m_fib.insert(*request.boundTo, request.forwarding);
    m_fib.bindIdentifier(*request.boundTo, request.identifier);
  }
  m_records.emplace(request.identifier.toString(), r);
  m_store.append(r);
  return r;
}

const RegistrationRecord*
Domain::cached(const Identifier& id) const
{
  auto it = m_cache.find(id.toString());
  return it == m_cache.end() ? nullptr : &it->second;
}

void
Domain::cache(const RegistrationRecord& r)
{
  if (m_options.cacheCapacity == 0)
    return;
  auto key = r.identifier.toString();
  if (m_cache.insert_or_assign(key, r).second)
    m_cacheOrder.push_back(key);
  while (m_cache.size() > m_options.cacheCapacity) {
    m_cache.erase(m_cacheOrder.front());
    m_cacheOrder.pop_front();
  }
}

} // namespace minet::registry
