#include "minet/fib/hpt.hpp"

#include <algorithm>
#include <deque>

namespace minet::fib {

std::string_view
to_string(EntryState state) noexcept
{
  switch (state) {
    case EntryState::Real: return "real";
    case EntryState::Virtual: return "virtual";
    case EntryState::SemiVirtual: return "semi-virtual";
  }
  return "?";
}

std::optional<EntryState>
parseEntryState(std::string_view text) noexcept
{
  if (text == "real")
    return EntryState::Real;
  if (text == "virtual")
    return EntryState::Virtual;
  if (text == "semi-virtual")
    return EntryState::SemiVirtual;
  return std::nullopt;
}

std::string_view
to_string(Violation::Kind kind) noexcept
{
  switch (kind) {
    case Violation::Kind::PrefixClosure: return "PrefixClosure";
    case Violation::Kind::StateCorrectness: return "StateCorrectness";
    case Violation::Kind::NonRealLeaf: return "NonRealLeaf";
    case Violation::Kind::ForwardingPresence: return "ForwardingPresence";
    case Violation::Kind::IndexConsistency: return "IndexConsistency";
    case Violation::Kind::TreeLinks: return "TreeLinks";
    case Violation::Kind::Binding: return "Binding";
  }
  return "?";
}

Hpt::Hpt()
{
  m_nodes.emplace_back(); // root sentinel, never indexed
}

Hpt::Hpt(const Hpt& other) = default;
Hpt& Hpt::operator=(const Hpt& other) = default;

Hpt::Hpt(Hpt&& other) noexcept
  : m_nodes(std::move(other.m_nodes))
  , m_free(std::move(other.m_free))
  , m_index(std::move(other.m_index))
  , m_altIndex(std::move(other.m_altIndex))
  , m_realCount(other.m_realCount)
  , m_probes(other.m_probes)
{
  other.m_nodes.assign(1, FibNode{});
  other.m_realCount = 0;
}

Hpt&
Hpt::operator=(Hpt&& other) noexcept
{
  if (this != &other) {
    m_nodes = std::move(other.m_nodes);
    m_free = std::move(other.m_free);
    m_index = std::move(other.m_index);
    m_altIndex = std::move(other.m_altIndex);
    m_realCount = other.m_realCount;
    m_probes = other.m_probes;
    other.m_nodes.assign(1, FibNode{});
    other.m_realCount = 0;
  }
  return *this;
}

NodeId
Hpt::findId(std::string_view key) const
{
  auto it = m_index.find(key);
  return it == m_index.end() ? NO_NODE : it->second;
}

NodeId
Hpt::allocate(std::string_view component, std::uint32_t depth)
{
  NodeId id;
  if (!m_free.empty()) {
    id = m_free.back();
    m_free.pop_back();
    m_nodes[id] = FibNode{};
  }
  else {
    id = static_cast<NodeId>(m_nodes.size());
    m_nodes.emplace_back();
  }
  m_nodes[id].component.assign(component);
  m_nodes[id].depth = depth;
  return id;
}

void
Hpt::release(NodeId id)
{
  m_nodes[id] = FibNode{};
  m_free.push_back(id);
}

void
Hpt::link(NodeId child, NodeId parent)
{
  auto& c = m_nodes[child];
  auto& p = m_nodes[parent];
  c.parent = parent;
  c.prevSibling = NO_NODE;
  c.nextSibling = p.firstChild;
  if (p.firstChild != NO_NODE)
    m_nodes[p.firstChild].prevSibling = child;
  p.firstChild = child;
}

void
Hpt::unlink(NodeId child)
{
  auto& c = m_nodes[child];
  if (c.prevSibling != NO_NODE)
    m_nodes[c.prevSibling].nextSibling = c.nextSibling;
  else
    m_nodes[c.parent].firstChild = c.nextSibling;
  if (c.nextSibling != NO_NODE)
    m_nodes[c.nextSibling].prevSibling = c.prevSibling;
  c.parent = c.prevSibling = c.nextSibling = NO_NODE;
}

void
Hpt::dropBindings(NodeId id)
{
  for (const auto& b : m_nodes[id].bindings)
    m_altIndex.erase(b.toString());
  m_nodes[id].bindings.clear();
}

void
Hpt::reserve(std::size_t nodeCount)
{
  m_nodes.reserve(nodeCount + 1);
}

void
Hpt::insert(const ContentName& name, const ForwardingInfo& fw)
{
  const std::size_t n = name.size();
  if (n == 0)
    throw Error(Errc::EmptyName, "cannot insert the empty name");

  auto [slot, fresh] = m_index.try_emplace(name.toUri(), NO_NODE);
  if (!fresh) {
    auto& e = m_nodes[slot->second];
    if (e.state == EntryState::Real) {
      e.forwarding = fw;
      return;
    }
    e.state = EntryState::Real;
    e.forwarding = fw;
    ++m_realCount;
    // Every Virtual entry below now has a Real prefix. Nothing under a
    // non-Virtual entry can be Virtual, so the walk stops there.
    std::vector<NodeId> stack;
    for (NodeId c = e.firstChild; c != NO_NODE; c = m_nodes[c].nextSibling)
      stack.push_back(c);
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      if (m_nodes[cur].state != EntryState::Virtual)
        continue;
      m_nodes[cur].state = EntryState::SemiVirtual;
      for (NodeId c = m_nodes[cur].firstChild; c != NO_NODE; c = m_nodes[c].nextSibling)
        stack.push_back(c);
    }
    return;
  }

  NodeId leaf = allocate(name.component(n - 1), static_cast<std::uint32_t>(n));
  slot->second = leaf;
  m_nodes[leaf].state = EntryState::Real;
  m_nodes[leaf].forwarding = fw;
  ++m_realCount;

  std::vector<NodeId> created; // new non-real entries, deepest first
  NodeId child = leaf;
  for (std::size_t i = n - 1; i >= 1; --i) {
    auto [it, added] = m_index.try_emplace(name.prefixUri(i), NO_NODE);
    if (!added) {
      NodeId existing = it->second;
      link(child, existing);
      auto fill = m_nodes[existing].state == EntryState::Virtual ? EntryState::Virtual
                                                                 : EntryState::SemiVirtual;
      for (NodeId c : created)
        m_nodes[c].state = fill;
      return;
    }
    NodeId e = allocate(name.component(i - 1), static_cast<std::uint32_t>(i));
    it->second = e;
    link(child, e);
    created.push_back(e);
    child = e;
  }
  link(child, ROOT);
  for (NodeId c : created)
    m_nodes[c].state = EntryState::Virtual;
}

void
Hpt::erase(const ContentName& name)
{
  if (name.empty())
    return;
  NodeId id = findId(name.toUri());
  if (id == NO_NODE || m_nodes[id].state != EntryState::Real)
    return;

  dropBindings(id);
  --m_realCount;

  if (!m_nodes[id].isLeaf()) {
    auto& e = m_nodes[id];
    e.forwarding.reset();
    NodeId parent = e.parent;
    if (parent != ROOT && m_nodes[parent].state != EntryState::Virtual) {
      e.state = EntryState::SemiVirtual;
      return;
    }
    // No Real prefix remains above: demote this entry and the SemiVirtual
    // entries that depended on it, stopping at Real descendants.
    std::deque<NodeId> queue{id};
    while (!queue.empty()) {
      NodeId cur = queue.front();
      queue.pop_front();
      m_nodes[cur].state = EntryState::Virtual;
      for (NodeId c = m_nodes[cur].firstChild; c != NO_NODE; c = m_nodes[c].nextSibling)
        if (m_nodes[c].state == EntryState::SemiVirtual)
          queue.push_back(c);
    }
    return;
  }

  NodeId parent = m_nodes[id].parent;
  unlink(id);
  m_index.erase(m_index.find(name.toUri()));
  release(id);

  for (std::size_t i = name.size() - 1; i >= 1; --i) {
    NodeId cur = parent;
    auto& e = m_nodes[cur];
    if (e.state == EntryState::Real || !e.isLeaf())
      return;
    parent = e.parent;
    unlink(cur);
    m_index.erase(m_index.find(name.prefixUri(i)));
    release(cur);
  }
}

LookupResult
Hpt::makeHit(const ContentName& query, NodeId id, std::uint32_t probes) const
{
  const auto& e = m_nodes[id];
  LookupResult r;
  r.probes = probes;
  r.hit = LookupResult::Hit{query.prefix(e.depth), *e.forwarding};
  return r;
}

LookupResult
Hpt::lookupLpm(const ContentName& name) const
{
  // Membership is monotone in prefix length, so the longest indexed prefix
  // is found by a plain lower/upper bound search.
  std::size_t lo = 1;
  std::size_t hi = name.size();
  std::uint32_t probes = 0;
  NodeId last = NO_NODE;
  while (lo <= hi) {
    std::size_t mid = (lo + hi) / 2;
    ++probes;
    NodeId id = findId(name.prefixUri(mid));
    if (id != NO_NODE) {
      last = id;
      lo = mid + 1;
    }
    else {
      hi = mid - 1;
    }
  }
  m_probes.value.fetch_add(probes, std::memory_order_relaxed);

  if (last == NO_NODE)
    return LookupResult{std::nullopt, probes};

  switch (m_nodes[last].state) {
    case EntryState::Real:
      return makeHit(name, last, probes);
    case EntryState::Virtual:
      return LookupResult{std::nullopt, probes};
    case EntryState::SemiVirtual: {
      NodeId cur = m_nodes[last].parent;
      while (cur != ROOT && m_nodes[cur].state != EntryState::Real)
        cur = m_nodes[cur].parent;
      if (cur == ROOT) // only reachable on a corrupted table
        return LookupResult{std::nullopt, probes};
      return makeHit(name, cur, probes);
    }
  }
  return LookupResult{std::nullopt, probes};
}

LookupResult
Hpt::lookupOracle(const ContentName& name) const
{
  std::uint32_t probes = 0;
  for (std::size_t len = name.size(); len >= 1; --len) {
    ++probes;
    NodeId id = findId(name.prefixUri(len));
    if (id != NO_NODE && m_nodes[id].state == EntryState::Real) {
      m_probes.value.fetch_add(probes, std::memory_order_relaxed);
      return makeHit(name, id, probes);
    }
  }
  m_probes.value.fetch_add(probes, std::memory_order_relaxed);
  return LookupResult{std::nullopt, probes};
}

void
Hpt::bindIdentifier(const ContentName& content, const Identifier& alt)
{
  if (alt.isContent())
    throw Error(Errc::InvalidState, "content identifiers route without a binding");
  NodeId id = content.empty() ? NO_NODE : findId(content.toUri());
  if (id == NO_NODE || m_nodes[id].state != EntryState::Real)
    throw Error(Errc::UnknownContent, std::string(content.toUri()) + " is not a real entry");
  auto key = alt.toString();
  if (m_altIndex.contains(key))
    throw Error(Errc::DuplicateBinding, key + " is already bound");
  m_nodes[id].bindings.push_back(alt);
  m_altIndex.emplace(std::move(key), id);
}

ContentName
Hpt::translate(const Identifier& alt) const
{
  if (alt.isContent())
    return alt.content();
  auto it = m_altIndex.find(alt.toString());
  if (it == m_altIndex.end())
    throw Error(Errc::NotBound, alt.toString());
  return nameOf(it->second);
}

const FibNode*
Hpt::find(const ContentName& name) const
{
  if (name.empty())
    return nullptr;
  NodeId id = findId(name.toUri());
  return id == NO_NODE ? nullptr : &m_nodes[id];
}

std::optional<EntryState>
Hpt::stateOf(const ContentName& name) const
{
  if (auto* e = find(name))
    return e->state;
  return std::nullopt;
}

ContentName
Hpt::nameOf(NodeId id) const
{
  std::vector<std::string_view> parts;
  for (NodeId cur = id; cur != ROOT && cur != NO_NODE; cur = m_nodes[cur].parent)
    parts.push_back(m_nodes[cur].component);
  std::string uri;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    uri += '/';
    uri += *it;
  }
  return ContentName::parse(uri);
}

void
Hpt::forceState(const ContentName& name, EntryState state)
{
  NodeId id = name.empty() ? NO_NODE : findId(name.toUri());
  if (id == NO_NODE)
    throw Error(Errc::UnknownContent, std::string(name.toUri()));
  m_nodes[id].state = state;
}

std::vector<Violation>
Hpt::verifyIntegrity() const
{
  using K = Violation::Kind;
  std::vector<Violation> out;
  std::vector<bool> reached(m_nodes.size(), false);
  std::size_t visited = 0;

  struct Frame
  {
    NodeId id;
    std::string name;
    bool realAbove;
  };
  std::vector<Frame> stack;
  auto pushChildren = [&](NodeId parent, const std::string& parentName, bool realAbove) {
    NodeId prev = NO_NODE;
    for (NodeId c = m_nodes[parent].firstChild; c != NO_NODE; c = m_nodes[c].nextSibling) {
      const auto& n = m_nodes[c];
      std::string name = parentName + "/" + n.component;
      if (n.parent != parent || n.prevSibling != prev)
        out.push_back({K::TreeLinks, name, "parent or sibling link mismatch"});
      if (n.depth != m_nodes[parent].depth + 1)
        out.push_back({K::TreeLinks, name, "depth mismatch"});
      if (reached[c]) {
        out.push_back({K::TreeLinks, name, "node reachable twice"});
        return;
      }
      stack.push_back({c, std::move(name), realAbove});
      prev = c;
    }
  };

  pushChildren(ROOT, "", false);
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (reached[f.id])
      continue;
    reached[f.id] = true;
    ++visited;
    const auto& e = m_nodes[f.id];

    if (auto it = m_index.find(f.name); it == m_index.end() || it->second != f.id)
      out.push_back({K::IndexConsistency, f.name, "tree node not indexed under its full name"});

    bool real = e.state == EntryState::Real;
    if (real != e.forwarding.has_value())
      out.push_back({K::ForwardingPresence, f.name,
                     real ? "real entry without forwarding" : "non-real entry with forwarding"});
    if (!real) {
      auto expected = f.realAbove ? EntryState::SemiVirtual : EntryState::Virtual;
      if (e.state != expected)
        out.push_back({K::StateCorrectness, f.name,
                       "is " + std::string(to_string(e.state)) + ", expected " +
                         std::string(to_string(expected))});
      if (e.isLeaf())
        out.push_back({K::NonRealLeaf, f.name, "non-real entry has no children"});
      if (!e.bindings.empty())
        out.push_back({K::Binding, f.name, "bindings on a non-real entry"});
    }
    for (const auto& b : e.bindings) {
      auto it = m_altIndex.find(b.toString());
      if (it == m_altIndex.end() || it->second != f.id)
        out.push_back({K::Binding, f.name, b.toString() + " missing from the translation index"});
    }
    pushChildren(f.id, f.name, f.realAbove || real);
  }

  for (const auto& [key, id] : m_index) {
    if (id == ROOT || id >= m_nodes.size() || !reached[id])
      out.push_back({K::IndexConsistency, key, "indexed entry not reachable from the root"});
    auto slash = key.rfind('/');
    if (slash != 0 && slash != std::string::npos &&
        m_index.find(std::string_view(key).substr(0, slash)) == m_index.end())
      out.push_back({K::PrefixClosure, key, "proper prefix is not indexed"});
  }
  if (visited != m_index.size())
    out.push_back({K::IndexConsistency, "/",
                   "tree has " + std::to_string(visited) + " nodes, index has " +
                     std::to_string(m_index.size())});

  for (const auto& [key, id] : m_altIndex) {
    if (id >= m_nodes.size() || !reached[id] || m_nodes[id].state != EntryState::Real)
      out.push_back({K::Binding, key, "translation target is not a real entry"});
  }
  return out;
}

} // namespace minet::fib
