#include "minet/core/identifier.hpp"

#include <arpa/inet.h>

#include <cstring>

namespace minet {

namespace {

void
checkComponent(std::string_view text)
{
  if (text.empty())
    throw Error(Errc::InvalidComponent, "empty name component");
  if (text.find('/') != std::string_view::npos)
    throw Error(Errc::InvalidComponent, "component contains '/': " + std::string(text));
}

} // namespace

NameComponent::NameComponent(std::string text)
  : m_text(std::move(text))
{
  checkComponent(m_text);
}

ContentName::ContentName(std::initializer_list<std::string_view> components)
{
  for (auto c : components) {
    checkComponent(c);
    m_uri += '/';
    m_uri += c;
    m_ends.push_back(static_cast<std::uint32_t>(m_uri.size()));
  }
}

ContentName::ContentName(const std::vector<NameComponent>& components)
{
  for (const auto& c : components) {
    m_uri += '/';
    m_uri += c.text();
    m_ends.push_back(static_cast<std::uint32_t>(m_uri.size()));
  }
}

ContentName
ContentName::parse(std::string_view uri)
{
  if (uri.empty() || uri == "/")
    throw Error(Errc::EmptyName, "content name has no components");
  if (uri.front() != '/')
    throw Error(Errc::InvalidComponent, "content name must start with '/': " + std::string(uri));

  ContentName name;
  name.m_uri.assign(uri);
  std::size_t pos = 1;
  while (true) {
    auto next = uri.find('/', pos);
    auto end = next == std::string_view::npos ? uri.size() : next;
    if (end == pos)
      throw Error(Errc::InvalidComponent, "empty component in " + std::string(uri));
    name.m_ends.push_back(static_cast<std::uint32_t>(end));
    if (next == std::string_view::npos)
      break;
    pos = next + 1;
  }
  return name;
}

std::string_view
ContentName::component(std::size_t i) const
{
  if (i >= m_ends.size())
    throw Error(Errc::OutOfRange, "component index " + std::to_string(i));
  std::size_t begin = i == 0 ? 1 : m_ends[i - 1] + 1;
  return std::string_view(m_uri).substr(begin, m_ends[i] - begin);
}

ContentName
ContentName::prefix(std::size_t k) const
{
  if (k < 1 || k > size())
    throw Error(Errc::OutOfRange, "prefix length " + std::to_string(k) + " of " +
                                    std::to_string(size()) + "-component name");
  ContentName p;
  p.m_uri.assign(prefixUri(k));
  p.m_ends.assign(m_ends.begin(), m_ends.begin() + static_cast<std::ptrdiff_t>(k));
  return p;
}

ContentName
ContentName::append(std::string_view comp) const
{
  checkComponent(comp);
  ContentName n = *this;
  n.m_uri += '/';
  n.m_uri += comp;
  n.m_ends.push_back(static_cast<std::uint32_t>(n.m_uri.size()));
  return n;
}

bool
ContentName::isPrefixOf(const ContentName& other) const noexcept
{
  if (size() > other.size())
    return false;
  if (empty())
    return true;
  return other.prefixUri(size()) == m_uri;
}

ContentName
prefixOf(const ContentName& name, std::size_t k)
{
  return name.prefix(k);
}

IpAddress
IpAddress::parse(std::string_view text)
{
  std::string s(text);
  IpAddress a;
  if (s.find(':') != std::string::npos) {
    a.m_family = Family::V6;
    if (inet_pton(AF_INET6, s.c_str(), a.m_bytes.data()) != 1)
      throw Error(Errc::MalformedIp, "bad IPv6 address: " + s);
  }
  else {
    a.m_family = Family::V4;
    if (inet_pton(AF_INET, s.c_str(), a.m_bytes.data()) != 1)
      throw Error(Errc::MalformedIp, "bad IPv4 address: " + s);
  }
  return a;
}

IpAddress
IpAddress::v4(std::uint32_t hostOrder) noexcept
{
  IpAddress a;
  a.m_bytes[0] = static_cast<std::uint8_t>(hostOrder >> 24);
  a.m_bytes[1] = static_cast<std::uint8_t>(hostOrder >> 16);
  a.m_bytes[2] = static_cast<std::uint8_t>(hostOrder >> 8);
  a.m_bytes[3] = static_cast<std::uint8_t>(hostOrder);
  return a;
}

IpAddress
IpAddress::v6(const std::array<std::uint8_t, 16>& bytes) noexcept
{
  IpAddress a;
  a.m_family = Family::V6;
  a.m_bytes = bytes;
  return a;
}

std::uint32_t
IpAddress::toV4() const noexcept
{
  if (m_family != Family::V4)
    return 0;
  return std::uint32_t{m_bytes[0]} << 24 | std::uint32_t{m_bytes[1]} << 16 |
         std::uint32_t{m_bytes[2]} << 8 | std::uint32_t{m_bytes[3]};
}

std::string
IpAddress::toString() const
{
  char buf[INET6_ADDRSTRLEN] = {};
  inet_ntop(m_family == Family::V4 ? AF_INET : AF_INET6, m_bytes.data(), buf, sizeof(buf));
  return buf;
}

Identifier
Identifier::parse(std::string_view text)
{
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::UnknownScheme, "missing scheme in '" + std::string(text) + "'");
  auto scheme = text.substr(0, colon);
  auto rest = text.substr(colon + 1);

  if (scheme == "content")
    return Identifier(ContentName::parse(rest));
  if (scheme == "ip")
    return Identifier(Value(IpAddress::parse(rest)));
  if (scheme == "id" || scheme == "geo") {
    if (rest.empty())
      throw Error(Errc::ParseError, "empty " + std::string(scheme) + " identifier");
    if (scheme == "id")
      return Identifier(Value(IdentityId{std::string(rest)}));
    return Identifier(Value(GeoCode{std::string(rest)}));
  }
  throw Error(Errc::UnknownScheme, "unknown scheme '" + std::string(scheme) + "'");
}

std::string
Identifier::toString() const
{
  struct Visitor
  {
    std::string operator()(const IdentityId& v) const { return "id:" + v.value; }
    std::string operator()(const ContentName& v) const { return "content:" + std::string(v.toUri()); }
    std::string operator()(const GeoCode& v) const { return "geo:" + v.value; }
    std::string operator()(const IpAddress& v) const { return "ip:" + v.toString(); }
  };
  return std::visit(Visitor{}, m_value);
}

} // namespace minet
