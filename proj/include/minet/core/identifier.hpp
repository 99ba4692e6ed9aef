#ifndef MINET_CORE_IDENTIFIER_HPP
#define MINET_CORE_IDENTIFIER_HPP

#include "minet/core/error.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace minet {

/**
 * One component of a content name. Components are opaque bytes; the only
 * forbidden byte is the separator '/'.
 */
class NameComponent
{
public:
  explicit
  NameComponent(std::string text);

  std::string_view
  text() const noexcept
  {
    return m_text;
  }

  friend bool operator==(const NameComponent&, const NameComponent&) = default;

private:
  std::string m_text;
};

/**
 * Hierarchical content name "/c1/c2/.../cN".
 *
 * The canonical text form is kept alongside the component boundaries so that
 * any prefix can be handed out as a string_view without allocating. This is
 * what the FIB hashes.
 */
class ContentName
{
public:
  /// The zero-length name. Not routable; useful as a placeholder.
  ContentName() = default;

  ContentName(std::initializer_list<std::string_view> components);

  explicit
  ContentName(const std::vector<NameComponent>& components);

  /// Parses "/c1/c2/...". Throws EmptyName for "/" or "" and InvalidComponent
  /// for empty components such as "/a//b" or a trailing slash.
  static ContentName
  parse(std::string_view uri);

  std::size_t
  size() const noexcept
  {
    return m_ends.size();
  }

  bool
  empty() const noexcept
  {
    return m_ends.empty();
  }

  std::string_view
  component(std::size_t i) const;

  /// Canonical text. "/" for the empty name.
  std::string_view
  toUri() const noexcept
  {
    return m_uri.empty() ? std::string_view("/") : std::string_view(m_uri);
  }

  /// Canonical text of the first k components, 1 <= k <= size(). Unchecked.
  std::string_view
  prefixUri(std::size_t k) const noexcept
  {
    return std::string_view(m_uri).substr(0, m_ends[k - 1]);
  }

  /// First k components. Throws OutOfRange unless 1 <= k <= size().
  ContentName
  prefix(std::size_t k) const;

  ContentName
  append(std::string_view component) const;

  bool
  isPrefixOf(const ContentName& other) const noexcept;

  friend bool
  operator==(const ContentName& a, const ContentName& b) noexcept
  {
    return a.m_uri == b.m_uri;
  }

  friend std::strong_ordering
  operator<=>(const ContentName& a, const ContentName& b) noexcept
  {
    return a.m_uri <=> b.m_uri;
  }

private:
  std::string m_uri;
  std::vector<std::uint32_t> m_ends; // end offset of each component in m_uri
};

/// prefixOf(n, k) == n.prefix(k); kept as a free function for call sites that
/// read better that way.
ContentName
prefixOf(const ContentName& name, std::size_t k);

class IpAddress
{
public:
  enum class Family : std::uint8_t { V4, V6 };

  static IpAddress
  parse(std::string_view text);

  static IpAddress
  v4(std::uint32_t hostOrder) noexcept;

  static IpAddress
  v6(const std::array<std::uint8_t, 16>& bytes) noexcept;

  Family
  family() const noexcept
  {
    return m_family;
  }

  /// Host-order value of a v4 address; 0 for v6.
  std::uint32_t
  toV4() const noexcept;

  std::string
  toString() const;

  friend bool operator==(const IpAddress&, const IpAddress&) = default;

private:
  Family m_family = Family::V4;
  std::array<std::uint8_t, 16> m_bytes{};
};

struct IdentityId
{
  std::string value;
  friend bool operator==(const IdentityId&, const IdentityId&) = default;
};

struct GeoCode
{
  std::string value;
  friend bool operator==(const GeoCode&, const GeoCode&) = default;
};

/**
 * A network identifier of one of the four coexisting classes. Text form is
 * "content:/a/b", "id:<opaque>", "geo:<opaque>" or "ip:<address>".
 */
class Identifier
{
public:
  enum class Kind : std::uint8_t { Identity, Content, Geo, Ip };

  using Value = std::variant<IdentityId, ContentName, GeoCode, IpAddress>;

  Identifier(Value value)
    : m_value(std::move(value))
  {
  }

  Identifier(ContentName name)
    : m_value(std::move(name))
  {
  }

  static Identifier
  parse(std::string_view text);

  Kind
  kind() const noexcept
  {
    return static_cast<Kind>(m_value.index());
  }

  bool
  isContent() const noexcept
  {
    return kind() == Kind::Content;
  }

  const ContentName&
  content() const
  {
    return std::get<ContentName>(m_value);
  }

  const Value&
  value() const noexcept
  {
    return m_value;
  }

  std::string
  toString() const;

  friend bool operator==(const Identifier&, const Identifier&) = default;

private:
  Value m_value;
};

inline Identifier
parseIdentifier(std::string_view text)
{
  return Identifier::parse(text);
}

struct ForwardingInfo
{
  std::uint32_t faceId = 0;
  std::optional<std::uint64_t> metric;

  friend bool operator==(const ForwardingInfo&, const ForwardingInfo&) = default;
};

} // namespace minet

template<>
struct std::hash<minet::ContentName>
{
  std::size_t
  operator()(const minet::ContentName& n) const noexcept
  {
    return std::hash<std::string_view>{}(n.toUri());
  }
};

#endif // MINET_CORE_IDENTIFIER_HPP
