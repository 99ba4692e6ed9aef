#include "minet/core/identifier.hpp"

#include <doctest.h>

#include <random>

using namespace minet;

namespace {

Errc
errorOf(auto&& fn)
{
  try {
    fn();
  }
  catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::ParseError;
}

std::string
randomToken(std::mt19937_64& rng, std::size_t maxLen)
{
  // Anything but '/' is a legal component byte.
  static constexpr std::string_view alphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.~:%@ ";
  std::uniform_int_distribution<std::size_t> len(1, maxLen);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (auto& c : s)
    c = alphabet[pick(rng)];
  return s;
}

Identifier
randomIdentifier(std::mt19937_64& rng)
{
  switch (rng() % 5) {
    case 0: return Identifier(Identifier::Value(IdentityId{randomToken(rng, 12)}));
    case 1: return Identifier(Identifier::Value(GeoCode{randomToken(rng, 8)}));
    case 2: return Identifier(Identifier::Value(IpAddress::v4(static_cast<std::uint32_t>(rng()))));
    case 3: {
      std::array<std::uint8_t, 16> b{};
      for (auto& x : b)
        x = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : rng());
      return Identifier(Identifier::Value(IpAddress::v6(b)));
    }
    default: {
      ContentName n;
      auto len = 1 + rng() % 8;
      for (std::size_t i = 0; i < len; ++i)
        n = n.append(randomToken(rng, 6));
      return Identifier(n);
    }
  }
}

} // namespace

TEST_CASE("parse identifier schemes")
{
  auto c = Identifier::parse("content:/c1/c2/c3");
  REQUIRE(c.kind() == Identifier::Kind::Content);
  CHECK(c.content().size() == 3);
  CHECK(c.content().component(0) == "c1");
  CHECK(c.content().component(2) == "c3");

  auto ip = Identifier::parse("ip:192.0.2.1");
  REQUIRE(ip.kind() == Identifier::Kind::Ip);
  CHECK(std::get<IpAddress>(ip.value()).toV4() == 0xC0000201u);

  CHECK(Identifier::parse("id:alice").kind() == Identifier::Kind::Identity);
  CHECK(Identifier::parse("geo:CN-44-03").kind() == Identifier::Kind::Geo);
  CHECK(Identifier::parse("ip:2001:db8::1").toString() == "ip:2001:db8::1");
}

TEST_CASE("parse identifier errors")
{
  CHECK(errorOf([] { Identifier::parse("content:/"); }) == Errc::EmptyName);
  CHECK(errorOf([] { Identifier::parse("content:"); }) == Errc::EmptyName);
  CHECK(errorOf([] { Identifier::parse("content:/a//b"); }) == Errc::InvalidComponent);
  CHECK(errorOf([] { Identifier::parse("content:/a/"); }) == Errc::InvalidComponent);
  CHECK(errorOf([] { Identifier::parse("dns:example.com"); }) == Errc::UnknownScheme);
  CHECK(errorOf([] { Identifier::parse("alice"); }) == Errc::UnknownScheme);
  CHECK(errorOf([] { Identifier::parse("ip:300.1.1.1"); }) == Errc::MalformedIp);
  CHECK(errorOf([] { Identifier::parse("ip:1::2::3"); }) == Errc::MalformedIp);
  CHECK(errorOf([] { Identifier::parse("id:"); }) == Errc::ParseError);
  CHECK(errorOf([] { NameComponent("a/b"); }) == Errc::InvalidComponent);
}

TEST_CASE("prefixOf")
{
  auto n = ContentName::parse("/c1/c2/c3");
  CHECK(prefixOf(n, 2).toUri() == "/c1/c2");
  CHECK(prefixOf(n, 3) == n);
  CHECK(prefixOf(n, 1).toUri() == "/c1");
  CHECK(errorOf([] { prefixOf(ContentName::parse("/c1"), 2); }) == Errc::OutOfRange);
  CHECK(errorOf([&] { prefixOf(n, 0); }) == Errc::OutOfRange);
}

TEST_CASE("prefix composition property")
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto n = randomIdentifier(rng);
    if (!n.isContent())
      continue;
    const auto& name = n.content();
    CHECK(prefixOf(name, name.size()) == name);
    for (std::size_t j = 1; j <= name.size(); ++j)
      for (std::size_t i = 1; i <= j; ++i) {
        CHECK(prefixOf(prefixOf(name, j), i) == prefixOf(name, i));
        CHECK(prefixOf(name, i).isPrefixOf(name));
      }
  }
}

TEST_CASE("identifier text round-trips")
{
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    auto id = randomIdentifier(rng);
    auto text = id.toString();
    CAPTURE(text);
    CHECK(Identifier::parse(text) == id);
  }
}

TEST_CASE("content name construction agrees with parsing")
{
  ContentName a{"video", "v1", "seg0"};
  CHECK(a == ContentName::parse("/video/v1/seg0"));
  CHECK(a.append("x").toUri() == "/video/v1/seg0/x");
  CHECK(ContentName{}.toUri() == "/");
  CHECK(ContentName{}.isPrefixOf(a));
  CHECK_FALSE(ContentName::parse("/video/v2").isPrefixOf(a));
  CHECK_FALSE(ContentName::parse("/vid").isPrefixOf(a));
}
