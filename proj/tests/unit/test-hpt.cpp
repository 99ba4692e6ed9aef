#include "minet/fib/hpt.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace minet;
using namespace minet::fib;

namespace {

ContentName
N(std::string_view uri)
{
  return ContentName::parse(uri);
}

ForwardingInfo
face(std::uint32_t id)
{
  return ForwardingInfo{id, std::nullopt};
}

// States implied by the definitions alone, given the set of Real names:
// every proper prefix of a Real name is indexed; a non-real entry is Virtual
// iff none of its proper prefixes is Real.
std::map<std::string, EntryState>
expectedStates(const std::map<std::string, ContentName>& real)
{
  std::map<std::string, EntryState> out;
  for (const auto& [uri, name] : real) {
    out[uri] = EntryState::Real;
    for (std::size_t k = 1; k < name.size(); ++k)
      out.emplace(std::string(name.prefixUri(k)), EntryState::Virtual);
  }
  for (auto& [uri, state] : out) {
    if (state == EntryState::Real)
      continue;
    auto name = N(uri);
    for (std::size_t k = 1; k < name.size(); ++k)
      if (real.count(std::string(name.prefixUri(k)))) {
        state = EntryState::SemiVirtual;
        break;
      }
  }
  return out;
}

std::map<std::string, EntryState>
actualStates(const Hpt& fib)
{
  std::map<std::string, EntryState> out;
  fib.forEachEntry([&](std::string_view key, const FibNode& node) { out.emplace(key, node.state); });
  return out;
}

class NameSource
{
public:
  NameSource(std::uint64_t seed, int alphabet, int maxLen)
    : m_rng(seed)
    , m_comp(0, alphabet - 1)
    , m_len(1, maxLen)
  {
  }

  ContentName
  operator()()
  {
    return withLength(m_len(m_rng));
  }

  ContentName
  withLength(std::size_t len)
  {
    ContentName n;
    for (std::size_t i = 0; i < len; ++i)
      n = n.append("c" + std::to_string(m_comp(m_rng)));
    return n;
  }

  std::mt19937_64&
  rng()
  {
    return m_rng;
  }

private:
  std::mt19937_64 m_rng;
  std::uniform_int_distribution<int> m_comp;
  std::uniform_int_distribution<int> m_len;
};

std::uint32_t
probeBound(std::size_t n)
{
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n) + 1))) + 1;
}

} // namespace

TEST_CASE("insert builds virtual fillers")
{
  Hpt fib;
  fib.insert(N("/a"), face(1));
  CHECK(fib.size() == 1);
  CHECK(fib.stateOf(N("/a")) == EntryState::Real);
  CHECK(fib.node(fib.find(N("/a"))->parent).depth == 0);

  Hpt f2;
  f2.insert(N("/c1/c2/c3"), face(1));
  CHECK(f2.stateOf(N("/c1")) == EntryState::Virtual);
  CHECK(f2.stateOf(N("/c1/c2")) == EntryState::Virtual);
  CHECK(f2.stateOf(N("/c1/c2/c3")) == EntryState::Real);
  CHECK_FALSE(f2.find(N("/c1"))->forwarding);

  f2.insert(N("/c1"), face(2));
  CHECK(f2.stateOf(N("/c1")) == EntryState::Real);
  CHECK(f2.stateOf(N("/c1/c2")) == EntryState::SemiVirtual);
  CHECK(f2.stateOf(N("/c1/c2/c3")) == EntryState::Real);
  CHECK(f2.find(N("/c1/c2/c3"))->forwarding == face(1));
  CHECK(f2.verifyIntegrity().empty());
}

TEST_CASE("re-inserting a real name updates forwarding only")
{
  Hpt fib;
  fib.insert(N("/a/b"), face(1));
  fib.insert(N("/a/b"), face(9));
  CHECK(fib.size() == 2);
  CHECK(fib.realCount() == 1);
  CHECK(fib.find(N("/a/b"))->forwarding == face(9));
}

TEST_CASE("fillers under a virtual ancestor stay virtual")
{
  Hpt fib;
  fib.insert(N("/a/b"), face(1));
  fib.insert(N("/a/x/y/z"), face(2));
  CHECK(fib.stateOf(N("/a/x")) == EntryState::Virtual);
  CHECK(fib.stateOf(N("/a/x/y")) == EntryState::Virtual);

  fib.insert(N("/a/x"), face(3));
  CHECK(fib.stateOf(N("/a/x/y")) == EntryState::SemiVirtual);
  fib.insert(N("/a/x/y/q/r"), face(4));
  CHECK(fib.stateOf(N("/a/x/y/q")) == EntryState::SemiVirtual);
  CHECK(fib.verifyIntegrity().empty());
}

TEST_CASE("delete")
{
  auto build = [] {
    Hpt fib;
    fib.insert(N("/c1/c2/c3"), face(3));
    fib.insert(N("/c1"), face(1));
    REQUIRE(fib.stateOf(N("/c1/c2")) == EntryState::SemiVirtual);
    return fib;
  };

  SUBCASE("absent name is a no-op")
  {
    auto fib = build();
    auto before = actualStates(fib);
    fib.erase(N("/x"));
    fib.erase(N("/c1/c2"));
    CHECK(actualStates(fib) == before);
  }

  SUBCASE("leaf removal prunes non-real ancestors")
  {
    auto fib = build();
    fib.erase(N("/c1/c2/c3"));
    CHECK(fib.size() == 1);
    CHECK(fib.stateOf(N("/c1")) == EntryState::Real);
    CHECK_FALSE(fib.find(N("/c1/c2")));
    CHECK(fib.find(N("/c1"))->isLeaf());
  }

  SUBCASE("inner removal under root demotes breadth-first")
  {
    auto fib = build();
    fib.erase(N("/c1"));
    CHECK(fib.stateOf(N("/c1")) == EntryState::Virtual);
    CHECK(fib.stateOf(N("/c1/c2")) == EntryState::Virtual);
    CHECK(fib.stateOf(N("/c1/c2/c3")) == EntryState::Real);
    CHECK_FALSE(fib.find(N("/c1"))->forwarding);
    CHECK(fib.verifyIntegrity().empty());
  }

  SUBCASE("inner removal under a real parent becomes semi-virtual")
  {
    auto fib = build();
    fib.insert(N("/c1/c2"), face(2));
    fib.erase(N("/c1/c2"));
    CHECK(fib.stateOf(N("/c1/c2")) == EntryState::SemiVirtual);
    CHECK(fib.verifyIntegrity().empty());
  }

  SUBCASE("demotion stops at real descendants")
  {
    Hpt fib;
    fib.insert(N("/a"), face(1));
    fib.insert(N("/a/b/c"), face(2));
    fib.insert(N("/a/b/c/d/e"), face(3));
    fib.erase(N("/a"));
    CHECK(fib.stateOf(N("/a/b")) == EntryState::Virtual);
    CHECK(fib.stateOf(N("/a/b/c/d")) == EntryState::SemiVirtual);
    CHECK(fib.verifyIntegrity().empty());
  }
}

TEST_CASE("lpm lookup")
{
  SUBCASE("empty table")
  {
    Hpt fib;
    for (std::size_t n = 1; n <= 12; ++n) {
      NameSource src(n, 5, 1);
      auto r = fib.lookupLpm(src.withLength(n));
      CHECK_FALSE(r.isHit());
      CHECK(r.probes <= static_cast<std::uint32_t>(std::ceil(std::log2(n + 1.0))));
    }
  }

  SUBCASE("longest real prefix")
  {
    Hpt fib;
    fib.insert(N("/a/b"), face(7));
    REQUIRE(fib.stateOf(N("/a")) == EntryState::Virtual);
    auto r = fib.lookupLpm(N("/a/b/c/d"));
    REQUIRE(r.isHit());
    CHECK(r.hit->matchedPrefix == N("/a/b"));
    CHECK(r.hit->forwarding == face(7));
    CHECK(r.probes == 2);
  }

  SUBCASE("semi-virtual backtracking")
  {
    Hpt fib;
    fib.insert(N("/a/b/c"), face(3));
    fib.insert(N("/a"), face(1));
    REQUIRE(fib.stateOf(N("/a/b")) == EntryState::SemiVirtual);
    auto r = fib.lookupLpm(N("/a/b/x"));
    REQUIRE(r.isHit());
    CHECK(r.hit->matchedPrefix == N("/a"));
    CHECK(r.hit->forwarding == face(1));
    CHECK(sameOutcome(r, fib.lookupOracle(N("/a/b/x"))));
  }

  SUBCASE("virtual terminal is a miss")
  {
    Hpt fib;
    fib.insert(N("/a/b/c"), face(3));
    CHECK_FALSE(fib.lookupLpm(N("/a/b/x")).isHit());
    CHECK_FALSE(fib.lookupLpm(N("/a")).isHit());
  }
}

TEST_CASE("linear oracle")
{
  Hpt fib;
  NameSource src(3, 5, 1);
  auto miss = fib.lookupOracle(src.withLength(6));
  CHECK_FALSE(miss.isHit());
  CHECK(miss.probes == 6);

  fib.insert(N("/a"), face(1));
  auto hit = fib.lookupOracle(N("/a/b"));
  REQUIRE(hit.isHit());
  CHECK(hit.hit->matchedPrefix == N("/a"));
  CHECK(hit.probes == 2);
}

TEST_CASE("probe counter accumulates")
{
  Hpt fib;
  fib.insert(N("/a/b"), face(1));
  auto r1 = fib.lookupLpm(N("/a/b/c"));
  auto r2 = fib.lookupOracle(N("/a/b/c"));
  CHECK(fib.totalProbes() == r1.probes + r2.probes);
}

TEST_CASE("random operations agree with the definitional model")
{
  NameSource src(2024, 4, 6);
  auto& rng = src.rng();
  Hpt fib;
  std::map<std::string, ContentName> real;
  std::vector<ContentName> inserted;

  for (int op = 0; op < 10000; ++op) {
    bool doInsert = inserted.empty() || rng() % 100 < 60;
    if (doInsert) {
      auto n = src();
      fib.insert(n, face(static_cast<std::uint32_t>(op)));
      real.insert_or_assign(std::string(n.toUri()), n);
      inserted.push_back(n);
    }
    else {
      auto n = (rng() % 4 == 0) ? src() : inserted[rng() % inserted.size()];
      fib.erase(n);
      real.erase(std::string(n.toUri()));
    }

    if (op % 97 == 0 || op == 9999) {
      auto report = fib.verifyIntegrity();
      if (!report.empty())
        FAIL("violation after op ", op, ": ", report.front().name, " ", report.front().detail);
      REQUIRE(actualStates(fib) == expectedStates(real));
      REQUIRE(fib.realCount() == real.size());
    }
  }

  std::size_t mismatches = 0;
  std::size_t falseNegatives = 0;
  std::size_t overBound = 0;
  for (int q = 0; q < 10000; ++q) {
    auto query = src.withLength(1 + rng() % 10);
    auto lpm = fib.lookupLpm(query);
    auto lin = fib.lookupOracle(query);
    mismatches += !sameOutcome(lpm, lin);
    bool anyReal = false;
    for (std::size_t k = 1; k <= query.size(); ++k)
      anyReal = anyReal || real.count(std::string(query.prefixUri(k)));
    falseNegatives += anyReal && !lpm.isHit();
    overBound += lpm.probes > probeBound(query.size());
    if (!lin.isHit())
      CHECK(lin.probes == query.size());
  }
  CHECK(mismatches == 0);
  CHECK(falseNegatives == 0);
  CHECK(overBound == 0);
}

TEST_CASE("insert then delete of a non-real name is query-equivalent")
{
  NameSource src(99, 3, 5);
  auto& rng = src.rng();
  for (int trial = 0; trial < 200; ++trial) {
    Hpt base;
    for (int i = 0; i < 30; ++i)
      base.insert(src(), face(static_cast<std::uint32_t>(i)));

    auto n = src();
    if (base.stateOf(n) == EntryState::Real)
      continue;
    Hpt copy = base;
    copy.insert(n, face(1000));
    copy.erase(n);
    CHECK(copy.verifyIntegrity().empty());
    CHECK(actualStates(copy) == actualStates(base));
    for (int q = 0; q < 50; ++q) {
      auto query = src.withLength(1 + rng() % 7);
      CHECK(sameOutcome(copy.lookupLpm(query), base.lookupLpm(query)));
    }
  }
}

TEST_CASE("bind and translate")
{
  Hpt fib;
  fib.insert(N("/c1/c2"), face(1));
  auto alice = Identifier::parse("id:alice");
  fib.bindIdentifier(N("/c1/c2"), alice);
  CHECK(fib.translate(alice) == N("/c1/c2"));
  CHECK(fib.translate(Identifier(N("/c1/c2"))) == N("/c1/c2"));
  CHECK(fib.find(N("/c1/c2"))->bindings.size() == 1);

  auto code = [](auto&& fn) {
    try {
      fn();
    }
    catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  CHECK(code([&] { fib.bindIdentifier(N("/c1"), Identifier::parse("geo:x")); }) == Errc::UnknownContent);
  CHECK(code([&] { fib.bindIdentifier(N("/zz"), Identifier::parse("geo:x")); }) == Errc::UnknownContent);
  CHECK(code([&] { fib.bindIdentifier(N("/c1/c2"), alice); }) == Errc::DuplicateBinding);
  CHECK(code([&] { fib.translate(Identifier::parse("id:bob")); }) == Errc::NotBound);
  CHECK(code([&] { fib.bindIdentifier(N("/c1/c2"), Identifier(N("/q"))); }) == Errc::InvalidState);

  fib.erase(N("/c1/c2"));
  CHECK(code([&] { fib.translate(alice); }) == Errc::NotBound);
  CHECK(fib.verifyIntegrity().empty());
}

TEST_CASE("forced state is reported")
{
  Hpt fib;
  fib.insert(N("/a/b/c"), face(1));
  fib.forceState(N("/a/b"), EntryState::SemiVirtual);
  auto report = fib.verifyIntegrity();
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == Violation::Kind::StateCorrectness);
  CHECK(report[0].name == "/a/b");
}
