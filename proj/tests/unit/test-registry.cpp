#include "minet/core/error.hpp"
#include "minet/registry/demo.hpp"
#include "minet/registry/service.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <random>
#include <sstream>

using namespace minet;
using namespace minet::registry;

namespace {

using O = ResolutionResult::Outcome;

const char* const LEVEL1[] = {"/top/cn", "/top/us", "/top/eu"};
const char* const LEVEL2[] = {"gd", "bj", "sh"};

/// /top, three countries, three regions each.
Hierarchy
threeLevels(DomainOptions options = {})
{
  Hierarchy h(options);
  h.addDomain("/top");
  for (const auto* c : LEVEL1)
    h.addDomain(c);
  for (const auto* c : LEVEL1)
    for (const auto* r : LEVEL2)
      h.addDomain(std::string(c) + "/" + r);
  return h;
}

RegisterRequest
request(std::string_view id, std::string_view owner = "id:alice", std::uint32_t face = 1)
{
  return {Identifier::parse(id), Identifier::parse(owner), {face, std::nullopt}, std::nullopt};
}

std::vector<std::string>
uris(const std::vector<ContentName>& names)
{
  std::vector<std::string> out;
  for (const auto& n : names)
    out.emplace_back(n.toUri());
  return out;
}

Errc
errorOf(const std::function<void()>& f)
{
  try {
    f();
  }
  catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::ParseError;
}

ContentName
N(std::string_view uri)
{
  return ContentName::parse(uri);
}

} // namespace

TEST_CASE("hierarchy construction")
{
  auto h = threeLevels();
  CHECK(h.size() == 13);
  CHECK(h.top().name() == N("/top"));
  CHECK(h.domain(N("/top/cn/gd")).parent() == &h.domain(N("/top/cn")));
  CHECK(h.top().children().size() == 3);
  CHECK(errorOf([&] { h.addDomain("/elsewhere"); }) == Errc::UnknownDomain);
  CHECK(errorOf([&] { h.addDomain("/top/cn"); }) == Errc::Duplicate);
  CHECK(errorOf([&] { h.domain(N("/top/xx")); }) == Errc::UnknownDomain);
  CHECK(h.addDomain("/top/cn/gd/sz/x").parent() == &h.domain(N("/top/cn/gd")));
  CHECK(errorOf([] { Hierarchy({2, 1, 0, std::nullopt}).addDomain("/"); }) == Errc::EmptyName);
  CHECK(errorOf([] { Hierarchy({1, 1, 0, std::nullopt}).addDomain("/a"); }) == Errc::ConfigInvalid);
}

TEST_CASE("registration is one consensus round")
{
  auto h = threeLevels();
  auto& cn = h.domain(N("/top/cn"));
  auto r = h.registerIdentifier(cn.name(), request("content:/video/v1"));
  CHECK(r.status == RegistrationRecord::Status::Committed);
  CHECK(r.height == 1);
  CHECK(r.domain == cn.name());
  CHECK(cn.chain().height() == 1);
  CHECK(cn.chain().findTransaction(r.txId) == std::optional<std::uint64_t>(1));
  CHECK(cn.chain().at(1).body.size() == 1);
  CHECK(cn.chain().at(1).header.voteMessages.size() == 3);
  CHECK(cn.chain().verifyLinkage());
  CHECK(cn.fib().stateOf(N("/video/v1")) == fib::EntryState::Real);

  auto local = h.resolve(cn.name(), Identifier::parse("content:/video/v1"));
  CHECK(local.outcome == O::Resolved);
  CHECK(uris(local.hops) == std::vector<std::string>{"/top/cn"});
  CHECK(local.record == r);
  CHECK(local.forwarding == ForwardingInfo{1, std::nullopt});

  auto r2 = h.registerIdentifier(cn.name(), request("content:/video/v2"));
  CHECK(r2.height == 2);
  CHECK(cn.chain().at(2).header.prevGroupHash == cn.chain().digestAt(1));
}

TEST_CASE("duplicates are rejected in every domain")
{
  auto h = threeLevels();
  h.registerIdentifier(N("/top/cn/gd"), request("id:bob-laptop"));
  for (auto* d : h.domains()) {
    auto height = d->chain().height();
    CHECK(errorOf([&] { h.registerIdentifier(d->name(), request("id:bob-laptop", "id:mallory")); }) ==
          Errc::Duplicate);
    CHECK(d->chain().height() == height);
  }
}

TEST_CASE("compliance review happens before consensus")
{
  auto h = threeLevels();
  auto& us = h.domain(N("/top/us"));
  CHECK(errorOf([&] { h.registerIdentifier(us.name(), request("content:/x", "geo:somewhere")); }) ==
        Errc::ComplianceRejected);
  CHECK(errorOf([&] { h.registerIdentifier(us.name(), request("ip:203.0.113.9")); }) == Errc::ComplianceRejected);
  CHECK(us.chain().height() == 0);
  CHECK(us.recordCount() == 0);

  h.setCompliance([](const RegisterRequest& r, const Domain& d) -> std::optional<std::string> {
    if (auto base = defaultCompliance(r, d))
      return base;
    if (r.identifier.isContent() && !d.name().isPrefixOf(r.identifier.content()))
      return "content must live under the registering domain";
    return std::nullopt;
  });
  CHECK(errorOf([&] { h.registerIdentifier(us.name(), request("content:/top/cn/x")); }) ==
        Errc::ComplianceRejected);
  CHECK(h.registerIdentifier(us.name(), request("content:/top/us/x")).height == 1);
  CHECK(errorOf([&] { h.registerIdentifier(N("/top/nowhere"), request("content:/q")); }) == Errc::UnknownDomain);
}

TEST_CASE("a stalled round commits nothing")
{
  auto h = threeLevels();
  auto& eu = h.domain(N("/top/eu"));
  auto leader = eu.chain().tip().header.nextLeader;
  eu.setOffline({(leader + 1) % 4});
  CHECK(errorOf([&] { h.registerIdentifier(eu.name(), request("content:/a")); }) == Errc::ConsensusFailed);
  eu.setOffline({leader});
  CHECK(errorOf([&] { h.registerIdentifier(eu.name(), request("content:/a")); }) == Errc::ConsensusFailed);
  CHECK(eu.chain().height() == 0);
  CHECK(eu.recordCount() == 0);
  CHECK(h.resolve(eu.name(), Identifier::parse("content:/a")).outcome == O::NotFound);

  eu.setOffline({});
  CHECK(h.registerIdentifier(eu.name(), request("content:/a")).height == 1);
}

TEST_CASE("resolution walks up then down")
{
  auto h = threeLevels();
  h.registerIdentifier(N("/top/cn/gd"), request("content:/top/cn/gd/video/v1", "id:alice", 7));

  auto res = h.resolve(N("/top/us"), Identifier::parse("content:/top/cn/gd/video/v1"));
  CHECK(res.outcome == O::Resolved);
  CHECK(uris(res.hops) == std::vector<std::string>{"/top/us", "/top", "/top/cn", "/top/cn/gd"});
  CHECK(res.answeredBy == N("/top/cn/gd"));
  CHECK(res.forwarding->faceId == 7);
  CHECK_FALSE(res.fromCache);

  auto again = h.resolve(N("/top/us"), Identifier::parse("content:/top/cn/gd/video/v1"));
  CHECK(again.fromCache);
  CHECK(uris(again.hops) == std::vector<std::string>{"/top/us"});
  CHECK(again.record == res.record);

  auto deep = h.resolve(N("/top/cn/bj"), Identifier::parse("content:/top/cn/gd/video/v1"));
  CHECK(uris(deep.hops) == std::vector<std::string>{"/top/cn/bj", "/top/cn", "/top", "/top/cn/gd"});

  // No carried domain path: breadth-first below the top.
  h.registerIdentifier(N("/top/eu/sh"), request("id:carol"));
  auto bfs = h.resolve(N("/top/cn/gd"), Identifier::parse("id:carol"));
  CHECK(bfs.outcome == O::Resolved);
  CHECK(uris(bfs.hops) == std::vector<std::string>{"/top/cn/gd", "/top/cn", "/top", "/top/us", "/top/eu",
                                                   "/top/cn/bj", "/top/cn/sh", "/top/us/gd", "/top/us/bj",
                                                   "/top/us/sh", "/top/eu/gd", "/top/eu/bj", "/top/eu/sh"});

  // A carried path that points at the wrong domain still resolves.
  h.registerIdentifier(N("/top/us/bj"), request("content:/top/cn/sh/misfiled"));
  CHECK(h.resolve(N("/top/eu"), Identifier::parse("content:/top/cn/sh/misfiled")).answeredBy == N("/top/us/bj"));
}

TEST_CASE("unregistered identifiers")
{
  auto h = threeLevels();
  auto res = h.resolve(N("/top/us/gd"), Identifier::parse("content:/nothing/here"));
  CHECK(res.outcome == O::NotFound);
  CHECK(res.hops.size() == 13);
  CHECK(res.hops.front() == N("/top/us/gd"));
  CHECK(std::set<ContentName>(res.hops.begin(), res.hops.end()).size() == 13);
  CHECK_FALSE(res.message.empty());
}

TEST_CASE("IP identifiers")
{
  auto h = threeLevels();
  auto req = request("ip:203.0.113.9", "id:ops", 4);
  req.boundTo = N("/top/cn/gw");
  h.registerIdentifier(N("/top/cn"), req);
  auto local = h.resolve(N("/top/cn"), Identifier::parse("ip:203.0.113.9"));
  CHECK(local.outcome == O::Resolved);
  CHECK(local.forwarding->faceId == 4);
  CHECK(h.domain(N("/top/cn")).fib().translate(Identifier::parse("ip:203.0.113.9")) == N("/top/cn/gw"));

  auto remote = h.resolve(N("/top/us"), Identifier::parse("ip:203.0.113.9"));
  CHECK(remote.outcome == O::ProxiedToIp);
  CHECK(uris(remote.hops) == std::vector<std::string>{"/top/us"});
  CHECK(h.resolve(N("/top/cn"), Identifier::parse("ip:198.51.100.1")).outcome == O::ProxiedToIp);
}

TEST_CASE("bound identity resolves to the content forwarding")
{
  auto h = threeLevels();
  h.registerIdentifier(N("/top/us/sh"), request("content:/top/us/sh/home", "id:dave", 9));
  auto req = request("id:dave-phone", "id:dave", 9);
  req.boundTo = N("/top/us/sh/home");
  h.registerIdentifier(N("/top/us/sh"), req);
  auto res = h.resolve(N("/top/cn/gd"), Identifier::parse("id:dave-phone"));
  CHECK(res.outcome == O::Resolved);
  CHECK(res.record->boundTo == N("/top/us/sh/home"));
  CHECK(res.forwarding->faceId == 9);
}

TEST_CASE("resolvable from every domain iff committed")
{
  auto h = threeLevels({4, 5, 64, std::nullopt});
  auto domains = h.domains();
  std::mt19937_64 rng(77);
  std::vector<std::pair<Identifier, RegistrationRecord>> committed;
  std::vector<Identifier> absent;
  for (int i = 0; i < 1000; ++i) {
    auto* d = domains[rng() % domains.size()];
    std::string id;
    switch (rng() % 3) {
      case 0: id = "content:" + std::string(d->name().toUri()) + "/item" + std::to_string(i); break;
      case 1: id = "content:/flat/item" + std::to_string(i); break;
      default: id = "id:user" + std::to_string(i); break;
    }
    auto rec = h.registerIdentifier(d->name(), request(id, "id:owner", static_cast<std::uint32_t>(i)));
    committed.emplace_back(Identifier::parse(id), rec);
    absent.push_back(Identifier::parse("content:/missing/item" + std::to_string(i)));
  }

  std::size_t total = 0;
  for (auto* d : domains) {
    total += d->recordCount();
    CHECK(d->chain().verifyLinkage());
    for (const auto& [key, rec] : d->records())
      CHECK(d->chain().findTransaction(rec.txId) == std::optional<std::uint64_t>(rec.height));
  }
  CHECK(total == 1000);

  std::size_t failures = 0;
  for (const auto& [id, rec] : committed) {
    for (auto* origin : domains) {
      auto res = h.resolve(origin->name(), id);
      std::set<ContentName> seen(res.hops.begin(), res.hops.end());
      if (res.outcome != O::Resolved || res.record != rec || seen.size() != res.hops.size() ||
          res.hops.front() != origin->name())
        ++failures;
    }
  }
  CHECK(failures == 0);

  for (std::size_t i = 0; i < absent.size(); i += 10)
    for (auto* origin : domains) {
      auto res = h.resolve(origin->name(), absent[i]);
      CHECK(res.outcome == O::NotFound);
      CHECK(res.hops.size() == domains.size());
    }

  for (std::size_t i = 0; i < 100; ++i) {
    const auto& id = committed[rng() % committed.size()].first;
    auto* d = domains[rng() % domains.size()];
    CHECK(errorOf([&] { h.registerIdentifier(d->name(), request(id.toString())); }) == Errc::Duplicate);
  }
}

TEST_CASE("record store")
{
  RegistrationRecord r;
  r.identifier = Identifier::parse("id:a\"b");
  r.owner = Identifier::parse("id:alice");
  r.domain = N("/top/cn");
  r.height = 5;
  r.txId = 0xfedcba9876543210ull;
  r.forwarding = {3, 12};
  r.boundTo = N("/top/cn/x");
  CHECK(fromJsonLine(toJsonLine(r)) == r);
  r.boundTo.reset();
  r.forwarding.metric.reset();
  r.status = RegistrationRecord::Status::Rejected;
  CHECK(fromJsonLine(toJsonLine(r)) == r);
  CHECK(toJsonLine(r).find('\n') == std::string::npos);
  CHECK(errorOf([] { fromJsonLine("{}"); }) == Errc::ParseError);
  CHECK(errorOf([] { fromJsonLine("not json"); }) == Errc::ParseError);

  auto dir = std::filesystem::temp_directory_path() / "minet-registry-test";
  std::filesystem::remove_all(dir);
  auto h = threeLevels({3, 1, 16, dir});
  h.registerIdentifier(N("/top/cn/gd"), request("content:/k1"));
  h.registerIdentifier(N("/top/cn/gd"), request("content:/k2"));
  const auto& store = h.domain(N("/top/cn/gd")).store();
  REQUIRE(store.replicas().size() == 3);
  for (const auto& p : store.replicas()) {
    auto loaded = RecordStore::load(p);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0] == *h.domain(N("/top/cn/gd")).findRecord(Identifier::parse("content:/k1")));
    CHECK(loaded[1].height == 2);
  }
  CHECK(RecordStore::load(h.domain(N("/top/us")).store().replicas()[0]).empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("request/response service")
{
  using nlohmann::json;
  auto h = threeLevels();
  auto reg = json::parse(handleRequest(h, encodeRegister(N("/top/cn/gd"), request("content:/top/cn/gd/v1", "id:alice", 3))));
  CHECK(reg["ok"] == true);
  CHECK(reg["record"]["height"] == 1);

  auto dup = json::parse(handleRequest(h, encodeRegister(N("/top/us"), request("content:/top/cn/gd/v1"))));
  CHECK(dup["ok"] == false);
  CHECK(dup["error"] == "Duplicate");

  auto res = json::parse(handleRequest(h, encodeResolve(N("/top/us"), Identifier::parse("content:/top/cn/gd/v1"))));
  CHECK(res["outcome"] == "resolved");
  CHECK(res["hops"] == json::array({"/top/us", "/top", "/top/cn", "/top/cn/gd"}));
  CHECK(res["forwarding"]["face"] == 3);

  auto miss = json::parse(handleRequest(h, encodeResolve(N("/top"), Identifier::parse("id:ghost"))));
  CHECK(miss["outcome"] == "not-found");
  CHECK(miss["hops"].size() == 13);

  CHECK(json::parse(handleRequest(h, R"({"op": "delete"})"))["error"] == "BadRequest");
  CHECK(json::parse(handleRequest(h, "{"))["error"] == "BadRequest");
  CHECK(json::parse(handleRequest(h, R"({"op": "resolve", "origin": "/x", "identifier": "id:a"})"))["error"] ==
        "UnknownDomain");
  CHECK(json::parse(handleRequest(h, R"({"op": "resolve", "origin": "/top", "identifier": "bogus:a"})"))["error"] ==
        "UnknownScheme");
}

TEST_CASE("demo run")
{
  DemoOptions o;
  o.identifiers = 120;
  o.absentProbes = 5;
  auto r = runRegistryDemo(o);
  CHECK(r.ok());
  CHECK(r.domains == 13);
  CHECK(r.registered == 120);
  CHECK(r.resolutions == 120 * 13);
  CHECK(r.duplicatesRejected == 120);
  CHECK(r.absentQueries == 5 * 13);
  CHECK(r.meanHops >= 1);

  std::ostringstream os;
  writeDemoJson(os, r);
  CHECK(nlohmann::json::parse(os.str())["ok"] == true);
}
