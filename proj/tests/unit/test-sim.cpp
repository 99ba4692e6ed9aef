#include "minet/core/error.hpp"
#include "minet/model/perf-model.hpp"
#include "minet/sim/network.hpp"
#include "minet/sim/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace minet;
using namespace minet::sim;

namespace {

SimConfig
smallConfig(std::uint32_t n, std::uint64_t rounds, std::uint32_t k = 50)
{
  SimConfig c;
  c.nodeCount = n;
  c.rounds = rounds;
  c.K = k;
  c.seed = 7;
  return c;
}

constexpr double NS = 1e-9;

} // namespace

TEST_CASE("event queue orders by time then insertion")
{
  EventQueue q;
  std::vector<int> order;
  q.schedule(20, [&] { order.push_back(3); });
  q.schedule(10, [&] { order.push_back(1); });
  q.schedule(10, [&] {
    order.push_back(2);
    q.scheduleAfter(0, [&] { order.push_back(25); });
  });
  q.schedule(30, [&] { order.push_back(4); });
  CHECK(q.run() == 5);
  CHECK(order == std::vector<int>{1, 2, 25, 3, 4});
  CHECK(q.now() == 30);
  CHECK_THROWS_AS(q.schedule(5, [] {}), Error);
}

TEST_CASE("network serializes per port")
{
  Network net(3, 1000); // 1000 B/s
  CHECK(net.transfer(0, 1, 500, 0) == 500'000'000);
  CHECK(net.transfer(0, 2, 500, 0) == 1'000'000'000); // uplink of 0 is busy
  CHECK(net.transfer(2, 1, 250, 0) == 750'000'000);   // downlink of 1 is busy
  CHECK(net.transfer(1, 2, 1, 2'000'000'000) == 2'001'000'000);
  CHECK(net.bytesSent(0) == 1000);
  CHECK(net.bytesReceived(1) == 750);

  Network odd(2, 3);
  for (int i = 1; i <= 9; ++i)
    CHECK(odd.transfer(0, 1, 1, 0) == (i * 1'000'000'000LL + 2) / 3);
}

TEST_CASE("zero computation reproduces the transmission closed forms")
{
  for (std::uint32_t n = 2; n <= 9; ++n) {
    auto c = smallConfig(n, 3, 10000);
    c.compute = ComputeModel::Zero;
    auto res = runRounds(c);
    REQUIRE_FALSE(res.stalled);
    auto expected = model::transmissionTimes(model::ModelParams::prototype(n));
    for (const auto& r : res.rounds) {
      CAPTURE(n);
      CHECK(std::abs(r.t1 - expected.bookkeeping) <= NS);
      CHECK(std::abs(r.t2 - expected.voting) <= NS);
      CHECK(std::abs(r.t3 - expected.sealing) <= NS);
      CHECK(r.t4 == 0);
    }
  }
}

TEST_CASE("round time is computation plus transmission")
{
  for (std::uint32_t n = 3; n <= 8; ++n) {
    auto c = smallConfig(n, 2, 10000);
    auto res = runRounds(c);
    REQUIRE_FALSE(res.stalled);
    auto comp = model::computationTimes(n);
    auto tran = model::transmissionTimes(model::ModelParams::prototype(n));
    for (const auto& r : res.rounds) {
      CAPTURE(n);
      CHECK(std::abs(r.t1 - (comp.s1 + tran.bookkeeping)) <= 2 * NS);
      CHECK(std::abs(r.t2 - (comp.s2 + tran.voting)) <= 2 * NS);
      CHECK(std::abs(r.t3 - (comp.s3 + tran.sealing)) <= 2 * NS);
      CHECK(std::abs(r.t4 - comp.s4) <= 2 * NS);
      CHECK(std::abs(r.tCons - (r.t1 + r.t2 + r.t3 + r.t4)) <= 4 * NS);
      CHECK(r.committedTxs == 10000ull * n);
    }
    CHECK(res.throughput() == doctest::Approx(10000.0 * n / res.meanRoundTime()).epsilon(1e-9));
  }
}

TEST_CASE("residual-share computation sums to the round fit minus fitted transmission")
{
  for (std::uint32_t n = 3; n <= 8; ++n) {
    auto s = stepComputeSeconds(ComputeModel::ResidualShares, n);
    CHECK(s[0] + s[1] + s[2] + s[3] == doctest::Approx(model::residualComputationTime(n)).epsilon(1e-12));
  }
}

TEST_CASE("deterministic")
{
  auto c = smallConfig(5, 20);
  c.faults.push_back({2, FaultSpec::Behavior::DissentingVotes, 1});
  auto a = runRounds(c);
  auto b = runRounds(c);
  CHECK(a.rounds == b.rounds);
  CHECK(a.tipDigests == b.tipDigests);
  std::ostringstream ca, cb;
  a.writeCsv(ca);
  b.writeCsv(cb);
  CHECK(ca.str() == cb.str());

  c.seed = 8;
  CHECK(runRounds(c).tipDigests != a.tipDigests);
}

TEST_CASE("fault-free rounds never fork")
{
  auto res = runRounds(smallConfig(6, 200, 5));
  REQUIRE_FALSE(res.stalled);
  CHECK(res.rounds.size() == 200);
  CHECK(res.divergences == 0);
  for (const auto& d : res.tipDigests)
    CHECK(d == res.tipDigests[0]);
  std::set<std::uint32_t> leaders;
  for (const auto& r : res.rounds)
    leaders.insert(r.leader);
  CHECK(leaders.size() == 6);
}

TEST_CASE("invalid-block bookkeeper is excluded")
{
  auto c = injectFault(smallConfig(6, 30), {4, FaultSpec::Behavior::InvalidBlocks, 1});
  auto res = runRounds(c);
  REQUIRE_FALSE(res.stalled);
  for (const auto& r : res.rounds) {
    CHECK(r.committedTxs == 50u * 5);
    CHECK(r.blocksCommitted == 5);
    CHECK_FALSE(r.forked);
  }
}

TEST_CASE("one dissenting voter among honest ones changes nothing")
{
  auto c = injectFault(smallConfig(7, 30), {1, FaultSpec::Behavior::DissentingVotes, 1});
  auto res = runRounds(c);
  REQUIRE_FALSE(res.stalled);
  for (const auto& r : res.rounds)
    CHECK(r.committedTxs == 50u * 7);
}

TEST_CASE("crashes")
{
  auto base = smallConfig(6, 10);
  auto clean = runRounds(base);

  SUBCASE("crashed consortium node stalls the round it misses")
  {
    auto leaderAt4 = clean.rounds[3].leader;
    std::uint32_t victim = leaderAt4 == 0 ? 1 : 0;
    auto res = runRounds(injectFault(base, {victim, FaultSpec::Behavior::CrashAtRound, 4}));
    CHECK(res.stalled);
    REQUIRE(res.rounds.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(res.rounds[i] == clean.rounds[i]);
    CHECK(res.diagnostic.find("round 4 stalled") != std::string::npos);
    CHECK(res.diagnostic.find("IncompleteVotes") != std::string::npos);
    CHECK(res.diagnostic.find("node(s) " + std::to_string(victim)) != std::string::npos);
    CHECK(res.tipDigests[victim].empty());
  }

  SUBCASE("crashed leader")
  {
    auto leaderAt2 = clean.rounds[1].leader;
    auto res = runRounds(injectFault(base, {leaderAt2, FaultSpec::Behavior::CrashAtRound, 2}));
    CHECK(res.stalled);
    CHECK(res.rounds.size() == 1);
    CHECK(res.diagnostic.find("designated leader") != std::string::npos);
  }
}

TEST_CASE("configuration")
{
  CHECK_THROWS_AS(injectFault(smallConfig(3, 1), {3, FaultSpec::Behavior::InvalidBlocks, 1}), Error);
  auto c = parseSimConfig(R"({"nodes": 4, "band": 1e9, "K": 20, "compute": "zero", "rounds": 5,
                              "faults": [{"node": 2, "behavior": "crash_at_round", "round": 3}]})");
  CHECK(c.nodeCount == 4);
  CHECK(c.band == 1'000'000'000);
  CHECK(c.K == 20);
  CHECK(c.compute == ComputeModel::Zero);
  REQUIRE(c.faults.size() == 1);
  CHECK(c.faults[0].round == 3);
  CHECK(c.M == 266);

  auto code = [](std::string_view json) {
    try {
      parseSimConfig(json);
    }
    catch (const Error& e) {
      return e.code();
    }
    return Errc::ParseError;
  };
  CHECK(code("{") == Errc::ConfigInvalid);
  CHECK(code(R"({"nodes": "x"})") == Errc::ConfigInvalid);
  CHECK(code(R"({"nodes": 1})") == Errc::ConfigInvalid);
  CHECK(code(R"({"compute": "magic"})") == Errc::ConfigInvalid);
  CHECK(code(R"({"faults": [{"node": 9, "behavior": "invalid_blocks"}]})") == Errc::UnknownNode);

  std::ostringstream js;
  auto res = runRounds(c);
  res.writeSummaryJson(js, c);
  CHECK(js.str().find("\"stalled\": true") != std::string::npos);
}
