#include "minet/core/error.hpp"
#include "minet/workload/bench.hpp"

#include <doctest.h>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

using namespace minet;
using namespace minet::workload;

namespace {

WorkloadSpec
small(QueryMode mode, std::uint32_t n, double m = 3)
{
  WorkloadSpec s;
  s.entryCount = 10'000;
  s.queryCount = 4'000;
  s.mode = mode;
  s.queryLength = n;
  s.meanStoredLength = m;
  s.seed = 11;
  return s;
}

Errc
specError(const WorkloadSpec& s)
{
  try {
    s.validate();
  }
  catch (const Error& e) {
    return e.code();
  }
  return Errc::ParseError;
}

} // namespace

TEST_CASE("stored length distribution")
{
  for (double mean : {1.5, 3.0, 4.0, 7.5}) {
    auto p = storedLengthDistribution(mean, 10);
    REQUIRE(p.size() == 11);
    double total = 0;
    double m = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
      total += p[k];
      m += k * p[k];
    }
    CAPTURE(mean);
    CHECK(total == doctest::Approx(1).epsilon(1e-12));
    CHECK(m == doctest::Approx(mean).epsilon(1e-9));
    // geometric: constant ratio between neighbours
    for (std::size_t k = 2; k < 10; ++k)
      CHECK(p[k + 1] / p[k] == doctest::Approx(p[2] / p[1]).epsilon(1e-9));
  }
  CHECK(storedLengthDistribution(1, 10)[1] == 1);
  CHECK_THROWS_AS(storedLengthDistribution(0.5, 10), Error);
  CHECK_THROWS_AS(storedLengthDistribution(11, 10), Error);
}

TEST_CASE("spec validation")
{
  CHECK(specError(small(QueryMode::Hit, 2, 3)) == Errc::InfeasibleSpec);
  CHECK(specError(small(QueryMode::Mixed, 2, 3)) == Errc::InfeasibleSpec);
  CHECK(specError(small(QueryMode::Miss, 2, 3)) == Errc::ParseError); // no error

  auto s = small(QueryMode::Miss, 6);
  s.meanStoredLength = 0.5;
  CHECK(specError(s) == Errc::InfeasibleSpec);

  s = small(QueryMode::Miss, 6, 1.5);
  s.alphabet = 2;
  s.maxStoredLength = 2;
  s.entryCount = 7; // only 2 + 4 names exist
  CHECK(specError(s) == Errc::InfeasibleSpec);
  s.entryCount = 6;
  CHECK(specError(s) == Errc::ParseError);

  s = small(QueryMode::Miss, 6, 1);
  s.alphabet = 10;
  s.entryCount = 11; // mean 1 allows single-component names only
  CHECK(specError(s) == Errc::InfeasibleSpec);

  s = small(QueryMode::Miss, 6);
  s.entryCount = 0;
  CHECK(specError(s) == Errc::ConfigInvalid);

  CHECK(parseQueryMode("mixed") == QueryMode::Mixed);
  CHECK_THROWS_AS(parseQueryMode("all"), Error);
}

TEST_CASE("generation is deterministic and exact in size")
{
  auto spec = small(QueryMode::Mixed, 7);
  auto a = generateWorkload(spec);
  auto b = generateWorkload(spec);
  REQUIRE(a.entries.size() == 10'000);
  CHECK(a.queries.size() == 4'000);
  CHECK(a.entries == b.entries);
  CHECK(a.queries == b.queries);

  std::set<std::string> names;
  double lengthSum = 0;
  for (const auto& [name, fw] : a.entries) {
    names.insert(std::string(name.toUri()));
    lengthSum += name.size();
    CHECK(name.size() <= spec.maxStoredLength);
  }
  CHECK(names.size() == 10'000);
  CHECK(lengthSum / 10'000 == doctest::Approx(3).epsilon(0.05));

  spec.seed = 12;
  CHECK(generateWorkload(spec).entries != a.entries);

  // 100 components: all 100 one-component names exist, the rest must be longer
  spec.alphabet = 100;
  auto crowded = generateWorkload(spec);
  std::size_t singles = 0;
  lengthSum = 0;
  for (const auto& [name, fw] : crowded.entries) {
    singles += name.size() == 1;
    lengthSum += name.size();
  }
  CHECK(singles == 100);
  CHECK(lengthSum / 10'000 > 3.5);
}

TEST_CASE("miss queries")
{
  for (std::uint32_t n : {6u, 8u, 10u}) {
    auto w = generateWorkload(small(QueryMode::Miss, n));
    auto fib = buildFib(w);
    CHECK(fib.realCount() == w.entries.size());
    double lengthSum = 0;
    for (const auto& q : w.queries) {
      lengthSum += q.size();
      auto bin = fib.lookupLpm(q);
      auto lin = fib.lookupOracle(q);
      CHECK_FALSE(bin.isHit());
      CHECK(lin.probes == q.size());
      // a search that fails at every step over lengths 1..L
      CHECK(bin.probes == std::bit_width(q.size() + 1) - 1);
    }
    CHECK(lengthSum / w.queries.size() == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("hit queries")
{
  for (double m : {3.0, 4.0}) {
    for (std::uint32_t n : {6u, 8u, 10u}) {
      CAPTURE(m);
      CAPTURE(n);
      auto spec = small(QueryMode::Hit, n, m);
      auto w = generateWorkload(spec);
      auto fib = buildFib(w);
      double linear = 0;
      for (const auto& q : w.queries) {
        auto bin = fib.lookupLpm(q);
        auto lin = fib.lookupOracle(q);
        REQUIRE(bin.isHit());
        CHECK(sameOutcome(bin, lin));
        linear += lin.probes;
      }
      // probes = extension length + 1, and the extension averages N - M
      CHECK(linear / w.queries.size() == doctest::Approx(n - m + 1).epsilon(0.03));
    }
  }
}

TEST_CASE("bench report")
{
  auto spec = small(QueryMode::Hit, 8);
  auto r = runBench(spec);
  CHECK(r.mismatches == 0);
  CHECK(r.hits == spec.queryCount);
  CHECK(r.linearAvgProbes == doctest::Approx(6).epsilon(0.03));
  CHECK(r.probeThroughputRatio == doctest::Approx(r.linearAvgProbes / r.binaryAvgProbes).epsilon(1e-9));

  auto miss = runBench(small(QueryMode::Miss, 8));
  CHECK(miss.hits == 0);
  CHECK(miss.linearAvgProbes == 8);

  auto mixed = runBench(small(QueryMode::Mixed, 8));
  CHECK(mixed.hits == spec.queryCount / 2);

  std::vector<BenchReport> reports{r, miss};
  std::ostringstream csv;
  writeBenchCsv(csv, reports);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("mode,entries,queries,M,N,seed,binary_avg_probes,linear_avg_probes", 0) == 0);
  std::string row;
  std::getline(lines, row);
  CHECK(row.rfind("hit,10000,4000,3,8,11,", 0) == 0);
  std::getline(lines, row);
  CHECK(row.rfind("miss,", 0) == 0);

  std::ostringstream js;
  writeBenchJson(js, reports);
  auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["note"] == std::string(SCALE_NOTE));
  REQUIRE(doc["points"].size() == 2);
  CHECK(doc["points"][1]["linear_avg_probes"] == 8.0);
}

TEST_CASE("build timing reports success")
{
  CHECK(timeBuild(5'000, 3) >= 0);
}

TEST_CASE("random insert/delete agrees with the oracle")
{
  auto r = runFibCheck(3'000, 3'000, 20, 5, 500);
  CHECK(r.ok());
  CHECK(r.ops == 3'000);
  CHECK(r.lookups == 3'000);
  CHECK(r.integrityChecks >= 6);
  CHECK(r.hits > 0);
}
