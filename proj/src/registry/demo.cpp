#include "minet/registry/demo.hpp"

#include "minet/core/error.hpp"

#include <json.hpp>

#include <ostream>
#include <random>
#include <set>

namespace minet::registry {

Hierarchy
threeLevelHierarchy(DomainOptions options)
{
  Hierarchy h(std::move(options));
  h.addDomain("/top");
  for (const char* c : {"/top/cn", "/top/us", "/top/eu"})
    h.addDomain(c);
  for (const char* c : {"/top/cn", "/top/us", "/top/eu"})
    for (const char* r : {"gd", "bj", "sh"})
      h.addDomain(std::string(c) + "/" + r);
  return h;
}

DemoReport
runRegistryDemo(const DemoOptions& options)
{
  auto h = threeLevelHierarchy(options.domain);
  auto domains = h.domains();
  std::mt19937_64 rng(options.seed);

  DemoReport r;
  r.domains = domains.size();

  std::vector<std::pair<Identifier, RegistrationRecord>> committed;
  std::vector<std::size_t> homes;
  for (std::size_t i = 0; i < options.identifiers; ++i) {
    std::size_t home = rng() % domains.size();
    auto* d = domains[home];
    std::string id;
    switch (rng() % 3) {
      case 0: id = "content:" + std::string(d->name().toUri()) + "/item" + std::to_string(i); break;
      case 1: id = "content:/shared/item" + std::to_string(i); break;
      default: id = "id:user" + std::to_string(i); break;
    }
    RegisterRequest req{Identifier::parse(id), Identifier::parse("id:owner" + std::to_string(i % 17)),
                        {static_cast<std::uint32_t>(1 + i % 64), std::nullopt}, std::nullopt};
    committed.emplace_back(req.identifier, h.registerIdentifier(d->name(), req));
    homes.push_back(home);
  }
  r.registered = committed.size();
  for (auto* d : domains)
    r.committedRecords += d->recordCount();

  std::size_t hops = 0;
  for (const auto& [id, rec] : committed) {
    for (auto* origin : domains) {
      auto res = h.resolve(origin->name(), id);
      ++r.resolutions;
      hops += res.hops.size();
      r.cacheAnswers += res.fromCache;
      std::set<ContentName> distinct(res.hops.begin(), res.hops.end());
      if (res.outcome != ResolutionResult::Outcome::Resolved || res.record != rec || res.hops.empty() ||
          res.hops.front() != origin->name() || distinct.size() != res.hops.size())
        ++r.resolutionFailures;
    }
  }
  r.meanHops = r.resolutions ? static_cast<double>(hops) / r.resolutions : 0;

  for (std::size_t i = 0; i < committed.size(); ++i) {
    auto* other = domains[(homes[i] + 1 + rng() % (domains.size() - 1)) % domains.size()];
    ++r.duplicateAttempts;
    try {
      h.registerIdentifier(other->name(), {committed[i].first, Identifier::parse("id:mallory"), {1, std::nullopt},
                                           std::nullopt});
    }
    catch (const Error& e) {
      r.duplicatesRejected += e.code() == Errc::Duplicate;
    }
  }

  for (std::size_t i = 0; i < options.absentProbes; ++i) {
    auto id = Identifier::parse("content:/missing/item" + std::to_string(rng() % 1'000'000));
    for (auto* origin : domains) {
      auto res = h.resolve(origin->name(), id);
      ++r.absentQueries;
      r.absentNotFound += res.outcome == ResolutionResult::Outcome::NotFound;
      r.absentWithTrace += !res.hops.empty();
    }
  }
  return r;
}

void
writeDemoJson(std::ostream& os, const DemoReport& r)
{
  nlohmann::json j{{"domains", r.domains},
                   {"registered", r.registered},
                   {"committed_records", r.committedRecords},
                   {"resolutions", r.resolutions},
                   {"resolution_failures", r.resolutionFailures},
                   {"cache_answers", r.cacheAnswers},
                   {"mean_hops", r.meanHops},
                   {"duplicate_attempts", r.duplicateAttempts},
                   {"duplicates_rejected", r.duplicatesRejected},
                   {"absent_queries", r.absentQueries},
                   {"absent_not_found", r.absentNotFound},
                   {"absent_with_trace", r.absentWithTrace},
                   {"ok", r.ok()}};
  os << j.dump(2) << '\n';
}

} // namespace minet::registry
