#ifndef MINET_REGISTRY_DEMO_HPP
#define MINET_REGISTRY_DEMO_HPP

#include "minet/registry/hierarchy.hpp"

#include <iosfwd>

namespace minet::registry {

/// /top, then /top/cn, /top/us, /top/eu, each with gd, bj and sh below.
Hierarchy
threeLevelHierarchy(DomainOptions options = {});

struct DemoOptions
{
  std::size_t identifiers = 1000;
  std::size_t absentProbes = 100;
  std::uint64_t seed = 1;
  DomainOptions domain;
};

struct DemoReport
{
  std::size_t domains = 0;
  std::size_t registered = 0;
  std::size_t committedRecords = 0; // summed over domain record maps
  std::size_t resolutions = 0;
  std::size_t resolutionFailures = 0;
  std::size_t cacheAnswers = 0;
  double meanHops = 0;
  std::size_t duplicateAttempts = 0;
  std::size_t duplicatesRejected = 0;
  std::size_t absentQueries = 0;
  std::size_t absentNotFound = 0;
  std::size_t absentWithTrace = 0;

  bool
  ok() const noexcept
  {
    return registered == committedRecords && resolutionFailures == 0 && duplicatesRejected == duplicateAttempts &&
           absentNotFound == absentQueries && absentWithTrace == absentQueries;
  }
};

/**
 * Registers `identifiers` random content and identity identifiers at random
 * domains of threeLevelHierarchy, resolves every one from every domain,
 * re-registers each at another domain expecting Duplicate, and resolves
 * unregistered names from every domain expecting NotFound.
 */
DemoReport
runRegistryDemo(const DemoOptions& options);

void
writeDemoJson(std::ostream& os, const DemoReport& report);

} // namespace minet::registry

#endif // MINET_REGISTRY_DEMO_HPP
