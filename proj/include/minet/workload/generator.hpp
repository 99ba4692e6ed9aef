#ifndef MINET_WORKLOAD_GENERATOR_HPP
#define MINET_WORKLOAD_GENERATOR_HPP

#include "minet/core/identifier.hpp"

#include <string_view>
#include <vector>

namespace minet::workload {

enum class QueryMode { Hit, Miss, Mixed };

std::string_view
to_string(QueryMode m) noexcept;

/// Throws ConfigInvalid.
QueryMode
parseQueryMode(std::string_view text);

struct WorkloadSpec
{
  std::size_t entryCount = 100'000;
  std::size_t queryCount = 50'000;
  /// Mean stored-name length M.
  double meanStoredLength = 3;
  /// Mean query length N.
  std::uint32_t queryLength = 6;
  QueryMode mode = QueryMode::Miss;
  /// Component pool size for stored names. Small pools exhaust the short
  /// lengths, which pushes the realized mean length above M.
  std::uint32_t alphabet = 1'000'000;
  /// Query lengths spread uniformly over N +- spread (clamped to stay feasible).
  std::uint32_t lengthSpread = 3;
  std::uint32_t maxStoredLength = 10;
  std::uint64_t seed = 1;

  /// Throws ConfigInvalid for malformed values, InfeasibleSpec when the
  /// requested names cannot be produced.
  void
  validate() const;
};

struct Workload
{
  std::vector<std::pair<ContentName, ForwardingInfo>> entries;
  std::vector<ContentName> queries;
};

/// P(k) for k = 1..maxLength of the geometric law truncated to [1, maxLength]
/// with the given mean. Index 0 is unused.
std::vector<double>
storedLengthDistribution(double mean, std::uint32_t maxLength);

/**
 * Deterministic in the spec. Stored names use components c0..c{alphabet-1}
 * and lengths drawn from storedLengthDistribution. Miss queries use a
 * disjoint component namespace, so no prefix of theirs is stored. Hit
 * queries extend a stored name of length s by fresh components to length
 * s + (N - M) + d with d spread symmetrically, so the longest stored prefix
 * of each query is that name. Mixed alternates hit and miss.
 */
Workload
generateWorkload(const WorkloadSpec& spec);

} // namespace minet::workload

#endif // MINET_WORKLOAD_GENERATOR_HPP
