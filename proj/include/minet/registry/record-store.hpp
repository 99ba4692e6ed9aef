#ifndef MINET_REGISTRY_RECORD_STORE_HPP
#define MINET_REGISTRY_RECORD_STORE_HPP

#include "minet/core/identifier.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace minet::registry {

struct RegistrationRecord
{
  enum class Status { Committed, Rejected };

  Identifier identifier{IdentityId{}};
  Identifier owner{IdentityId{}};
  ContentName domain;
  std::uint64_t height = 0;
  std::uint64_t txId = 0;
  Status status = Status::Committed;
  ForwardingInfo forwarding;
  /// Content entry a non-content identifier is bound to in the domain FIB.
  std::optional<ContentName> boundTo;

  friend bool operator==(const RegistrationRecord&, const RegistrationRecord&) = default;
};

std::string_view
to_string(RegistrationRecord::Status s) noexcept;

/// One JSON object without a trailing newline.
std::string
toJsonLine(const RegistrationRecord& r);

/// Throws ParseError.
RegistrationRecord
fromJsonLine(std::string_view line);

/// Append-only JSON-lines files, one replica per supervisor. With no
/// directory the store is memory-only.
class RecordStore
{
public:
  RecordStore() = default;

  RecordStore(const std::filesystem::path& dir, const std::string& stem, std::size_t replicas);

  void
  append(const RegistrationRecord& r) const;

  const std::vector<std::filesystem::path>&
  replicas() const noexcept
  {
    return m_paths;
  }

  /// Throws ParseError on a malformed line.
  static std::vector<RegistrationRecord>
  load(const std::filesystem::path& path);

private:
  std::vector<std::filesystem::path> m_paths;
};

} // namespace minet::registry

#endif // MINET_REGISTRY_RECORD_STORE_HPP
