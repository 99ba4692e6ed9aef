#ifndef MINET_CORE_ERROR_HPP
#define MINET_CORE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace minet {

/// Failure categories shared by every module. Each operation documents which
/// subset it can raise.
enum class Errc {
  UnknownScheme,
  EmptyName,
  InvalidComponent,
  MalformedIp,
  OutOfRange,
  UnknownContent,
  DuplicateBinding,
  NotBound,
  ParseError,
  TooManyTransactions,
  IncompleteVotes,
  NotEnoughCandidates,
  ConfigInvalid,
  UnknownNode,
  UnknownMir,
  InvalidState,
  Timeout,
  Duplicate,
  ComplianceRejected,
  ConsensusFailed,
  UnknownDomain,
  InfeasibleSpec,
};

std::string_view
to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , m_code(code)
  {
  }

  Errc
  code() const noexcept
  {
    return m_code;
  }

private:
  Errc m_code;
};

} // namespace minet

#endif // MINET_CORE_ERROR_HPP
