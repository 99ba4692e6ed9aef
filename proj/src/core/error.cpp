#include "minet/core/error.hpp"

namespace minet {

std::string_view
to_string(Errc code) noexcept
{
  switch (code) {
    case Errc::UnknownScheme: return "UnknownScheme";
    case Errc::EmptyName: return "EmptyName";
    case Errc::InvalidComponent: return "InvalidComponent";
    case Errc::MalformedIp: return "MalformedIp";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::UnknownContent: return "UnknownContent";
    case Errc::DuplicateBinding: return "DuplicateBinding";
    case Errc::NotBound: return "NotBound";
    case Errc::ParseError: return "ParseError";
    case Errc::TooManyTransactions: return "TooManyTransactions";
    case Errc::IncompleteVotes: return "IncompleteVotes";
    case Errc::NotEnoughCandidates: return "NotEnoughCandidates";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownMir: return "UnknownMir";
    case Errc::InvalidState: return "InvalidState";
    case Errc::Timeout: return "Timeout";
    case Errc::Duplicate: return "Duplicate";
    case Errc::ComplianceRejected: return "ComplianceRejected";
    case Errc::ConsensusFailed: return "ConsensusFailed";
    case Errc::UnknownDomain: return "UnknownDomain";
    case Errc::InfeasibleSpec: return "InfeasibleSpec";
  }
  return "Unknown";
}

} // namespace minet
