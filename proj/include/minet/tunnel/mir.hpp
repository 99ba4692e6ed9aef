#ifndef MINET_TUNNEL_MIR_HPP
#define MINET_TUNNEL_MIR_HPP

#include "minet/tunnel/packet.hpp"

#include <map>
#include <unordered_map>

namespace minet::tunnel {

struct MirName
{
  ContentName ccnPrefix;
  IpAddress ip;
};

/// Bijective prefix <-> address registry of a deployment. CCN-native hosts
/// register here too so that Interests toward them have a routable prefix.
class MirTable
{
public:
  /// Throws Duplicate if either the prefix or the address is already taken,
  /// InvalidComponent for an empty prefix, MalformedIp for a non-v4 address.
  void
  add(const MirName& mir);

  /// Throws UnknownMir.
  const MirName&
  byPrefix(const ContentName& prefix) const;

  const MirName&
  byAddress(const IpAddress& ip) const;

  /// Registered entry whose prefix begins `name`, if any.
  const MirName*
  owning(const ContentName& name) const;

  std::size_t
  size() const noexcept
  {
    return m_byPrefix.size();
  }

private:
  std::map<ContentName, MirName> m_byPrefix;
  std::unordered_map<std::uint32_t, ContentName> m_byAddress;
};

/// Interest named target.ccnPrefix + connId carrying the header verbatim.
/// Throws UnknownMir if the target is not registered.
InterestPacket
encapsulateSignal(const MirTable& table, const Segment& segment, const ContentName& target, const std::string& connId);

/// Exact inverse of encapsulateSignal. Throws UnknownMir if the name does not
/// begin with a registered prefix, ParseError if there is no signaling header.
Segment
decapsulate(const MirTable& table, const InterestPacket& interest);

} // namespace minet::tunnel

#endif // MINET_TUNNEL_MIR_HPP
