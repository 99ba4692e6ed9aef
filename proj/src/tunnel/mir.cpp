#include "minet/tunnel/mir.hpp"

#include "minet/core/error.hpp"

namespace minet::tunnel {

void
MirTable::add(const MirName& mir)
{
  if (mir.ccnPrefix.empty())
    throw Error(Errc::InvalidComponent, "MIR prefix must be non-empty");
  if (mir.ip.family() != IpAddress::Family::V4)
    throw Error(Errc::MalformedIp, "MIR address must be IPv4: " + mir.ip.toString());
  if (m_byPrefix.count(mir.ccnPrefix))
    throw Error(Errc::Duplicate, "prefix already registered: " + std::string(mir.ccnPrefix.toUri()));
  if (m_byAddress.count(mir.ip.toV4()))
    throw Error(Errc::Duplicate, "address already registered: " + mir.ip.toString());
  m_byPrefix.emplace(mir.ccnPrefix, mir);
  m_byAddress.emplace(mir.ip.toV4(), mir.ccnPrefix);
}

const MirName&
MirTable::byPrefix(const ContentName& prefix) const
{
  auto it = m_byPrefix.find(prefix);
  if (it == m_byPrefix.end())
    throw Error(Errc::UnknownMir, "no MIR with prefix " + std::string(prefix.toUri()));
  return it->second;
}

const MirName&
MirTable::byAddress(const IpAddress& ip) const
{
  auto it = m_byAddress.find(ip.toV4());
  if (ip.family() != IpAddress::Family::V4 || it == m_byAddress.end())
    throw Error(Errc::UnknownMir, "no MIR with address " + ip.toString());
  return m_byPrefix.at(it->second);
}

const MirName*
MirTable::owning(const ContentName& name) const
{
  for (std::size_t k = name.size(); k >= 1; --k) {
    auto it = m_byPrefix.find(name.prefix(k));
    if (it != m_byPrefix.end())
      return &it->second;
  }
  return nullptr;
}

InterestPacket
encapsulateSignal(const MirTable& table, const Segment& segment, const ContentName& target, const std::string& connId)
{
  const auto& mir = table.byPrefix(target);
  InterestPacket p;
  p.name = mir.ccnPrefix.append(connId);
  p.signaling = segment.header;
  if (!segment.payload.empty())
    p.payload = segment.payload;
  return p;
}

Segment
decapsulate(const MirTable& table, const InterestPacket& interest)
{
  if (table.owning(interest.name) == nullptr)
    throw Error(Errc::UnknownMir, "interest " + std::string(interest.name.toUri()) + " names no registered MIR");
  if (!interest.signaling)
    throw Error(Errc::ParseError, "interest carries no signaling header");
  return {*interest.signaling, interest.payload.value_or(Bytes{})};
}

} // namespace minet::tunnel
