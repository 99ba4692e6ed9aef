#include "minet/apov/chain-store.hpp"
#include "minet/core/error.hpp"

#include <fstream>
#include <iterator>

namespace minet::apov {

BlockGroup
makeGenesis(std::span<const NodeId> eligibleLeaders, std::uint64_t seed)
{
  if (eligibleLeaders.empty())
    throw Error(Errc::ConfigInvalid, "no node is eligible to lead the first round");
  BlockGroup g;
  g.header.height = 0;
  g.header.leaderSeed = seed;
  g.header.nextLeader = eligibleLeaders[uniformIndex(seed, eligibleLeaders.size())];
  return g;
}

Chain::Chain(BlockGroup genesis)
{
  m_digests.push_back(genesis.digest());
  m_groups.push_back(std::move(genesis));
}

ValidationReport
Chain::append(BlockGroup group, const ConsensusConfig& config, const Authenticator& auth)
{
  auto report = validateBlockGroup(group, config, tipDigest(), auth);
  if (group.header.height != height() + 1)
    report.issues.push_back({ValidationIssue::Reason::Linkage,
                             "height " + std::to_string(group.header.height) + " does not follow " +
                               std::to_string(height())});
  if (report.ok()) {
    m_digests.push_back(group.digest());
    m_groups.push_back(std::move(group));
  }
  return report;
}

const BlockGroup&
Chain::at(std::uint64_t height) const
{
  if (height >= m_groups.size())
    throw Error(Errc::OutOfRange, "no block group at height " + std::to_string(height));
  return m_groups[height];
}

const Digest&
Chain::digestAt(std::uint64_t height) const
{
  if (height >= m_digests.size())
    throw Error(Errc::OutOfRange, "no block group at height " + std::to_string(height));
  return m_digests[height];
}

bool
Chain::verifyLinkage() const
{
  for (std::size_t i = 1; i < m_groups.size(); ++i) {
    const auto& g = m_groups[i];
    if (g.header.height != i || g.header.prevGroupHash != m_digests[i - 1] || m_digests[i] != g.digest())
      return false;
    for (const auto& b : g.body)
      if (b.prevGroupHash() != m_digests[i - 1])
        return false;
  }
  return true;
}

std::optional<std::uint64_t>
Chain::findTransaction(std::uint64_t txId) const
{
  for (const auto& g : m_groups)
    for (const auto& b : g.body)
      for (const auto& tx : b.txs())
        if (tx.id == txId)
          return g.header.height;
  return std::nullopt;
}

ChainFile::ChainFile(std::filesystem::path path)
  : m_path(std::move(path))
{
}

void
ChainFile::append(const BlockGroup& group) const
{
  Writer w;
  w.bytes(group.toBytes());
  std::ofstream os(m_path, std::ios::binary | std::ios::app);
  if (!os)
    throw Error(Errc::InvalidState, "cannot open " + m_path.string());
  const auto& buf = w.buffer();
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

std::vector<BlockGroup>
ChainFile::readAll() const
{
  std::ifstream is(m_path, std::ios::binary);
  if (!is)
    return {};
  Bytes data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  Reader r(data);
  std::vector<BlockGroup> out;
  while (!r.atEnd()) {
    auto record = r.bytes();
    Reader inner(record);
    out.push_back(BlockGroup::deserialize(inner));
    if (!inner.atEnd())
      throw Error(Errc::ParseError, "trailing bytes in block group record");
  }
  return out;
}

} // namespace minet::apov
