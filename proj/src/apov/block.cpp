#include "minet/apov/block.hpp"

#include <algorithm>

namespace minet::apov {

namespace {

Digest
hashPair(const Digest& l, const Digest& r)
{
  std::array<std::uint8_t, 65> buf;
  buf[0] = 0x01;
  std::copy(l.begin(), l.end(), buf.begin() + 1);
  std::copy(r.begin(), r.end(), buf.begin() + 33);
  return sha256(buf);
}

Digest
hashLeaf(std::uint64_t id)
{
  std::array<std::uint8_t, 9> buf;
  buf[0] = 0x00;
  for (int i = 0; i < 8; ++i)
    buf[1 + i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
  return sha256(buf);
}

} // namespace

Digest
merkleRoot(std::span<const Transaction> txs)
{
  if (txs.empty())
    return sha256(std::string_view());

  std::vector<Digest> level;
  level.reserve(txs.size());
  for (const auto& tx : txs)
    level.push_back(hashLeaf(tx.id));

  while (level.size() > 1) {
    std::size_t out = 0;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      level[out++] = hashPair(level[i], level[i + 1]);
    if (level.size() % 2 == 1)
      level[out++] = level.back();
    level.resize(out);
  }
  return level.front();
}

Block::Block(const Digest& prevGroupHash, NodeId bookkeeper, std::uint64_t timestamp,
             std::vector<Transaction> txs, std::optional<Digest> statedRoot)
  : m_prevGroupHash(prevGroupHash)
  , m_bookkeeper(bookkeeper)
  , m_timestamp(timestamp)
{
  auto body = std::make_shared<Body>();
  body->txs = std::move(txs);
  for (const auto& tx : body->txs)
    body->nominalSize += tx.nominalSize;
  m_body = std::move(body);
  m_merkleRoot = statedRoot ? *statedRoot : computedMerkleRoot();

  Writer w;
  serializeFields(w);
  m_hash = sha256(w.buffer());
}

Block::Block(const Digest& prevGroupHash, NodeId bookkeeper, std::uint64_t timestamp,
             std::shared_ptr<const Body> body, const Digest& statedRoot)
  : m_prevGroupHash(prevGroupHash)
  , m_merkleRoot(statedRoot)
  , m_bookkeeper(bookkeeper)
  , m_timestamp(timestamp)
  , m_body(std::move(body))
{
  Writer w;
  serializeFields(w);
  m_hash = sha256(w.buffer());
}

const Digest&
Block::computedMerkleRoot() const
{
  std::call_once(m_body->rootOnce, [this] { m_body->root = apov::merkleRoot(m_body->txs); });
  return m_body->root;
}

bool
Block::hasUniqueIds() const
{
  std::call_once(m_body->uniqueOnce, [this] {
    std::vector<std::uint64_t> ids;
    ids.reserve(m_body->txs.size());
    for (const auto& tx : m_body->txs)
      ids.push_back(tx.id);
    std::sort(ids.begin(), ids.end());
    m_body->unique = std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  });
  return m_body->unique;
}

Block
Block::withMerkleRoot(const Digest& root) const
{
  return Block(m_prevGroupHash, m_bookkeeper, m_timestamp, m_body, root);
}

void
Block::serializeFields(Writer& w) const
{
  w.digest(m_prevGroupHash);
  w.digest(m_merkleRoot);
  w.u32(m_bookkeeper);
  w.u64(m_timestamp);
  w.u32(static_cast<std::uint32_t>(m_body->txs.size()));
  for (const auto& tx : m_body->txs) {
    w.u64(tx.id);
    w.bytes(tx.payload);
    w.u32(tx.nominalSize);
  }
}

void
Block::serialize(Writer& w) const
{
  serializeFields(w);
}

Block
Block::deserialize(Reader& r)
{
  auto prev = r.digest();
  auto root = r.digest();
  auto bookkeeper = r.u32();
  auto timestamp = r.u64();
  auto count = r.u32();
  std::vector<Transaction> txs;
  txs.reserve(std::min<std::size_t>(count, r.remaining() / 16));
  for (std::uint32_t i = 0; i < count; ++i) {
    Transaction tx;
    tx.id = r.u64();
    tx.payload = r.bytes();
    tx.nominalSize = r.u32();
    txs.push_back(std::move(tx));
  }
  return Block(prev, bookkeeper, timestamp, std::move(txs), root);
}

} // namespace minet::apov
