#ifndef MINET_APOV_CRYPTO_HPP
#define MINET_APOV_CRYPTO_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace minet::apov {

using NodeId = std::uint32_t;
using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr Digest ZERO_DIGEST{};

Digest
sha256(std::span<const std::uint8_t> data);

Digest
sha256(std::string_view data);

std::string
toHex(const Digest& d);

/**
 * Per-node message authentication. Consensus code only signs and verifies
 * through this interface, so a public-key scheme can replace the default
 * keyed-hash one without touching the state machine.
 */
class Authenticator
{
public:
  virtual ~Authenticator() = default;

  virtual Digest
  sign(NodeId signer, std::span<const std::uint8_t> message) const = 0;

  virtual bool
  verify(NodeId signer, std::span<const std::uint8_t> message, const Digest& tag) const = 0;
};

/// HMAC-SHA256 with one secret key per node.
class HmacAuthenticator final : public Authenticator
{
public:
  /// Nodes without an explicit key use SHA-256(deploymentSecret || node id).
  explicit
  HmacAuthenticator(std::string deploymentSecret = "minet");

  void
  setKey(NodeId node, Bytes key);

  Digest
  sign(NodeId signer, std::span<const std::uint8_t> message) const override;

  bool
  verify(NodeId signer, std::span<const std::uint8_t> message, const Digest& tag) const override;

private:
  Bytes
  keyOf(NodeId node) const;

private:
  std::string m_secret;
  std::unordered_map<NodeId, Bytes> m_keys;
};

} // namespace minet::apov

#endif // MINET_APOV_CRYPTO_HPP
