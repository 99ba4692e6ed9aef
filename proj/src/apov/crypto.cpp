#include "minet/apov/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <memory>
#include <stdexcept>

namespace minet::apov {

Digest
sha256(std::span<const std::uint8_t> data)
{
  static EVP_MD* const md = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  thread_local std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  Digest out;
  if (!md || !ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  return out;
}

Digest
sha256(std::string_view data)
{
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::string
toHex(const Digest& d)
{
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto b : d) {
    out += hex[b >> 4];
    out += hex[b & 0xF];
  }
  return out;
}

HmacAuthenticator::HmacAuthenticator(std::string deploymentSecret)
  : m_secret(std::move(deploymentSecret))
{
}

void
HmacAuthenticator::setKey(NodeId node, Bytes key)
{
  m_keys[node] = std::move(key);
}

Bytes
HmacAuthenticator::keyOf(NodeId node) const
{
  if (auto it = m_keys.find(node); it != m_keys.end())
    return it->second;
  std::string material = m_secret;
  for (int shift = 24; shift >= 0; shift -= 8)
    material += static_cast<char>((node >> shift) & 0xFF);
  auto d = sha256(material);
  return Bytes(d.begin(), d.end());
}

Digest
HmacAuthenticator::sign(NodeId signer, std::span<const std::uint8_t> message) const
{
  auto key = keyOf(signer);
  Digest out;
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(), message.size(),
           out.data(), &len) == nullptr || len != out.size())
    throw std::runtime_error("HMAC-SHA256 failed");
  return out;
}

bool
HmacAuthenticator::verify(NodeId signer, std::span<const std::uint8_t> message, const Digest& tag) const
{
  auto expected = sign(signer, message);
  return CRYPTO_memcmp(expected.data(), tag.data(), tag.size()) == 0;
}

} // namespace minet::apov
