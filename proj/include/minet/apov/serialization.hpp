#ifndef MINET_APOV_SERIALIZATION_HPP
#define MINET_APOV_SERIALIZATION_HPP

#include "minet/apov/crypto.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace minet::apov {

/// Big-endian fixed-width integers; variable fields carry a u32 length prefix.
class Writer
{
public:
  void
  u8(std::uint8_t v)
  {
    m_buf.push_back(v);
  }

  void
  u16(std::uint16_t v);

  void
  u32(std::uint32_t v);

  void
  u64(std::uint64_t v);

  void
  digest(const Digest& d);

  /// Length-prefixed byte string.
  void
  bytes(std::span<const std::uint8_t> b);

  void
  text(std::string_view s);

  /// Appends without a length prefix.
  void
  raw(std::span<const std::uint8_t> b);

  const Bytes&
  buffer() const noexcept
  {
    return m_buf;
  }

  Bytes
  release() noexcept
  {
    return std::move(m_buf);
  }

private:
  Bytes m_buf;
};

/// Throws ParseError on truncated input.
class Reader
{
public:
  explicit
  Reader(std::span<const std::uint8_t> data)
    : m_data(data)
  {
  }

  std::uint8_t
  u8();

  std::uint16_t
  u16();

  std::uint32_t
  u32();

  std::uint64_t
  u64();

  Digest
  digest();

  Bytes
  bytes();

  std::string
  text();

  std::span<const std::uint8_t>
  raw(std::size_t n);

  std::size_t
  remaining() const noexcept
  {
    return m_data.size() - m_pos;
  }

  bool
  atEnd() const noexcept
  {
    return remaining() == 0;
  }

private:
  std::span<const std::uint8_t> m_data;
  std::size_t m_pos = 0;
};

} // namespace minet::apov

#endif // MINET_APOV_SERIALIZATION_HPP
