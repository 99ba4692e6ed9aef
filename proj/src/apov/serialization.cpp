#include "minet/apov/serialization.hpp"
#include "minet/core/error.hpp"

#include <algorithm>

namespace minet::apov {

namespace {

template<typename T>
void
putBigEndian(Bytes& buf, T v)
{
  for (int shift = (sizeof(T) - 1) * 8; shift >= 0; shift -= 8)
    buf.push_back(static_cast<std::uint8_t>(v >> shift));
}

} // namespace

void
Writer::u16(std::uint16_t v)
{
  putBigEndian(m_buf, v);
}

void
Writer::u32(std::uint32_t v)
{
  putBigEndian(m_buf, v);
}

void
Writer::u64(std::uint64_t v)
{
  putBigEndian(m_buf, v);
}

void
Writer::digest(const Digest& d)
{
  m_buf.insert(m_buf.end(), d.begin(), d.end());
}

void
Writer::bytes(std::span<const std::uint8_t> b)
{
  u32(static_cast<std::uint32_t>(b.size()));
  raw(b);
}

void
Writer::text(std::string_view s)
{
  bytes(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void
Writer::raw(std::span<const std::uint8_t> b)
{
  m_buf.insert(m_buf.end(), b.begin(), b.end());
}

std::span<const std::uint8_t>
Reader::raw(std::size_t n)
{
  if (n > remaining())
    throw Error(Errc::ParseError, "truncated input: need " + std::to_string(n) + " bytes, have " +
                                    std::to_string(remaining()));
  auto out = m_data.subspan(m_pos, n);
  m_pos += n;
  return out;
}

std::uint8_t
Reader::u8()
{
  return raw(1)[0];
}

std::uint16_t
Reader::u16()
{
  auto b = raw(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t
Reader::u32()
{
  std::uint32_t v = 0;
  for (auto b : raw(4))
    v = (v << 8) | b;
  return v;
}

std::uint64_t
Reader::u64()
{
  std::uint64_t v = 0;
  for (auto b : raw(8))
    v = (v << 8) | b;
  return v;
}

Digest
Reader::digest()
{
  Digest d;
  auto b = raw(d.size());
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

Bytes
Reader::bytes()
{
  auto b = raw(u32());
  return Bytes(b.begin(), b.end());
}

std::string
Reader::text()
{
  auto b = raw(u32());
  return std::string(b.begin(), b.end());
}

} // namespace minet::apov
