#include "minet/fib/fib-io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace minet::fib {

namespace {

std::string
escapeBinding(std::string_view text)
{
  std::string out;
  for (char c : text) {
    switch (c) {
      case ',': out += "%2C"; break;
      case '%': out += "%25"; break;
      case '\t': out += "%09"; break;
      case '\n': out += "%0A"; break;
      default: out += c;
    }
  }
  return out;
}

std::string
unescapeBinding(std::string_view text)
{
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    unsigned value = 0;
    if (i + 2 >= text.size())
      throw Error(Errc::ParseError, "truncated escape in binding");
    auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, value, 16);
    if (ec != std::errc() || ptr != text.data() + i + 3)
      throw Error(Errc::ParseError, "bad escape in binding");
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

std::vector<std::string_view>
split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos)
      return out;
    pos = next + 1;
  }
}

struct Line
{
  ContentName name;
  EntryState state;
  std::optional<std::uint32_t> face;
  std::vector<Identifier> bindings;
};

Line
parseLine(std::string_view text, std::size_t lineNo)
{
  auto where = " (line " + std::to_string(lineNo) + ")";
  auto fields = split(text, '\t');
  if (fields.size() != 4)
    throw Error(Errc::ParseError, "expected 4 tab-separated fields" + where);

  Line line{ContentName::parse(fields[0]), EntryState::Virtual, std::nullopt, {}};
  auto state = parseEntryState(fields[1]);
  if (!state)
    throw Error(Errc::ParseError, "unknown state '" + std::string(fields[1]) + "'" + where);
  line.state = *state;

  if (fields[2] != "-") {
    std::uint32_t face = 0;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), face);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size())
      throw Error(Errc::ParseError, "bad face id '" + std::string(fields[2]) + "'" + where);
    line.face = face;
  }
  if ((line.state == EntryState::Real) != line.face.has_value())
    throw Error(Errc::ParseError, "face id must be present exactly on real entries" + where);

  if (!fields[3].empty())
    for (auto b : split(fields[3], ','))
      line.bindings.push_back(Identifier::parse(unescapeBinding(b)));
  return line;
}

} // namespace

void
dump(const Hpt& fib, std::ostream& os)
{
  std::vector<std::pair<std::string_view, const FibNode*>> entries;
  entries.reserve(fib.size());
  fib.forEachEntry([&](std::string_view name, const FibNode& node) { entries.emplace_back(name, &node); });
  std::sort(entries.begin(), entries.end());

  for (const auto& [name, node] : entries) {
    os << name << '\t' << to_string(node->state) << '\t';
    if (node->forwarding)
      os << node->forwarding->faceId;
    else
      os << '-';
    os << '\t';
    for (std::size_t i = 0; i < node->bindings.size(); ++i) {
      if (i > 0)
        os << ',';
      os << escapeBinding(node->bindings[i].toString());
    }
    os << '\n';
  }
}

Hpt
load(std::istream& is)
{
  std::vector<Line> lines;
  std::string text;
  std::size_t lineNo = 0;
  while (std::getline(is, text)) {
    ++lineNo;
    if (text.empty())
      continue;
    lines.push_back(parseLine(text, lineNo));
  }

  Hpt fib;
  for (const auto& l : lines)
    if (l.state == EntryState::Real)
      fib.insert(l.name, ForwardingInfo{*l.face, std::nullopt});

  if (fib.size() != lines.size())
    throw Error(Errc::ParseError, "dump lists " + std::to_string(lines.size()) +
                                    " entries but reconstruction yields " + std::to_string(fib.size()));
  for (const auto& l : lines) {
    auto state = fib.stateOf(l.name);
    if (!state || *state != l.state)
      throw Error(Errc::ParseError, std::string(l.name.toUri()) + " is " + std::string(to_string(l.state)) +
                                      " in the dump but reconstructs differently");
    for (const auto& b : l.bindings)
      fib.bindIdentifier(l.name, b);
  }
  return fib;
}

} // namespace minet::fib
