#include "minet/registry/record-store.hpp"

#include "minet/core/error.hpp"

#include <json.hpp>

#include <fstream>

namespace minet::registry {

using nlohmann::json;

std::string_view
to_string(RegistrationRecord::Status s) noexcept
{
  return s == RegistrationRecord::Status::Committed ? "committed" : "rejected";
}

std::string
toJsonLine(const RegistrationRecord& r)
{
  json j = {
    {"identifier", r.identifier.toString()},
    {"owner", r.owner.toString()},
    {"domain", std::string(r.domain.toUri())},
    {"height", r.height},
    {"tx_id", r.txId},
    {"status", std::string(to_string(r.status))},
    {"face", r.forwarding.faceId},
  };
  if (r.forwarding.metric)
    j["metric"] = *r.forwarding.metric;
  if (r.boundTo)
    j["bound_to"] = std::string(r.boundTo->toUri());
  return j.dump();
}

RegistrationRecord
fromJsonLine(std::string_view line)
{
  try {
    auto j = json::parse(line);
    RegistrationRecord r;
    r.identifier = Identifier::parse(j.at("identifier").get<std::string>());
    r.owner = Identifier::parse(j.at("owner").get<std::string>());
    r.domain = ContentName::parse(j.at("domain").get<std::string>());
    r.height = j.at("height").get<std::uint64_t>();
    r.txId = j.at("tx_id").get<std::uint64_t>();
    auto status = j.at("status").get<std::string>();
    if (status == "committed")
      r.status = RegistrationRecord::Status::Committed;
    else if (status == "rejected")
      r.status = RegistrationRecord::Status::Rejected;
    else
      throw Error(Errc::ParseError, "unknown record status '" + status + "'");
    r.forwarding.faceId = j.at("face").get<std::uint32_t>();
    if (j.contains("metric"))
      r.forwarding.metric = j.at("metric").get<std::uint64_t>();
    if (j.contains("bound_to"))
      r.boundTo = ContentName::parse(j.at("bound_to").get<std::string>());
    return r;
  }
  catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad record line: ") + e.what());
  }
  catch (const Error& e) {
    if (e.code() == Errc::ParseError)
      throw;
    throw Error(Errc::ParseError, std::string("bad record field: ") + e.what());
  }
}

RecordStore::RecordStore(const std::filesystem::path& dir, const std::string& stem, std::size_t replicas)
{
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < replicas; ++i) {
    m_paths.push_back(dir / (stem + ".s" + std::to_string(i) + ".jsonl"));
    std::ofstream(m_paths.back(), std::ios::trunc);
  }
}

void
RecordStore::append(const RegistrationRecord& r) const
{
  auto line = toJsonLine(r);
  for (const auto& p : m_paths) {
    std::ofstream os(p, std::ios::app);
    os << line << '\n';
    if (!os)
      throw Error(Errc::ConfigInvalid, "cannot write " + p.string());
  }
}

std::vector<RegistrationRecord>
RecordStore::load(const std::filesystem::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw Error(Errc::ParseError, "cannot read " + path.string());
  std::vector<RegistrationRecord> out;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty())
      out.push_back(fromJsonLine(line));
  return out;
}

} // namespace minet::registry
