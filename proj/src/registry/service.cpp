#include "minet/registry/service.hpp"

#include "minet/core/error.hpp"

#include <json.hpp>

namespace minet::registry {

using nlohmann::json;

namespace {

json
recordJson(const RegistrationRecord& r)
{
  return json::parse(toJsonLine(r));
}

json
failure(std::string_view error, const std::string& message)
{
  return {{"ok", false}, {"error", std::string(error)}, {"message", message}};
}

json
handle(Hierarchy& h, const json& req)
{
  auto op = req.at("op").get<std::string>();
  if (op == "register") {
    RegisterRequest r{Identifier::parse(req.at("identifier").get<std::string>()),
                      Identifier::parse(req.at("owner").get<std::string>()),
                      {req.value("face", std::uint32_t{0}), std::nullopt},
                      std::nullopt};
    if (req.contains("metric"))
      r.forwarding.metric = req.at("metric").get<std::uint64_t>();
    if (req.contains("bound_to"))
      r.boundTo = ContentName::parse(req.at("bound_to").get<std::string>());
    auto record = h.registerIdentifier(ContentName::parse(req.at("domain").get<std::string>()), r);
    return {{"ok", true}, {"record", recordJson(record)}};
  }
  if (op == "resolve") {
    auto res = h.resolve(ContentName::parse(req.at("origin").get<std::string>()),
                         Identifier::parse(req.at("identifier").get<std::string>()));
    json hops = json::array();
    for (const auto& d : res.hops)
      hops.push_back(std::string(d.toUri()));
    json out = {{"ok", true}, {"outcome", std::string(to_string(res.outcome))}, {"hops", hops},
                {"from_cache", res.fromCache}};
    if (res.record)
      out["record"] = recordJson(*res.record);
    if (res.forwarding) {
      out["forwarding"] = {{"face", res.forwarding->faceId}};
      if (res.forwarding->metric)
        out["forwarding"]["metric"] = *res.forwarding->metric;
    }
    if (res.answeredBy)
      out["answered_by"] = std::string(res.answeredBy->toUri());
    if (!res.message.empty())
      out["message"] = res.message;
    return out;
  }
  return failure("BadRequest", "unknown op '" + op + "'");
}

} // namespace

std::string
handleRequest(Hierarchy& hierarchy, std::string_view request)
{
  json reply;
  try {
    reply = handle(hierarchy, json::parse(request));
  }
  catch (const Error& e) {
    reply = failure(to_string(e.code()), e.what());
  }
  catch (const json::exception& e) {
    reply = failure("BadRequest", e.what());
  }
  return reply.dump();
}

std::string
encodeRegister(const ContentName& domain, const RegisterRequest& request)
{
  json j = {{"op", "register"},
            {"domain", std::string(domain.toUri())},
            {"identifier", request.identifier.toString()},
            {"owner", request.owner.toString()},
            {"face", request.forwarding.faceId}};
  if (request.forwarding.metric)
    j["metric"] = *request.forwarding.metric;
  if (request.boundTo)
    j["bound_to"] = std::string(request.boundTo->toUri());
  return j.dump();
}

std::string
encodeResolve(const ContentName& origin, const Identifier& id)
{
  return json{{"op", "resolve"}, {"origin", std::string(origin.toUri())}, {"identifier", id.toString()}}.dump();
}

} // namespace minet::registry
