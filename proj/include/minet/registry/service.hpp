#ifndef MINET_REGISTRY_SERVICE_HPP
#define MINET_REGISTRY_SERVICE_HPP

#include "minet/registry/hierarchy.hpp"

#include <string>
#include <string_view>

namespace minet::registry {

/**
 * JSON request/response front end, independent of the byte transport.
 *
 *   {"op": "register", "domain": "/top/cn", "identifier": "content:/top/cn/v1",
 *    "owner": "id:alice", "face": 3, "metric": 10, "bound_to": "/top/cn/v1"}
 *   {"op": "resolve", "origin": "/top/us", "identifier": "content:/top/cn/v1"}
 *
 * Replies carry "ok"; failures add "error" (the error category) and "message".
 */
std::string
handleRequest(Hierarchy& hierarchy, std::string_view request);

std::string
encodeRegister(const ContentName& domain, const RegisterRequest& request);

std::string
encodeResolve(const ContentName& origin, const Identifier& id);

} // namespace minet::registry

#endif // MINET_REGISTRY_SERVICE_HPP
