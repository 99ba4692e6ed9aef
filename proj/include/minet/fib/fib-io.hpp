#ifndef MINET_FIB_FIB_IO_HPP
#define MINET_FIB_FIB_IO_HPP

#include "minet/fib/hpt.hpp"

#include <iosfwd>

namespace minet::fib {

/**
 * Writes one line per entry, sorted by name:
 *
 *   <canonical name> TAB <state> TAB <face id or "-"> TAB <bindings>
 *
 * Bindings are identifier texts joined by ','. A ',', '%', TAB or newline
 * inside a binding is percent-escaped. Forwarding metrics are not written.
 */
void
dump(const Hpt& fib, std::ostream& os);

/**
 * Rebuilds a FIB from dump() output by replaying inserts for the real lines,
 * then checks that every non-real line matches the reconstructed state.
 * Throws ParseError on malformed input or on any mismatch.
 */
Hpt
load(std::istream& is);

} // namespace minet::fib

#endif // MINET_FIB_FIB_IO_HPP
