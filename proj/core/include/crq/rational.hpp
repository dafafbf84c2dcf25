#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace crq {

/// Exact rational number. All arithmetic in the library is done on these;
/// binary floating point never enters a coherence decision.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", an integer, or a decimal literal ("0.3" -> 3/10).
/// Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

/// Serializes as "p" or "p/q" with the sign on the numerator.
std::string to_string(const Rat& r);

}  // namespace crq
