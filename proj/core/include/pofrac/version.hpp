#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pofrac {

// Version string stamped into every output document.
std::string_view version_string();

// FNV-1a 64-bit hash, used to fingerprint canonicalized run configurations.
std::uint64_t fnv1a64(std::string_view data);

// Hex rendering of fnv1a64, e.g. "a1b2c3d4e5f60718".
std::string fingerprint_hex(std::string_view data);

// Locale-independent %.17g-style rendering of a double ('.' decimal separator
// always). Used for CSV output so that files are byte-reproducible.
std::string format_double(double value);

// Shortest round-trip rendering (what the specfun CLI prints).
std::string format_double_shortest(double value);

}  // namespace pofrac
