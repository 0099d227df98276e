#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace dr54 {

// FNV-1a 64-bit hex digest; used for config hashes and matrix checksums.
std::string fnv1a64_hex(const void* data, std::size_t n_bytes);
std::string fnv1a64_hex(const std::string& s);

// Shortest fixed-width text that round-trips a double exactly
// (17 significant digits, C locale).
std::string format_double(double x);

}  // namespace dr54
