#include "dr54/digest.hpp"

#include <cstdio>

namespace dr54 {

std::string fnv1a64_hex(const void* data, std::size_t n_bytes) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n_bytes; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string fnv1a64_hex(const std::string& s) {
  return fnv1a64_hex(s.data(), s.size());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace dr54
