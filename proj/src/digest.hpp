#pragma once
// FNV-1a, for short content digests in certificates and files

#include <cstdint>
#include <string>

namespace cantor::detail {

inline std::uint64_t fnv(std::string const& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

inline std::string hex(std::uint64_t h) {
  static char const* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = d[h & 15];
  return s;
}

}  // namespace cantor::detail
