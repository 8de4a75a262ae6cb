#include "padic/int128.hpp"

#include <stdexcept>

namespace padic {

std::string to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  UWide u = neg ? UWide(-(v + 1)) + 1 : UWide(v);
  char buf[48];
  int pos = sizeof(buf);
  while (u != 0) {
    buf[--pos] = char('0' + int(u % 10));
    u /= 10;
  }
  if (neg) buf[--pos] = '-';
  return std::string(buf + pos, sizeof(buf) - pos);
}

Wide wide_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("wide_from_string: empty input");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("wide_from_string: no digits");
  UWide u = 0;
  const UWide limit = neg ? UWide(1) << 127 : (UWide(1) << 127) - 1;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw std::invalid_argument("wide_from_string: bad digit");
    UWide next = u * 10 + UWide(c - '0');
    if (u > (limit - UWide(c - '0')) / 10) throw std::out_of_range("wide_from_string: overflow");
    u = next;
  }
  if (neg) {
    if (u == UWide(1) << 127) return Wide(-(Wide((u - 1))) - 1);
    return -Wide(u);
  }
  return Wide(u);
}

}  // namespace padic
