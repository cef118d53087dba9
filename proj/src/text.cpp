#include "text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "pxl/error.hpp"

namespace pxl::text {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_real(std::string_view token, std::string_view what) {
  const std::string t = trim(token);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse '" + t + "' as a number for " + std::string(what));
  }
  return value;
}

Call parse_call(std::string_view text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    throw ConfigError("expected name(p1, ...) but got '" + t + "'");
  }
  Call call;
  call.name = lower(trim(std::string_view(t).substr(0, open)));
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (!trim(inner).empty()) {
    for (const auto& piece : split(inner, ',')) call.args.push_back(to_real(piece, t));
  }
  return call;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace pxl::text
