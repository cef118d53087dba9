#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pxl::text {

std::string trim(std::string_view s);
std::string lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Strict real parse of a whole token; throws ConfigError naming `what`.
double to_real(std::string_view token, std::string_view what);

struct Call {
  std::string name;
  std::vector<double> args;
};

/// Parses "name(a, b, ...)"; throws ConfigError on malformed input.
Call parse_call(std::string_view text);

/// Shortest round-trip-ish formatting used in labels ("2", "0.5", "1e-06").
std::string format_number(double v);

}  // namespace pxl::text
