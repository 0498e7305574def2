#pragma once

#include <string>

namespace bosefold {

/// Fixed 17-significant-digit rendering, locale independent. Round-trips every double.
std::string format_double(double x);

/// Strict locale-independent parse of a full token; throws InvalidInput on trailing junk.
double parse_double(const std::string& token);
int parse_int(const std::string& token);

}  // namespace bosefold
