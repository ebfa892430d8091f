#pragma once

#include <string>
#include <string_view>

namespace guidiff {

/// Escapes &, <, >, " and ' for use in XML/HTML text and attribute values.
std::string xml_escape(std::string_view s);

/// Fixed-point formatting with `digits` decimals, locale independent.
std::string format_fixed(double v, int digits);

}  // namespace guidiff
