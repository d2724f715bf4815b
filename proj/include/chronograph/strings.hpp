#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chronograph {

// Lowercases ASCII letters plus the Latin-1 supplement block encoded as
// UTF-8 (À..Þ -> à..þ), which covers the accented letters in the bundled
// de/es/pt lexicons. Other bytes pass through unchanged.
std::string to_lower(std::string_view s);

// Splits on word boundaries: a token is a maximal run of ASCII alphanumerics
// or non-ASCII bytes. Punctuation, whitespace and digits-only handling follow
// from that rule ("don't" -> "don", "t").
std::vector<std::string> tokenize(std::string_view text);

// Number of Unicode code points in a UTF-8 string (malformed bytes count 1).
std::size_t utf8_length(std::string_view s);

// Percent-encodes everything outside [A-Za-z0-9._-] for filesystem-safe
// article file names; decode reverses it.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

std::string trim(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

}  // namespace chronograph
