#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chronograph {

// Quotes a field when it contains a comma, quote, or newline; embedded
// quotes are doubled per RFC 4180.
std::string csv_field(std::string_view s);

// Scores are printed with 12 significant digits so golden files are stable.
std::string fmt_score(double v);

// Splits one CSV line into fields, honoring RFC 4180 quoting.
std::vector<std::string> parse_csv_row(std::string_view line);

}  // namespace chronograph
