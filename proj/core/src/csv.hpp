#pragma once

// Small RFC-4180 reader/writer used by response and pilot ingestion and by
// the CSV report format. Internal to the library.

#include <string>
#include <string_view>
#include <vector>

namespace maturity::csv {

// Parses quoted fields, embedded commas/newlines, and CRLF line ends.
// A trailing newline does not produce an empty record.
std::vector<std::vector<std::string>> parse(std::string_view text);

// Quotes the field when it contains a comma, quote, or newline.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace maturity::csv
