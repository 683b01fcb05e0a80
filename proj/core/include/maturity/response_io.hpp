#pragma once

#include <string>
#include <string_view>

#include "maturity/scoring.hpp"

namespace maturity {

// JSON response document:
//   {"organization": "A", "respondent": "a1", "encoding": "value",
//    "note": "...", "answers": {"Q.1.1.1.1": 1, ...}}
// Absent (or null) answer keys are blanks; duplicate keys are rejected.
ResponseSet load_response_json(std::string_view json_text);
std::string save_response_json(const ResponseSet& r);

// CSV variant with a `question_id,answer` header; a blank answer cell is a
// blank answer. Organization, respondent, and encoding are not part of the
// file and must be supplied by the caller.
ResponseSet load_response_csv(std::string_view csv_text, std::string organization,
                              std::string respondent, Encoding encoding);

// Dispatches on the ".csv" extension, otherwise expects JSON. The metadata
// arguments apply to CSV files only.
ResponseSet load_response_file(const std::string& path,
                               const std::string& csv_organization = "",
                               const std::string& csv_respondent = "",
                               Encoding csv_encoding = Encoding::value);

}  // namespace maturity
