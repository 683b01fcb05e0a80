#pragma once

#include <stdexcept>
#include <string>

namespace maturity {

enum class ErrorKind {
  malformed_id,
  schema,
  io,
  bad_argument,
  unknown_question,
  encoding_mismatch,
  out_of_range_percent,
  mixed_organization,
  empty_input,
  single_item_construct,
  zero_total_variance,
  missing_column,
  insufficient_respondents,
  not_symmetric,
  no_convergence,
  target_out_of_range,
};

// All domain and ingestion failures are thrown as Error. The CLI maps
// io/schema errors to exit 2 and everything else to exit 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_io_or_schema() const noexcept {
    return kind_ == ErrorKind::io || kind_ == ErrorKind::schema;
  }

 private:
  ErrorKind kind_;
};

}  // namespace maturity
