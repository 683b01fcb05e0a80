#include "maturity/ids.hpp"

#include <charconv>
#include <vector>

#include <fmt/format.h>

#include "maturity/errors.hpp"

namespace maturity {

namespace {

[[noreturn]] void malformed(std::string_view s, std::string_view why) {
  throw Error(ErrorKind::malformed_id,
              fmt::format("malformed id \"{}\": {}", s, why));
}

// Splits on '.' and parses each piece as a positive decimal integer with no
// leading zeros. The first piece must equal `prefix`.
std::vector<int> parse_fields(std::string_view s, std::string_view prefix,
                              std::size_t arity) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = s.find('.', start);
    if (dot == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, dot - start));
    start = dot + 1;
  }
  if (parts.empty() || parts.front() != prefix)
    malformed(s, fmt::format("expected prefix \"{}\"", prefix));
  if (parts.size() != arity + 1)
    malformed(s, fmt::format("expected {} integer fields, found {}", arity,
                             parts.size() - 1));

  std::vector<int> fields;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string_view f = parts[i];
    if (f.empty()) malformed(s, "empty field");
    for (char c : f)
      if (c < '0' || c > '9') malformed(s, "non-integer field");
    if (f.size() > 1 && f.front() == '0') malformed(s, "leading zero");
    int value = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size())
      malformed(s, "field out of range");
    if (value < 1) malformed(s, "field must be >= 1");
    fields.push_back(value);
  }
  return fields;
}

}  // namespace

std::string PracticeId::str() const {
  return fmt::format("BP.{}.{}.{}", dimension, level, practice);
}

std::string QuestionId::str() const {
  return fmt::format("Q.{}.{}.{}.{}", dimension, level, practice, question);
}

bool canonical_less(const QuestionId& a, const QuestionId& b) {
  auto key = [](const QuestionId& q) {
    return std::tuple(q.level, q.dimension, q.practice, q.question);
  };
  return key(a) < key(b);
}

PracticeId parse_practice_id(std::string_view s) {
  auto f = parse_fields(s, "BP", 3);
  return {f[0], f[1], f[2]};
}

QuestionId parse_question_id(std::string_view s) {
  auto f = parse_fields(s, "Q", 4);
  return {f[0], f[1], f[2], f[3]};
}

}  // namespace maturity
