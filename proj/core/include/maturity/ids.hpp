#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace maturity {

// One business practice at one maturity level, rendered as
// "BP.{dimension}.{level}.{practice}".
struct PracticeId {
  int dimension = 0;
  int level = 0;
  int practice = 0;

  auto operator<=>(const PracticeId&) const = default;
  std::string str() const;
};

// One questionnaire statement, rendered as
// "Q.{dimension}.{level}.{practice}.{question}".
struct QuestionId {
  int dimension = 0;
  int level = 0;
  int practice = 0;
  int question = 0;

  auto operator<=>(const QuestionId&) const = default;
  PracticeId practice_id() const { return {dimension, level, practice}; }
  std::string str() const;
};

// Serialization and display order: levels first, then the id fields.
bool canonical_less(const QuestionId& a, const QuestionId& b);

// Exact grammar match, no whitespace tolerated, all fields >= 1.
// Throw Error(malformed_id) otherwise.
PracticeId parse_practice_id(std::string_view s);
QuestionId parse_question_id(std::string_view s);

}  // namespace maturity
