#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "maturity/ids.hpp"

namespace maturity {

// Exact fraction so pass thresholds round half-up without floating error.
// Accepts "0.8", "1", or "4/5"; stored reduced with a positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction parse(std::string_view text);
  static Fraction of(std::int64_t num, std::int64_t den);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // Shortest terminating decimal where one exists, otherwise "num/den".
  std::string str() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct Dimension {
  int index = 0;
  std::string name;
};

struct Practice {
  int id = 0;
  std::string name;
  std::string abbrev;
  int dimension = 0;
};

struct Question {
  QuestionId id;
  std::string text;
};

struct LevelSpec {
  int index = 0;
  std::string name;
  std::string description;
  // Declared per-practice question counts (practice id -> count). Empty map
  // means no declaration; validation checks the actual counts against it
  // when present.
  std::map<int, int> question_counts;
  std::vector<Question> questions;
};

// A staged questionnaire instrument. Immutable after load; every operation
// in this library is a pure function of its inputs.
struct MaturityModel {
  std::string name;
  Fraction pass_fraction = Fraction::of(4, 5);
  std::vector<Dimension> dimensions;
  std::vector<Practice> practices;
  std::vector<LevelSpec> levels;  // ascending level index

  const Dimension* find_dimension(int index) const;
  const Practice* find_practice(int id) const;
  const LevelSpec* find_level(int index) const;
  const Question* find_question(const QuestionId& id) const;
  bool has_question(const QuestionId& id) const { return find_question(id) != nullptr; }

  std::size_t question_count() const;
  // All question ids in canonical (level, dimension, practice, question) order.
  std::vector<QuestionId> question_ids() const;
};

// One message per violated invariant, deterministic order.
using ValidationReport = std::vector<std::string>;

ValidationReport validate_model(const MaturityModel& m);

// Throws Error(schema) with a JSON-path location on malformed documents.
// Semantic violations (duplicate ids, broken counts) load fine and are
// reported by validate_model instead.
MaturityModel load_model(std::string_view json_text);
MaturityModel load_model_file(const std::string& path);

// Canonical serialization: fixed field order, questions sorted canonically.
// save_model(load_model(doc)) is byte-stable.
std::string save_model(const MaturityModel& m);

// The instrument shipped with the library: five levels (reactive, awareness,
// extrapolate, proactive, strategic), eight practices over three business
// dimensions, 93 questions, pass fraction 0.8.
std::string_view bundled_model_json();
const MaturityModel& bundled_model();

}  // namespace maturity
