#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maturity/ids.hpp"
#include "maturity/model.hpp"

namespace maturity {

// How respondents expressed their answers.
enum class Encoding { scale, value, percent };

// What to do with unanswered questions. rate_as_1 treats a blank as
// "not agree" and keeps it in the level's denominator; exclude drops it
// from the denominator and recomputes the pass threshold accordingly.
enum class BlankPolicy { rate_as_1, exclude };

// One point on the five-point agreement scale:
// 5 complete agree, 4 largely agree, 3 partially agree, 2 not agree,
// 1 doesn't apply.
class ScalePoint {
 public:
  explicit ScalePoint(int point);
  int point() const { return point_; }

 private:
  int point_;
};

// The 1..4 rating a statement receives; >= 3 counts as agreed.
class PerformanceRating {
 public:
  explicit PerformanceRating(int value);
  int value() const { return value_; }
  bool agreed() const { return value_ >= 3; }
  friend auto operator<=>(const PerformanceRating&, const PerformanceRating&) = default;

 private:
  int value_;
};

// A respondent's raw answer to one question. The meaning of `raw` depends on
// the response set's encoding; no value means the question was left blank.
struct Answer {
  QuestionId question;
  std::optional<double> raw;

  bool blank() const { return !raw.has_value(); }
};

struct ResponseSet {
  std::string respondent;
  std::string organization;
  Encoding encoding = Encoding::value;
  std::map<QuestionId, Answer> answers;  // absent key = blank
  std::string note;                      // free-form provenance, preserved by I/O
};

struct LevelScore {
  int level = 0;
  int n_questions = 0;
  int n_agreed = 0;
  int pass_threshold = 0;
  bool passed = false;
};

struct PracticeTally {
  int agreed = 0;
  int total = 0;
};

struct AssessmentResult {
  std::string organization;
  std::vector<LevelScore> per_level;  // ascending level index
  int bml = 0;                        // 0 = no level passed
  std::map<QuestionId, PerformanceRating> per_question_ratings;
  std::map<PracticeId, PracticeTally> per_practice_profile;

  const LevelScore* find_level(int index) const;
};

// Scale-point to rating: 5->4, 4->3, 3->2, 2->1, and 1 (doesn't apply) -> 4.
PerformanceRating rate_scale_point(ScalePoint p);

// Agreement-percent bands: [80,100] -> 4, [66.7,80) -> 3, [33.3,66.7) -> 2,
// [0,33.3) -> 1. Throws Error(out_of_range_percent) outside [0,100].
PerformanceRating rate_percent(double pct);

// Dispatch over the response encoding; nullopt only for a blank answer under
// BlankPolicy::exclude. Throws Error(encoding_mismatch) when the raw value is
// not valid for the encoding.
std::optional<PerformanceRating> rate_answer(const Answer& a, Encoding encoding,
                                             BlankPolicy policy);

// Minimum agreed statements for a level of n questions: round-half-up of
// n * pass_fraction, computed exactly in integer arithmetic.
int pass_threshold(int n_questions, const Fraction& pass_fraction);

// Full rating pass over every question in the model. Throws
// Error(unknown_question) if the response answers a question the model does
// not define.
AssessmentResult score_assessment(const MaturityModel& m, const ResponseSet& r,
                                  BlankPolicy policy = BlankPolicy::rate_as_1);

// Combines multiple respondents from one organization into a single
// value-encoded response: per-question lower median of the rated values,
// blank only where every respondent left a blank.
ResponseSet aggregate_respondents(const MaturityModel& m,
                                  const std::vector<ResponseSet>& rs);

const char* encoding_name(Encoding e);
std::optional<Encoding> encoding_from_name(std::string_view name);

}  // namespace maturity
