#include "maturity/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "maturity/errors.hpp"

namespace maturity {

ScalePoint::ScalePoint(int point) : point_(point) {
  if (point < 1 || point > 5)
    throw Error(ErrorKind::bad_argument,
                fmt::format("scale point {} outside 1..5", point));
}

PerformanceRating::PerformanceRating(int value) : value_(value) {
  if (value < 1 || value > 4)
    throw Error(ErrorKind::bad_argument,
                fmt::format("performance rating {} outside 1..4", value));
}

const LevelScore* AssessmentResult::find_level(int index) const {
  for (const auto& ls : per_level)
    if (ls.level == index) return &ls;
  return nullptr;
}

PerformanceRating rate_scale_point(ScalePoint p) {
  switch (p.point()) {
    case 5: return PerformanceRating(4);
    case 4: return PerformanceRating(3);
    case 3: return PerformanceRating(2);
    case 2: return PerformanceRating(1);
    default: return PerformanceRating(4);  // 1 = doesn't apply
  }
}

PerformanceRating rate_percent(double pct) {
  if (!std::isfinite(pct) || pct < 0.0 || pct > 100.0)
    throw Error(ErrorKind::out_of_range_percent,
                fmt::format("percent {} outside [0, 100]", pct));
  if (pct >= 80.0) return PerformanceRating(4);
  if (pct >= 66.7) return PerformanceRating(3);
  if (pct >= 33.3) return PerformanceRating(2);
  return PerformanceRating(1);
}

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

[[noreturn]] void mismatch(const Answer& a, std::string_view expected) {
  throw Error(ErrorKind::encoding_mismatch,
              fmt::format("answer {} for {} is not {}",
                          a.raw ? fmt::format("{}", *a.raw) : "(blank)",
                          a.question.str(), expected));
}

}  // namespace

std::optional<PerformanceRating> rate_answer(const Answer& a, Encoding encoding,
                                             BlankPolicy policy) {
  if (a.blank()) {
    if (policy == BlankPolicy::exclude) return std::nullopt;
    return PerformanceRating(1);
  }
  double raw = *a.raw;
  switch (encoding) {
    case Encoding::scale:
      if (!is_integer(raw) || raw < 1 || raw > 5)
        mismatch(a, "a scale point (integer 1..5)");
      return rate_scale_point(ScalePoint(static_cast<int>(raw)));
    case Encoding::value:
      if (!is_integer(raw) || raw < 1 || raw > 4)
        mismatch(a, "a rating value (integer 1..4)");
      return PerformanceRating(static_cast<int>(raw));
    case Encoding::percent:
      return rate_percent(raw);
  }
  mismatch(a, "a recognized encoding");
}

int pass_threshold(int n_questions, const Fraction& pass_fraction) {
  if (n_questions < 0)
    throw Error(ErrorKind::bad_argument, "negative question count");
  // round-half-up(n * num/den) = floor((2*n*num + den) / (2*den))
  std::int64_t p = 2 * static_cast<std::int64_t>(n_questions) * pass_fraction.num +
                   pass_fraction.den;
  std::int64_t q = 2 * pass_fraction.den;
  std::int64_t t = p / q;
  if (p % q != 0 && (p < 0) != (q < 0)) --t;  // floor for negative quotients
  return static_cast<int>(t);
}

AssessmentResult score_assessment(const MaturityModel& m, const ResponseSet& r,
                                  BlankPolicy policy) {
  std::set<QuestionId> known;
  for (const auto& level : m.levels)
    for (const auto& q : level.questions) known.insert(q.id);
  for (const auto& [id, answer] : r.answers)
    if (!known.contains(id))
      throw Error(ErrorKind::unknown_question,
                  fmt::format("unknown question id {}", id.str()));

  AssessmentResult result;
  result.organization = r.organization;

  for (const auto& level : m.levels) {
    LevelScore score;
    score.level = level.index;

    std::vector<Question> qs = level.questions;
    std::stable_sort(qs.begin(), qs.end(), [](const Question& a, const Question& b) {
      return canonical_less(a.id, b.id);
    });
    for (const auto& q : qs) {
      Answer answer{q.id, std::nullopt};
      if (auto it = r.answers.find(q.id); it != r.answers.end()) answer = it->second;
      std::optional<PerformanceRating> rating = rate_answer(answer, r.encoding, policy);
      if (!rating) continue;  // blank excluded from the denominator

      result.per_question_ratings.emplace(q.id, *rating);
      auto& tally = result.per_practice_profile[q.id.practice_id()];
      ++tally.total;
      ++score.n_questions;
      if (rating->agreed()) {
        ++tally.agreed;
        ++score.n_agreed;
      }
    }

    score.pass_threshold = pass_threshold(score.n_questions, m.pass_fraction);
    score.passed = score.n_agreed >= score.pass_threshold;
    result.per_level.push_back(score);
    if (score.passed) result.bml = std::max(result.bml, level.index);
  }

  return result;
}

ResponseSet aggregate_respondents(const MaturityModel& m,
                                  const std::vector<ResponseSet>& rs) {
  if (rs.empty())
    throw Error(ErrorKind::empty_input, "no response sets to aggregate");
  for (const auto& r : rs)
    if (r.organization != rs.front().organization)
      throw Error(ErrorKind::mixed_organization,
                  fmt::format("cannot aggregate organizations \"{}\" and \"{}\"",
                              rs.front().organization, r.organization));

  std::set<QuestionId> known;
  for (const auto& level : m.levels)
    for (const auto& q : level.questions) known.insert(q.id);
  for (const auto& r : rs)
    for (const auto& [id, answer] : r.answers)
      if (!known.contains(id))
        throw Error(ErrorKind::unknown_question,
                    fmt::format("unknown question id {}", id.str()));

  ResponseSet out;
  out.organization = rs.front().organization;
  out.encoding = Encoding::value;

  std::vector<std::string> names;
  for (const auto& r : rs) names.push_back(r.respondent);
  std::sort(names.begin(), names.end());
  out.respondent = fmt::format("{}", fmt::join(names, "+"));

  for (const QuestionId& id : m.question_ids()) {
    std::vector<int> rated;
    for (const auto& r : rs) {
      auto it = r.answers.find(id);
      if (it == r.answers.end() || it->second.blank()) continue;
      auto rating = rate_answer(it->second, r.encoding, BlankPolicy::rate_as_1);
      rated.push_back(rating->value());
    }
    if (rated.empty()) continue;  // blank only when all inputs are blank
    std::sort(rated.begin(), rated.end());
    int median = rated[(rated.size() - 1) / 2];  // lower median on even counts
    out.answers.emplace(id, Answer{id, static_cast<double>(median)});
  }
  return out;
}

const char* encoding_name(Encoding e) {
  switch (e) {
    case Encoding::scale: return "scale";
    case Encoding::value: return "value";
    case Encoding::percent: return "percent";
  }
  return "value";
}

std::optional<Encoding> encoding_from_name(std::string_view name) {
  if (name == "scale") return Encoding::scale;
  if (name == "value") return Encoding::value;
  if (name == "percent") return Encoding::percent;
  return std::nullopt;
}

}  // namespace maturity
