#include "maturity/gap.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "maturity/errors.hpp"

namespace maturity {

GapReport analyze_gap(const AssessmentResult& result, const MaturityModel& m,
                      std::optional<int> target) {
  if (m.levels.empty())
    throw Error(ErrorKind::bad_argument, "model has no levels");
  const int max_level = m.levels.back().index;

  GapReport report;
  report.organization = result.organization;
  report.current_bml = result.bml;
  if (target) {
    if (*target < 1 || *target > max_level)
      throw Error(ErrorKind::target_out_of_range,
                  fmt::format("target level {} outside 1..{}", *target, max_level));
    report.target_level = *target;
  } else {
    report.target_level = std::min(result.bml + 1, max_level);
    if (report.target_level < 1) report.target_level = 1;
  }

  const LevelScore* score = result.find_level(report.target_level);
  if (score == nullptr)
    throw Error(ErrorKind::bad_argument,
                fmt::format("result has no score for level {}", report.target_level));
  report.deficit = std::max(0, score->pass_threshold - score->n_agreed);

  for (const auto& [pid, tally] : result.per_practice_profile) {
    if (pid.level != report.target_level || tally.total == 0) continue;
    report.weakest_practices.push_back({pid, tally.agreed, tally.total});
  }
  std::sort(report.weakest_practices.begin(), report.weakest_practices.end(),
            [](const PracticeGap& a, const PracticeGap& b) {
              double ra = static_cast<double>(a.agreed) / a.total;
              double rb = static_cast<double>(b.agreed) / b.total;
              if (ra != rb) return ra < rb;
              return a.practice.practice < b.practice.practice;
            });

  for (const auto& [qid, rating] : result.per_question_ratings) {
    if (qid.level != report.target_level || rating.agreed()) continue;
    report.flip_candidates.push_back({qid, rating.value()});
  }
  std::sort(report.flip_candidates.begin(), report.flip_candidates.end(),
            [](const FlipCandidate& a, const FlipCandidate& b) {
              if (a.rating != b.rating) return a.rating > b.rating;
              return canonical_less(a.question, b.question);
            });

  return report;
}

}  // namespace maturity
