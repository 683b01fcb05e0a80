#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maturity/model.hpp"
#include "maturity/scoring.hpp"

namespace maturity {

struct PracticeGap {
  PracticeId practice;
  int agreed = 0;
  int total = 0;
};

struct FlipCandidate {
  QuestionId question;
  int rating = 0;  // current rating, < 3 by construction
};

// What separates an organization from a target maturity level: the agreed
// shortfall and the non-agreed statements closest to agreement. Mechanical
// distance only, no improvement advice.
struct GapReport {
  std::string organization;
  int current_bml = 0;
  int target_level = 0;
  int deficit = 0;  // max(0, pass_threshold - n_agreed) at the target
  std::vector<PracticeGap> weakest_practices;   // ascending agreed/total
  std::vector<FlipCandidate> flip_candidates;   // rating descending, then id
};

// target = nullopt picks bml + 1 (or level 1 when nothing passed), capped at
// the model's top level. Throws Error(target_out_of_range) for an explicit
// target outside the model.
GapReport analyze_gap(const AssessmentResult& result, const MaturityModel& m,
                      std::optional<int> target = std::nullopt);

}  // namespace maturity
