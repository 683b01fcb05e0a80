#include <doctest.h>

#include <algorithm>
#include <random>

#include "maturity/errors.hpp"
#include "maturity/gap.hpp"
#include "maturity/response_io.hpp"
#include "test_util.hpp"

using namespace maturity;

namespace {

ResponseSet org_a() {
  return load_response_json(read_file(fixture_path("org_a_responses.json")));
}

}  // namespace

TEST_CASE("gap to the next level for the case-study fixture") {
  const MaturityModel& m = bundled_model();
  AssessmentResult result = score_assessment(m, org_a());
  GapReport gap = analyze_gap(result, m, 4);

  CHECK(gap.organization == "A");
  CHECK(gap.current_bml == 3);
  CHECK(gap.target_level == 4);
  CHECK(gap.deficit == 8);  // threshold 18, agreed 10

  SUBCASE("auto target is bml + 1") {
    GapReport auto_gap = analyze_gap(result, m);
    CHECK(auto_gap.target_level == 4);
    CHECK(auto_gap.deficit == 8);
  }

  SUBCASE("thirteen non-agreed statements are candidates, ordered by id") {
    const char* expected[] = {
        "Q.1.4.1.1", "Q.1.4.1.2", "Q.1.4.1.3", "Q.1.4.2.1", "Q.1.4.2.3",
        "Q.1.4.3.1", "Q.1.4.3.2", "Q.2.4.4.1", "Q.2.4.5.3", "Q.3.4.6.2",
        "Q.3.4.7.1", "Q.3.4.8.1", "Q.3.4.8.2"};
    REQUIRE(gap.flip_candidates.size() == 13);
    for (std::size_t i = 0; i < 13; ++i) {
      CHECK(gap.flip_candidates[i].question.str() == expected[i]);
      CHECK(gap.flip_candidates[i].rating < 3);
    }
  }

  SUBCASE("no candidate is already agreed") {
    for (const auto& fc : gap.flip_candidates) {
      CHECK_FALSE(result.per_question_ratings.at(fc.question).agreed());
      CHECK(fc.question.level == 4);
    }
  }

  SUBCASE("flipping any deficit-sized candidate subset passes the target") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<FlipCandidate> pool = gap.flip_candidates;
      std::shuffle(pool.begin(), pool.end(), rng);

      ResponseSet flipped = org_a();
      for (int i = 0; i < gap.deficit; ++i) {
        const QuestionId& id = pool[i].question;
        flipped.answers.insert_or_assign(id, Answer{id, 3.0});
      }
      AssessmentResult rescored = score_assessment(m, flipped);
      CHECK(rescored.find_level(4)->passed);
      CHECK(rescored.bml == 4);
    }
  }

  SUBCASE("flipping one fewer than the deficit is not enough") {
    ResponseSet flipped = org_a();
    for (int i = 0; i < gap.deficit - 1; ++i) {
      const QuestionId& id = gap.flip_candidates[i].question;
      flipped.answers.insert_or_assign(id, Answer{id, 3.0});
    }
    CHECK_FALSE(score_assessment(m, flipped).find_level(4)->passed);
  }

  SUBCASE("weakest practices sort ascending by agreement ratio") {
    REQUIRE_FALSE(gap.weakest_practices.empty());
    double prev = -1;
    for (const auto& wp : gap.weakest_practices) {
      double ratio = static_cast<double>(wp.agreed) / wp.total;
      CHECK(ratio >= prev);
      prev = ratio;
      CHECK(wp.practice.level == 4);
    }
    // Innovation (0 of 2) is the weakest proactive practice in the fixture.
    CHECK(gap.weakest_practices.front().practice == PracticeId{3, 4, 8});
  }
}

TEST_CASE("gap when the target already passes") {
  const MaturityModel& m = bundled_model();
  AssessmentResult result = score_assessment(m, org_a());
  GapReport gap = analyze_gap(result, m, 3);
  CHECK(gap.deficit == 0);
}

TEST_CASE("deficit shrinks as answers improve") {
  const MaturityModel& m = bundled_model();
  ResponseSet base = org_a();
  AssessmentResult result = score_assessment(m, base);
  int deficit = analyze_gap(result, m, 4).deficit;

  ResponseSet better = base;
  QuestionId id{1, 4, 1, 1};
  better.answers.insert_or_assign(id, Answer{id, 4.0});
  int improved = analyze_gap(score_assessment(m, better), m, 4).deficit;
  CHECK(improved == deficit - 1);

  // raise an already-agreed answer: no change
  ResponseSet same = base;
  QuestionId agreed_id{1, 4, 1, 4};
  same.answers.insert_or_assign(agreed_id, Answer{agreed_id, 4.0});
  CHECK(analyze_gap(score_assessment(m, same), m, 4).deficit == deficit);
}

TEST_CASE("gap target bounds") {
  const MaturityModel& m = bundled_model();
  AssessmentResult result = score_assessment(m, org_a());
  CHECK_THROWS_AS(analyze_gap(result, m, 0), Error);
  CHECK_THROWS_AS(analyze_gap(result, m, 6), Error);

  SUBCASE("auto target caps at the top level") {
    ResponseSet all4;
    all4.organization = "top";
    all4.encoding = Encoding::value;
    for (const QuestionId& id : m.question_ids())
      all4.answers.emplace(id, Answer{id, 4.0});
    AssessmentResult top = score_assessment(m, all4);
    CHECK(top.bml == 5);
    GapReport gap = analyze_gap(top, m);
    CHECK(gap.target_level == 5);
    CHECK(gap.deficit == 0);
  }

  SUBCASE("auto target for a floor result is level 1") {
    ResponseSet blanks;
    blanks.organization = "floor";
    blanks.encoding = Encoding::value;
    AssessmentResult bottom = score_assessment(m, blanks);
    CHECK(bottom.bml == 0);
    CHECK(analyze_gap(bottom, m).target_level == 1);
  }
}
