#include <doctest.h>

#include <algorithm>
#include <map>

#include "maturity/errors.hpp"
#include "maturity/model.hpp"
#include "test_util.hpp"

using namespace maturity;

namespace {

// The published question-count matrix, (level, practice abbrev) -> count.
const std::map<int, std::map<std::string, int>> kExpectedCounts = {
    {1, {{"MO", 1}, {"RM", 2}, {"OE", 2}, {"FM", 2}, {"AM", 2}, {"SP", 1}, {"BV", 1}, {"IN", 1}}},
    {2, {{"MO", 3}, {"RM", 3}, {"OE", 3}, {"FM", 2}, {"AM", 2}, {"SP", 2}, {"BV", 1}, {"IN", 2}}},
    {3, {{"MO", 3}, {"RM", 2}, {"OE", 2}, {"FM", 3}, {"AM", 3}, {"SP", 3}, {"BV", 3}, {"IN", 3}}},
    {4, {{"MO", 5}, {"RM", 3}, {"OE", 3}, {"FM", 3}, {"AM", 3}, {"SP", 2}, {"BV", 2}, {"IN", 2}}},
    {5, {{"MO", 3}, {"RM", 1}, {"OE", 2}, {"FM", 2}, {"AM", 3}, {"SP", 2}, {"BV", 3}, {"IN", 2}}},
};

bool contains_violation(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.begin(), r.end(), [&](const std::string& v) {
    return v.find(needle) != std::string::npos;
  });
}

// Removes one question by id from a copy of the model.
MaturityModel without_question(MaturityModel m, const QuestionId& id) {
  for (auto& level : m.levels)
    std::erase_if(level.questions, [&](const Question& q) { return q.id == id; });
  return m;
}

}  // namespace

TEST_CASE("bundled model structure") {
  const MaturityModel& m = bundled_model();

  CHECK(m.question_count() == 93);
  CHECK(m.pass_fraction == Fraction::of(4, 5));
  CHECK(m.dimensions.size() == 3);
  CHECK(m.practices.size() == 8);

  REQUIRE(m.levels.size() == 5);
  const char* names[] = {"reactive", "awareness", "extrapolate", "proactive",
                         "strategic"};
  const std::size_t totals[] = {12, 18, 22, 23, 18};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(m.levels[i].index == static_cast<int>(i) + 1);
    CHECK(m.levels[i].name == names[i]);
    CHECK(m.levels[i].questions.size() == totals[i]);
    CHECK_FALSE(m.levels[i].description.empty());
  }
}

TEST_CASE("bundled per-level per-practice counts match the published matrix") {
  const MaturityModel& m = bundled_model();
  for (const auto& level : m.levels) {
    std::map<int, int> actual;
    for (const auto& q : level.questions) ++actual[q.id.practice];
    for (const auto& p : m.practices) {
      INFO("level ", level.index, " practice ", p.abbrev);
      CHECK(actual[p.id] == kExpectedCounts.at(level.index).at(p.abbrev));
    }
  }
}

TEST_CASE("bundled practice table ties practices to dimensions") {
  const MaturityModel& m = bundled_model();
  auto dim_of = [&](int practice) { return m.find_practice(practice)->dimension; };
  for (int p : {1, 2, 3}) CHECK(dim_of(p) == 1);
  for (int p : {4, 5}) CHECK(dim_of(p) == 2);
  for (int p : {6, 7, 8}) CHECK(dim_of(p) == 3);

  CHECK(m.find_dimension(1)->name == "Marketing strategy");
  CHECK(m.find_dimension(2)->name == "Portfolio management");
  CHECK(m.find_dimension(3)->name == "Business planning");

  const std::pair<const char*, const char*> practices[] = {
      {"Market orientation", "MO"},       {"Relationships management", "RM"},
      {"Order of entry to the market", "OE"}, {"Financial management", "FM"},
      {"Assets management", "AM"},        {"Strategic planning", "SP"},
      {"Business vision", "BV"},          {"Innovation", "IN"}};
  for (int p = 1; p <= 8; ++p) {
    CHECK(m.find_practice(p)->name == practices[p - 1].first);
    CHECK(m.find_practice(p)->abbrev == practices[p - 1].second);
  }
}

TEST_CASE("bundled model validates cleanly") {
  CHECK(validate_model(bundled_model()).empty());
}

TEST_CASE("deleting the last proactive MO question breaks the declared count") {
  MaturityModel m = without_question(bundled_model(), QuestionId{1, 4, 1, 5});
  ValidationReport r = validate_model(m);
  REQUIRE_FALSE(r.empty());
  CHECK(contains_violation(r, "level 4 practice MO count 4 ≠ 5"));
}

TEST_CASE("deleting a middle question breaks contiguity and the count") {
  MaturityModel m = without_question(bundled_model(), QuestionId{1, 4, 1, 3});
  ValidationReport r = validate_model(m);
  CHECK(contains_violation(r, "not contiguous"));
  CHECK(contains_violation(r, "level 4 practice MO count 4 ≠ 5"));
}

TEST_CASE("every single-question deletion is caught") {
  const MaturityModel& bundled = bundled_model();
  for (const QuestionId& id : bundled.question_ids()) {
    MaturityModel m = without_question(bundled, id);
    INFO("deleted ", id.str());
    CHECK_FALSE(validate_model(m).empty());
  }
}

TEST_CASE("duplicate question id is a violation") {
  MaturityModel m = bundled_model();
  Question copy = m.levels[1].questions.front();  // Q.1.2.1.1
  m.levels[1].questions.push_back(copy);
  ValidationReport r = validate_model(m);
  CHECK(contains_violation(r, "duplicate question id"));
}

TEST_CASE("renumbering a question is caught") {
  MaturityModel m = bundled_model();
  // Q.1.2.1.3 -> Q.1.2.1.9: gap in the numbering
  for (auto& q : m.levels[1].questions)
    if (q.id == QuestionId{1, 2, 1, 3}) q.id.question = 9;
  CHECK(contains_violation(validate_model(m), "not contiguous"));
}

TEST_CASE("re-dimensioning a practice is caught") {
  MaturityModel m = bundled_model();
  for (auto& p : m.practices)
    if (p.id == 4) p.dimension = 3;
  ValidationReport r = validate_model(m);
  CHECK(contains_violation(r, "dimension"));
  CHECK_FALSE(r.empty());
}

TEST_CASE("pass fraction bounds") {
  MaturityModel m = bundled_model();
  m.pass_fraction = Fraction::of(6, 5);
  CHECK(contains_violation(validate_model(m), "pass_fraction"));
  m.pass_fraction = Fraction::of(0, 5);
  CHECK(contains_violation(validate_model(m), "pass_fraction"));
}

TEST_CASE("save then load is identity on the bundled model") {
  const MaturityModel& m = bundled_model();
  std::string saved = save_model(m);
  MaturityModel reloaded = load_model(saved);

  CHECK(reloaded.name == m.name);
  CHECK(reloaded.pass_fraction == m.pass_fraction);
  CHECK(reloaded.dimensions.size() == m.dimensions.size());
  CHECK(reloaded.practices.size() == m.practices.size());
  REQUIRE(reloaded.levels.size() == m.levels.size());
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    CHECK(reloaded.levels[i].index == m.levels[i].index);
    CHECK(reloaded.levels[i].name == m.levels[i].name);
    CHECK(reloaded.levels[i].description == m.levels[i].description);
    CHECK(reloaded.levels[i].question_counts == m.levels[i].question_counts);
    REQUIRE(reloaded.levels[i].questions.size() == m.levels[i].questions.size());
    for (std::size_t k = 0; k < m.levels[i].questions.size(); ++k) {
      CHECK(reloaded.levels[i].questions[k].id == m.levels[i].questions[k].id);
      CHECK(reloaded.levels[i].questions[k].text == m.levels[i].questions[k].text);
    }
  }
}

TEST_CASE("the shipped asset is in canonical form") {
  std::string asset(bundled_model_json());
  CHECK(save_model(load_model(asset)) == asset);
}

TEST_CASE("schema errors carry a location") {
  CHECK_THROWS_AS(load_model(""), Error);
  CHECK_THROWS_AS(load_model("{}"), Error);
  CHECK_THROWS_AS(load_model("[]"), Error);

  try {
    load_model(R"({"name": 3, "pass_fraction": 0.8, "dimensions": [],
                   "practices": [], "levels": []})");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::schema);
    CHECK(std::string(e.what()).find("$.name") != std::string::npos);
  }

  try {
    load_model(R"({"name": "x", "pass_fraction": 0.8, "dimensions": [],
                   "practices": [], "levels": [], "bogus": 1})");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
}

TEST_CASE("semantic duplicates load and are reported by validation") {
  MaturityModel m = bundled_model();
  Question copy = m.levels[0].questions.front();
  m.levels[0].questions.push_back(copy);
  std::string saved = save_model(m);
  MaturityModel reloaded = load_model(saved);  // must not throw
  CHECK(contains_violation(validate_model(reloaded), "duplicate question id"));
}

TEST_CASE("fraction parsing and rendering") {
  CHECK(Fraction::parse("0.8") == Fraction::of(4, 5));
  CHECK(Fraction::parse("4/5") == Fraction::of(4, 5));
  CHECK(Fraction::parse("1") == Fraction::of(1, 1));
  CHECK(Fraction::parse("0.375") == Fraction::of(3, 8));
  CHECK(Fraction::of(4, 5).str() == "0.8");
  CHECK(Fraction::of(3, 8).str() == "0.375");
  CHECK(Fraction::of(1, 3).str() == "1/3");
  CHECK(Fraction::of(1, 1).str() == "1");
  CHECK_THROWS_AS(Fraction::parse("abc"), Error);
  CHECK_THROWS_AS(Fraction::parse("1/0"), Error);
}

TEST_CASE("a model with a non-terminating pass fraction round-trips") {
  MaturityModel m = bundled_model();
  m.pass_fraction = Fraction::of(2, 3);
  std::string saved = save_model(m);
  CHECK(load_model(saved).pass_fraction == Fraction::of(2, 3));
  CHECK(save_model(load_model(saved)) == saved);
}

TEST_CASE("load_model_file reports unreadable paths as io errors") {
  try {
    load_model_file(fixture_path("does_not_exist.json"));
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
