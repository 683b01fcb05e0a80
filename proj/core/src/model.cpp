#include "maturity/model.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "maturity/errors.hpp"

namespace maturity {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Fraction

Fraction Fraction::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::bad_argument, "fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{num, den};
}

Fraction Fraction::parse(std::string_view text) {
  auto fail = [&]() -> void {
    throw Error(ErrorKind::bad_argument,
                fmt::format("cannot parse fraction \"{}\"", text));
  };
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty() || s.size() > 18) fail();
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };

  bool negative = text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  if (body.empty()) fail();

  std::size_t slash = body.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t n = parse_int(body.substr(0, slash));
    std::int64_t d = parse_int(body.substr(slash + 1));
    if (d == 0) fail();
    return of(negative ? -n : n, d);
  }

  std::size_t dot = body.find('.');
  if (dot == std::string_view::npos) {
    std::int64_t n = parse_int(body);
    return of(negative ? -n : n, 1);
  }
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = body.substr(dot + 1);
  if (whole.empty() || frac.empty() || frac.size() > 15) fail();
  std::int64_t w = parse_int(whole);
  std::int64_t f = parse_int(frac);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t num = w * den + f;
  return of(negative ? -num : num, den);
}

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);

  // den is reduced; a terminating decimal exists iff den = 2^a * 5^b.
  std::int64_t d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return fmt::format("{}/{}", num, den);

  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::int64_t scaled = num * (scale / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::int64_t whole = scaled / scale;
  std::int64_t rest = scaled % scale;
  return fmt::format("{}{}.{:0{}}", negative ? "-" : "", whole, rest, digits);
}

// ---------------------------------------------------------------------------
// Lookups

const Dimension* MaturityModel::find_dimension(int index) const {
  for (const auto& d : dimensions)
    if (d.index == index) return &d;
  return nullptr;
}

const Practice* MaturityModel::find_practice(int id) const {
  for (const auto& p : practices)
    if (p.id == id) return &p;
  return nullptr;
}

const LevelSpec* MaturityModel::find_level(int index) const {
  for (const auto& l : levels)
    if (l.index == index) return &l;
  return nullptr;
}

const Question* MaturityModel::find_question(const QuestionId& id) const {
  for (const auto& l : levels)
    for (const auto& q : l.questions)
      if (q.id == id) return &q;
  return nullptr;
}

std::size_t MaturityModel::question_count() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.questions.size();
  return n;
}

std::vector<QuestionId> MaturityModel::question_ids() const {
  std::vector<QuestionId> ids;
  ids.reserve(question_count());
  for (const auto& l : levels)
    for (const auto& q : l.questions) ids.push_back(q.id);
  std::sort(ids.begin(), ids.end(), canonical_less);
  return ids;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string practice_label(const MaturityModel& m, int practice_id) {
  if (const Practice* p = m.find_practice(practice_id); p && !p->abbrev.empty())
    return p->abbrev;
  return std::to_string(practice_id);
}

}  // namespace

ValidationReport validate_model(const MaturityModel& m) {
  ValidationReport r;

  if (m.pass_fraction.num <= 0 || m.pass_fraction.num > m.pass_fraction.den)
    r.push_back(fmt::format("pass_fraction {} out of range (0, 1]",
                            m.pass_fraction.str()));

  std::set<int> dim_indices;
  for (const auto& d : m.dimensions) {
    if (d.index < 1) r.push_back(fmt::format("dimension index {} < 1", d.index));
    if (!dim_indices.insert(d.index).second)
      r.push_back(fmt::format("duplicate dimension index {}", d.index));
  }

  std::set<int> practice_ids;
  std::set<std::string> abbrevs;
  for (const auto& p : m.practices) {
    if (p.id < 1) r.push_back(fmt::format("practice id {} < 1", p.id));
    if (!practice_ids.insert(p.id).second)
      r.push_back(fmt::format("duplicate practice id {}", p.id));
    if (!p.abbrev.empty() && !abbrevs.insert(p.abbrev).second)
      r.push_back(fmt::format("duplicate practice abbrev {}", p.abbrev));
    if (!dim_indices.contains(p.dimension))
      r.push_back(fmt::format("practice {} references undeclared dimension {}",
                              p.id, p.dimension));
  }

  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    int expected = static_cast<int>(i) + 1;
    if (m.levels[i].index != expected)
      r.push_back(fmt::format("level index {} at position {}, expected {}",
                              m.levels[i].index, i + 1, expected));
  }

  std::set<QuestionId> seen;
  for (const auto& level : m.levels) {
    for (const auto& [pid, count] : level.question_counts)
      if (!practice_ids.contains(pid))
        r.push_back(fmt::format(
            "level {} question_counts names undeclared practice {}",
            level.index, pid));

    std::vector<Question> qs = level.questions;
    std::stable_sort(qs.begin(), qs.end(), [](const Question& a, const Question& b) {
      return canonical_less(a.id, b.id);
    });

    for (const auto& q : qs) {
      const std::string id = q.id.str();
      if (q.id.level != level.index)
        r.push_back(fmt::format("question {} level {} does not match level {}",
                                id, q.id.level, level.index));
      const Practice* p = m.find_practice(q.id.practice);
      if (p == nullptr)
        r.push_back(fmt::format("question {} references undeclared practice {}",
                                id, q.id.practice));
      else if (q.id.dimension != p->dimension)
        r.push_back(fmt::format("question {} dimension {} ≠ practice {} dimension {}",
                                id, q.id.dimension, p->id, p->dimension));
      if (q.text.empty())
        r.push_back(fmt::format("question {} has empty text", id));
      if (!seen.insert(q.id).second)
        r.push_back(fmt::format("duplicate question id {}", id));
    }

    // Question numbers within each (practice, level) must be 1..k.
    std::map<int, std::vector<int>> by_practice;
    for (const auto& q : qs) by_practice[q.id.practice].push_back(q.id.question);
    for (auto& [pid, numbers] : by_practice) {
      std::sort(numbers.begin(), numbers.end());
      bool contiguous = true;
      for (std::size_t i = 0; i < numbers.size(); ++i)
        if (numbers[i] != static_cast<int>(i) + 1) contiguous = false;
      if (!contiguous)
        r.push_back(fmt::format(
            "level {} practice {} question numbers not contiguous from 1",
            level.index, practice_label(m, pid)));
    }

    if (!level.question_counts.empty()) {
      for (const auto& [pid, declared] : level.question_counts) {
        int actual = by_practice.contains(pid)
                         ? static_cast<int>(by_practice[pid].size())
                         : 0;
        if (actual != declared)
          r.push_back(fmt::format("level {} practice {} count {} ≠ {}",
                                  level.index, practice_label(m, pid), actual,
                                  declared));
      }
      for (const auto& [pid, numbers] : by_practice)
        if (!level.question_counts.contains(pid))
          r.push_back(fmt::format(
              "level {} practice {} count {} missing from question_counts",
              level.index, practice_label(m, pid), numbers.size()));
    }
  }

  return r;
}

// ---------------------------------------------------------------------------
// JSON schema

namespace {

[[noreturn]] void schema_error(const std::string& path, std::string_view why) {
  throw Error(ErrorKind::schema, fmt::format("{}: {}", path, why));
}

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : required)
      if (key == k) known = true;
    for (const char* k : optional)
      if (key == k) known = true;
    if (!known) schema_error(path, fmt::format("unexpected field \"{}\"", key));
  }
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    schema_error(path, "integer out of range");
  return static_cast<int>(v);
}

Fraction get_fraction(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return Fraction::parse(j.get<std::string>());
    if (j.is_number()) return Fraction::parse(j.dump());
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
  schema_error(path, "expected a number or fraction string");
}

}  // namespace

MaturityModel load_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, fmt::format("invalid JSON: {}", e.what()));
  }

  MaturityModel m;
  check_keys(doc, "$", {"name", "pass_fraction", "dimensions", "practices", "levels"});
  m.name = get_string(field(doc, "$", "name"), "$.name");
  m.pass_fraction = get_fraction(field(doc, "$", "pass_fraction"), "$.pass_fraction");

  const json& dims = field(doc, "$", "dimensions");
  if (!dims.is_array()) schema_error("$.dimensions", "expected an array");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::string path = fmt::format("$.dimensions[{}]", i);
    check_keys(dims[i], path, {"index", "name"});
    m.dimensions.push_back({get_int(field(dims[i], path, "index"), path + ".index"),
                            get_string(field(dims[i], path, "name"), path + ".name")});
  }

  const json& practices = field(doc, "$", "practices");
  if (!practices.is_array()) schema_error("$.practices", "expected an array");
  for (std::size_t i = 0; i < practices.size(); ++i) {
    std::string path = fmt::format("$.practices[{}]", i);
    check_keys(practices[i], path, {"id", "name", "abbrev", "dimension"});
    m.practices.push_back(
        {get_int(field(practices[i], path, "id"), path + ".id"),
         get_string(field(practices[i], path, "name"), path + ".name"),
         get_string(field(practices[i], path, "abbrev"), path + ".abbrev"),
         get_int(field(practices[i], path, "dimension"), path + ".dimension")});
  }

  const json& levels = field(doc, "$", "levels");
  if (!levels.is_array()) schema_error("$.levels", "expected an array");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::string path = fmt::format("$.levels[{}]", i);
    check_keys(levels[i], path, {"index", "name", "description", "questions"},
               {"question_counts"});
    LevelSpec level;
    level.index = get_int(field(levels[i], path, "index"), path + ".index");
    level.name = get_string(field(levels[i], path, "name"), path + ".name");
    level.description =
        get_string(field(levels[i], path, "description"), path + ".description");

    if (auto it = levels[i].find("question_counts"); it != levels[i].end()) {
      std::string cpath = path + ".question_counts";
      if (!it->is_object()) schema_error(cpath, "expected an object");
      for (auto& [abbrev, count] : it->items()) {
        const Practice* p = nullptr;
        for (const auto& cand : m.practices)
          if (cand.abbrev == abbrev) p = &cand;
        if (p == nullptr)
          schema_error(cpath, fmt::format("unknown practice abbrev \"{}\"", abbrev));
        level.question_counts[p->id] = get_int(count, cpath + "." + abbrev);
      }
    }

    const json& questions = field(levels[i], path, "questions");
    if (!questions.is_array()) schema_error(path + ".questions", "expected an array");
    for (std::size_t k = 0; k < questions.size(); ++k) {
      std::string qpath = fmt::format("{}.questions[{}]", path, k);
      check_keys(questions[k], qpath, {"id", "text"});
      Question q;
      try {
        q.id = parse_question_id(
            get_string(field(questions[k], qpath, "id"), qpath + ".id"));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::malformed_id) throw;
        schema_error(qpath + ".id", e.what());
      }
      q.text = get_string(field(questions[k], qpath, "text"), qpath + ".text");
      level.questions.push_back(std::move(q));
    }
    m.levels.push_back(std::move(level));
  }

  return m;
}

MaturityModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read \"{}\"", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string save_model(const MaturityModel& m) {
  ordered_json doc;
  doc["name"] = m.name;

  // Emit a plain number when its shortest decimal form parses back to the
  // same fraction; otherwise keep the exact "num/den" string.
  bool exact_decimal = false;
  json numeric = m.pass_fraction.value();
  try {
    exact_decimal = Fraction::parse(numeric.dump()) == m.pass_fraction;
  } catch (const Error&) {
  }
  if (exact_decimal)
    doc["pass_fraction"] = m.pass_fraction.value();
  else
    doc["pass_fraction"] = m.pass_fraction.str();

  std::vector<Dimension> dims = m.dimensions;
  std::sort(dims.begin(), dims.end(),
            [](const Dimension& a, const Dimension& b) { return a.index < b.index; });
  doc["dimensions"] = ordered_json::array();
  for (const auto& d : dims)
    doc["dimensions"].push_back(ordered_json{{"index", d.index}, {"name", d.name}});

  std::vector<Practice> practices = m.practices;
  std::sort(practices.begin(), practices.end(),
            [](const Practice& a, const Practice& b) { return a.id < b.id; });
  doc["practices"] = ordered_json::array();
  for (const auto& p : practices)
    doc["practices"].push_back(ordered_json{{"id", p.id},
                                            {"name", p.name},
                                            {"abbrev", p.abbrev},
                                            {"dimension", p.dimension}});

  std::vector<LevelSpec> levels = m.levels;
  std::sort(levels.begin(), levels.end(),
            [](const LevelSpec& a, const LevelSpec& b) { return a.index < b.index; });
  doc["levels"] = ordered_json::array();
  for (const auto& level : levels) {
    ordered_json jl;
    jl["index"] = level.index;
    jl["name"] = level.name;
    jl["description"] = level.description;
    if (!level.question_counts.empty()) {
      ordered_json counts;
      for (const auto& [pid, count] : level.question_counts) {
        const Practice* p = m.find_practice(pid);
        counts[p != nullptr && !p->abbrev.empty() ? p->abbrev
                                                  : std::to_string(pid)] = count;
      }
      jl["question_counts"] = std::move(counts);
    }
    std::vector<Question> qs = level.questions;
    std::stable_sort(qs.begin(), qs.end(), [](const Question& a, const Question& b) {
      return canonical_less(a.id, b.id);
    });
    jl["questions"] = ordered_json::array();
    for (const auto& q : qs)
      jl["questions"].push_back(ordered_json{{"id", q.id.str()}, {"text", q.text}});
    doc["levels"].push_back(std::move(jl));
  }

  return doc.dump(2) + "\n";
}

}  // namespace maturity
