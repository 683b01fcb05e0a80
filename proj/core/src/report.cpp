#include "maturity/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "maturity/errors.hpp"

namespace maturity {

using nlohmann::json;
using nlohmann::ordered_json;

const char* format_name(ReportFormat f) {
  switch (f) {
    case ReportFormat::text: return "text";
    case ReportFormat::markdown: return "markdown";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
  }
  return "text";
}

std::optional<ReportFormat> format_from_name(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "markdown") return ReportFormat::markdown;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

namespace {

// Statistics print with exactly 2 decimals; counts stay integers.
std::string fmt_stat(double v) {
  std::string s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

struct Table {
  std::vector<std::string> header;
  std::vector<bool> right_align;  // per column; empty = all left
  std::vector<std::vector<std::string>> rows;
};

std::string table_text(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);

  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < width.size(); ++i) {
      std::string cell = i < row.size() ? row[i] : "";
      bool right = i < t.right_align.size() && t.right_align[i];
      if (i > 0) line += "  ";
      line += right ? fmt::format("{:>{}}", cell, width[i])
                    : fmt::format("{:<{}}", cell, width[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  emit(t.header);
  for (const auto& row : t.rows) emit(row);
  return out;
}

std::string md_escape(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string table_markdown(const Table& t) {
  std::string out = "|";
  for (const auto& h : t.header) out += " " + md_escape(h) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    bool right = i < t.right_align.size() && t.right_align[i];
    out += right ? " ---: |" : " --- |";
  }
  out += "\n";
  for (const auto& row : t.rows) {
    out += "|";
    for (std::size_t i = 0; i < t.header.size(); ++i)
      out += " " + md_escape(i < row.size() ? row[i] : "") + " |";
    out += "\n";
  }
  return out;
}

std::string table_csv(const Table& t) {
  std::string out = csv::join_row(t.header) + "\n";
  for (const auto& row : t.rows) out += csv::join_row(row) + "\n";
  return out;
}

std::string render_table(const Table& t, ReportFormat f) {
  switch (f) {
    case ReportFormat::markdown: return table_markdown(t);
    case ReportFormat::csv: return table_csv(t);
    default: return table_text(t);
  }
}

// Table-style display form of a question id: "Q 1.2.3.4".
std::string question_display(const QuestionId& id) {
  return fmt::format("Q {}.{}.{}.{}", id.dimension, id.level, id.practice,
                     id.question);
}

std::string verdict_line(const AssessmentResult& r, const MaturityModel& m) {
  if (r.bml == 0)
    return fmt::format("Organization \"{}\": BML: 0 (no level passed)",
                       r.organization);
  const LevelSpec* level = m.find_level(r.bml);
  return fmt::format("Organization \"{}\": BML: {} ({})", r.organization, r.bml,
                     level != nullptr ? level->name : "?");
}

std::vector<Question> canonical_level_questions(const LevelSpec& level) {
  std::vector<Question> qs = level.questions;
  std::stable_sort(qs.begin(), qs.end(), [](const Question& a, const Question& b) {
    return canonical_less(a.id, b.id);
  });
  return qs;
}

// ---------------------------------------------------------------------------
// JSON mirrors

ordered_json assessment_to_json(const AssessmentResult& r) {
  ordered_json j;
  j["organization"] = r.organization;
  j["bml"] = r.bml;
  j["per_level"] = ordered_json::array();
  for (const auto& ls : r.per_level)
    j["per_level"].push_back(ordered_json{{"level", ls.level},
                                          {"n_questions", ls.n_questions},
                                          {"n_agreed", ls.n_agreed},
                                          {"pass_threshold", ls.pass_threshold},
                                          {"passed", ls.passed}});
  ordered_json ratings = ordered_json::object();
  std::vector<QuestionId> ids;
  for (const auto& [id, rating] : r.per_question_ratings) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), canonical_less);
  for (const auto& id : ids)
    ratings[id.str()] = r.per_question_ratings.at(id).value();
  j["per_question_ratings"] = std::move(ratings);
  ordered_json profile = ordered_json::object();
  for (const auto& [pid, tally] : r.per_practice_profile)
    profile[pid.str()] =
        ordered_json{{"agreed", tally.agreed}, {"total", tally.total}};
  j["per_practice_profile"] = std::move(profile);
  return j;
}

AssessmentResult assessment_from_json(const json& j) {
  AssessmentResult r;
  r.organization = j.at("organization").get<std::string>();
  r.bml = j.at("bml").get<int>();
  for (const auto& jl : j.at("per_level")) {
    LevelScore ls;
    ls.level = jl.at("level").get<int>();
    ls.n_questions = jl.at("n_questions").get<int>();
    ls.n_agreed = jl.at("n_agreed").get<int>();
    ls.pass_threshold = jl.at("pass_threshold").get<int>();
    ls.passed = jl.at("passed").get<bool>();
    r.per_level.push_back(ls);
  }
  for (const auto& [key, value] : j.at("per_question_ratings").items())
    r.per_question_ratings.emplace(parse_question_id(key),
                                   PerformanceRating(value.get<int>()));
  if (j.contains("per_practice_profile"))
    for (const auto& [key, value] : j.at("per_practice_profile").items())
      r.per_practice_profile[parse_practice_id(key)] =
          PracticeTally{value.at("agreed").get<int>(), value.at("total").get<int>()};
  return r;
}

ordered_json construct_to_json(const ConstructStats& s) {
  ordered_json j;
  j["level"] = s.level;
  j["practice"] = s.practice;
  j["k_items"] = s.k_items;
  j["alpha"] = s.alpha ? ordered_json(*s.alpha) : ordered_json(nullptr);
  j["first_eigenvalue"] = s.first_eigenvalue ? ordered_json(*s.first_eigenvalue) : ordered_json(nullptr);
  j["retained_components"] =
      s.retained_components ? ordered_json(*s.retained_components) : ordered_json(nullptr);
  j["scree"] = ordered_json::array();
  for (const auto& [component, eigenvalue] : s.scree)
    j["scree"].push_back(ordered_json::array({component, eigenvalue}));
  if (!s.diagnostic.empty()) j["diagnostic"] = s.diagnostic;
  return j;
}

ConstructStats construct_from_json(const json& j) {
  ConstructStats s;
  s.level = j.at("level").get<int>();
  s.practice = j.at("practice").get<int>();
  s.k_items = j.at("k_items").get<int>();
  if (j.contains("alpha") && !j.at("alpha").is_null())
    s.alpha = j.at("alpha").get<double>();
  if (j.contains("first_eigenvalue") && !j.at("first_eigenvalue").is_null())
    s.first_eigenvalue = j.at("first_eigenvalue").get<double>();
  if (j.contains("retained_components") && !j.at("retained_components").is_null())
    s.retained_components = j.at("retained_components").get<int>();
  if (j.contains("scree"))
    for (const auto& pair : j.at("scree"))
      s.scree.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
  if (j.contains("diagnostic")) s.diagnostic = j.at("diagnostic").get<std::string>();
  return s;
}

ordered_json mtmm_to_json(const MtmmMatrix& m) {
  ordered_json j;
  j["levels"] = m.levels;
  j["level_names"] = m.level_names;
  j["cells"] = ordered_json::array();
  for (const auto& row : m.cells) {
    ordered_json jrow = ordered_json::array();
    for (double v : row) jrow.push_back(std::isnan(v) ? ordered_json(nullptr) : ordered_json(v));
    j["cells"].push_back(std::move(jrow));
  }
  return j;
}

MtmmMatrix mtmm_from_json(const json& j) {
  MtmmMatrix m;
  m.levels = j.at("levels").get<std::vector<int>>();
  m.level_names = j.at("level_names").get<std::vector<std::string>>();
  for (const auto& jrow : j.at("cells")) {
    std::vector<double> row;
    for (const auto& v : jrow)
      row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                : v.get<double>());
    m.cells.push_back(std::move(row));
  }
  return m;
}

ordered_json gap_to_json(const GapReport& g) {
  ordered_json j;
  j["organization"] = g.organization;
  j["current_bml"] = g.current_bml;
  j["target_level"] = g.target_level;
  j["deficit"] = g.deficit;
  j["weakest_practices"] = ordered_json::array();
  for (const auto& wp : g.weakest_practices)
    j["weakest_practices"].push_back(ordered_json{{"practice", wp.practice.str()},
                                                  {"agreed", wp.agreed},
                                                  {"total", wp.total}});
  j["flip_candidates"] = ordered_json::array();
  for (const auto& fc : g.flip_candidates)
    j["flip_candidates"].push_back(
        ordered_json{{"question", fc.question.str()}, {"rating", fc.rating}});
  return j;
}

GapReport gap_from_json(const json& j) {
  GapReport g;
  g.organization = j.at("organization").get<std::string>();
  g.current_bml = j.at("current_bml").get<int>();
  g.target_level = j.at("target_level").get<int>();
  g.deficit = j.at("deficit").get<int>();
  for (const auto& wp : j.at("weakest_practices"))
    g.weakest_practices.push_back(
        {parse_practice_id(wp.at("practice").get<std::string>()),
         wp.at("agreed").get<int>(), wp.at("total").get<int>()});
  for (const auto& fc : j.at("flip_candidates"))
    g.flip_candidates.push_back(
        {parse_question_id(fc.at("question").get<std::string>()),
         fc.at("rating").get<int>()});
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Summary

std::string render_summary(const std::vector<AssessmentResult>& results,
                           const MaturityModel& m, ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json j = ordered_json::array();
    for (const auto& r : results) j.push_back(assessment_to_json(r));
    return j.dump(2) + "\n";
  }

  Table t;
  t.header = {"Level", "Name", "Questions", "Threshold"};
  t.right_align = {true, false, true, true};
  for (const auto& r : results) {
    t.header.push_back(fmt::format("NA[{}]", r.organization));
    t.right_align.push_back(true);
  }
  if (!results.empty()) {
    for (const auto& level : m.levels) {
      int n = static_cast<int>(level.questions.size());
      std::vector<std::string> row = {std::to_string(level.index), level.name,
                                      std::to_string(n),
                                      std::to_string(pass_threshold(n, m.pass_fraction))};
      for (const auto& r : results) {
        const LevelScore* ls = r.find_level(level.index);
        row.push_back(ls != nullptr ? std::to_string(ls->n_agreed) : "");
      }
      t.rows.push_back(std::move(row));
    }
  }

  std::string table = render_table(t, format);
  if (format == ReportFormat::csv) return table;

  std::string out = fmt::format("Assessment summary: {}\n\n", m.name);
  out += table;
  if (!results.empty()) {
    out += "\n";
    for (const auto& r : results) out += verdict_line(r, m) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Detail

std::string render_detail(const AssessmentResult& result, const MaturityModel& m,
                          ReportFormat format) {
  if (format == ReportFormat::json) return assessment_to_json(result).dump(2) + "\n";

  // One (question, value) column pair per level, rows padded to the longest
  // level.
  std::vector<std::vector<std::pair<std::string, std::string>>> groups;
  std::size_t depth = 0;
  for (const auto& level : m.levels) {
    std::vector<std::pair<std::string, std::string>> cells;
    for (const auto& q : canonical_level_questions(level)) {
      auto it = result.per_question_ratings.find(q.id);
      cells.emplace_back(question_display(q.id),
                         it != result.per_question_ratings.end()
                             ? std::to_string(it->second.value())
                             : "");
    }
    depth = std::max(depth, cells.size());
    groups.push_back(std::move(cells));
  }

  if (format == ReportFormat::markdown || format == ReportFormat::csv) {
    Table t;
    for (const auto& level : m.levels) {
      t.header.push_back(fmt::format("{} question", level.name));
      t.header.push_back(fmt::format("{} value", level.name));
      t.right_align.push_back(false);
      t.right_align.push_back(true);
    }
    for (std::size_t i = 0; i < depth; ++i) {
      std::vector<std::string> row;
      for (const auto& g : groups) {
        row.push_back(i < g.size() ? g[i].first : "");
        row.push_back(i < g.size() ? g[i].second : "");
      }
      t.rows.push_back(std::move(row));
    }
    std::string table = render_table(t, format);
    if (format == ReportFormat::csv) return table;
    return fmt::format("Assessment detail: Organization \"{}\"\n\n",
                       result.organization) +
           table;
  }

  // Text: a two-line header with a level banner over each column pair.
  std::vector<std::size_t> qwidth(groups.size(), std::string("Question").size());
  std::vector<std::size_t> vwidth(groups.size(), std::string("Value").size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& [question, value] : groups[g]) {
      qwidth[g] = std::max(qwidth[g], question.size());
      vwidth[g] = std::max(vwidth[g], value.size());
    }

  std::vector<std::string> banners;
  for (const auto& level : m.levels)
    banners.push_back(fmt::format("Level {} ({})", level.index, level.name));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::size_t pair_width = qwidth[g] + 2 + vwidth[g];
    if (banners[g].size() > pair_width)
      qwidth[g] += banners[g].size() - pair_width;
  }

  std::string out =
      fmt::format("Assessment detail: Organization \"{}\"\n\n", result.organization);
  std::string line;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g > 0) line += "  |  ";
    line += fmt::format("{:<{}}", banners[g], qwidth[g] + 2 + vwidth[g]);
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  out += line + "\n";

  line.clear();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g > 0) line += "  |  ";
    line += fmt::format("{:<{}}  {:>{}}", "Question", qwidth[g], "Value", vwidth[g]);
  }
  out += line + "\n";

  for (std::size_t i = 0; i < depth; ++i) {
    line.clear();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (g > 0) line += "  |  ";
      std::string question = i < groups[g].size() ? groups[g][i].first : "";
      std::string value = i < groups[g].size() ? groups[g][i].second : "";
      line += fmt::format("{:<{}}  {:>{}}", question, qwidth[g], value, vwidth[g]);
    }
    // Drop empty trailing column groups.
    while (true) {
      while (!line.empty() && line.back() == ' ') line.pop_back();
      if (!line.empty() && line.back() == '|')
        line.pop_back();
      else
        break;
    }
    out += line + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Psychometrics

namespace {

Table construct_grid(const std::vector<ConstructStats>& constructs,
                     const MaturityModel& m, bool eigenvalues) {
  std::vector<Practice> practices = m.practices;
  std::sort(practices.begin(), practices.end(),
            [](const Practice& a, const Practice& b) { return a.id < b.id; });

  std::map<std::pair<int, int>, const ConstructStats*> by_key;
  for (const auto& s : constructs) by_key[{s.level, s.practice}] = &s;

  Table t;
  t.header = {"Level", "Name"};
  t.right_align = {true, false};
  for (const auto& p : practices) {
    t.header.push_back(!p.abbrev.empty() ? p.abbrev : std::to_string(p.id));
    t.right_align.push_back(true);
  }
  for (const auto& level : m.levels) {
    std::vector<std::string> row = {std::to_string(level.index), level.name};
    for (const auto& p : practices) {
      auto it = by_key.find({level.index, p.id});
      if (it == by_key.end()) {
        row.push_back("");
        continue;
      }
      const ConstructStats& s = *it->second;
      std::optional<double> v = eigenvalues ? s.first_eigenvalue : s.alpha;
      if (s.single_item())
        row.push_back("*");
      else if (!v)
        row.push_back("n/c");
      else
        row.push_back(fmt_stat(*v));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table mtmm_table(const MtmmMatrix& mt) {
  Table t;
  t.header = {"Level"};
  t.right_align = {false};
  for (const auto& name : mt.level_names) {
    t.header.push_back(name);
    t.right_align.push_back(true);
  }
  for (std::size_t i = 0; i < mt.levels.size(); ++i) {
    std::vector<std::string> row = {mt.level_names[i]};
    for (std::size_t j = 0; j < mt.levels.size(); ++j) {
      if (j > i) {
        row.push_back("");  // lower triangle only
        continue;
      }
      double v = mt.cells[i][j];
      row.push_back(std::isnan(v) ? "n/c" : fmt_stat(v));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string star_footnote(const std::vector<ConstructStats>& constructs) {
  for (const auto& s : constructs)
    if (s.single_item()) return "* single-item construct: not computable\n";
  return "";
}

std::string diagnostic_footnotes(const std::vector<ConstructStats>& constructs,
                                 const MaturityModel& m) {
  std::string out;
  for (const auto& s : constructs)
    if (!s.diagnostic.empty())
      out += fmt::format("n/c {}: {}\n", s.construct_id(m).str(), s.diagnostic);
  return out;
}

}  // namespace

std::string render_psych(const std::vector<ConstructStats>& constructs,
                         const std::optional<MtmmMatrix>& mtmm_matrix,
                         const MaturityModel& m, ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json j;
    j["constructs"] = ordered_json::array();
    for (const auto& s : constructs) j["constructs"].push_back(construct_to_json(s));
    if (mtmm_matrix) j["mtmm"] = mtmm_to_json(*mtmm_matrix);
    return j.dump(2) + "\n";
  }

  Table alpha_grid = construct_grid(constructs, m, /*eigenvalues=*/false);
  Table eigen_grid = construct_grid(constructs, m, /*eigenvalues=*/true);
  std::string star = star_footnote(constructs);
  std::string diagnostics = diagnostic_footnotes(constructs, m);

  if (format == ReportFormat::csv) {
    std::string out = render_table(alpha_grid, format);
    out += "\n" + render_table(eigen_grid, format);
    if (mtmm_matrix) out += "\n" + render_table(mtmm_table(*mtmm_matrix), format);
    return out;
  }

  std::string out = fmt::format("Reliability (coefficient alpha): {}\n\n", m.name);
  out += render_table(alpha_grid, format);
  if (!star.empty() || !diagnostics.empty()) out += "\n" + star + diagnostics;

  out += fmt::format("\nConstruct validity (first eigenvalue): {}\n\n", m.name);
  out += render_table(eigen_grid, format);
  if (!star.empty() || !diagnostics.empty()) out += "\n" + star + diagnostics;

  if (mtmm_matrix) {
    out += "\nConvergent/discriminant validity (average inter-item correlation)\n";
    out += "Diagonal: within-construct pairs at the level; off-diagonal: all "
           "cross-level item pairs.\n\n";
    out += render_table(mtmm_table(*mtmm_matrix), format);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gap

std::string render_gap(const GapReport& gap, const MaturityModel& m,
                       ReportFormat format) {
  if (format == ReportFormat::json) return gap_to_json(gap).dump(2) + "\n";

  const LevelSpec* current = m.find_level(gap.current_bml);
  const LevelSpec* target = m.find_level(gap.target_level);

  int agreed = 0, total = 0;
  for (const auto& wp : gap.weakest_practices) {
    agreed += wp.agreed;
    total += wp.total;
  }

  Table practices;
  practices.header = {"Practice", "Name", "Agreed", "Total"};
  practices.right_align = {false, false, true, true};
  for (const auto& wp : gap.weakest_practices) {
    const Practice* p = m.find_practice(wp.practice.practice);
    practices.rows.push_back({wp.practice.str(), p != nullptr ? p->name : "",
                              std::to_string(wp.agreed), std::to_string(wp.total)});
  }

  Table candidates;
  candidates.header = {"Question", "Rating"};
  candidates.right_align = {false, true};
  for (const auto& fc : gap.flip_candidates)
    candidates.rows.push_back({fc.question.str(), std::to_string(fc.rating)});

  std::string out = fmt::format("Gap analysis: Organization \"{}\"\n\n",
                                gap.organization);
  out += fmt::format("current BML: {} ({})\n", gap.current_bml,
                     current != nullptr ? current->name
                                        : (gap.current_bml == 0 ? "no level passed"
                                                                : "?"));
  out += fmt::format("target level: {} ({})\n", gap.target_level,
                     target != nullptr ? target->name : "?");
  out += fmt::format("agreed at target: {} of {} (threshold: {})\n", agreed, total,
                     pass_threshold(total, m.pass_fraction));
  out += fmt::format("deficit: {}\n", gap.deficit);

  out += fmt::format("\nWeakest practices at level {}\n\n", gap.target_level);
  out += render_table(practices, format);
  out += "\nFlip candidates (closest to agreement first)\n\n";
  out += render_table(candidates, format);
  return out;
}

// ---------------------------------------------------------------------------
// Bundle

std::string render_bundle(const ReportBundle& bundle, const MaturityModel& m,
                          ReportFormat format) {
  if (bundle.empty())
    throw Error(ErrorKind::bad_argument, "report bundle has no sections");

  if (format == ReportFormat::json) {
    ordered_json j;
    if (!bundle.assessments.empty()) {
      j["assessments"] = ordered_json::array();
      for (const auto& r : bundle.assessments)
        j["assessments"].push_back(assessment_to_json(r));
    }
    if (bundle.constructs) {
      j["constructs"] = ordered_json::array();
      for (const auto& s : *bundle.constructs)
        j["constructs"].push_back(construct_to_json(s));
    }
    if (bundle.mtmm) j["mtmm"] = mtmm_to_json(*bundle.mtmm);
    if (bundle.gap) j["gap"] = gap_to_json(*bundle.gap);
    return j.dump(2) + "\n";
  }

  std::vector<std::string> sections;
  for (const auto& r : bundle.assessments)
    sections.push_back(render_detail(r, m, format));
  if (!bundle.assessments.empty())
    sections.push_back(render_summary(bundle.assessments, m, format));
  if (bundle.constructs)
    sections.push_back(render_psych(*bundle.constructs, bundle.mtmm, m, format));
  if (bundle.gap) sections.push_back(render_gap(*bundle.gap, m, format));

  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i > 0) out += "\n";
    out += sections[i];
  }
  return out;
}

ReportBundle parse_bundle_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, fmt::format("invalid JSON: {}", e.what()));
  }

  ReportBundle bundle;
  try {
    if (!doc.is_object()) throw Error(ErrorKind::schema, "$: expected an object");
    if (doc.contains("assessments"))
      for (const auto& ja : doc.at("assessments"))
        bundle.assessments.push_back(assessment_from_json(ja));
    if (doc.contains("constructs")) {
      std::vector<ConstructStats> cs;
      for (const auto& jc : doc.at("constructs"))
        cs.push_back(construct_from_json(jc));
      bundle.constructs = std::move(cs);
    }
    if (doc.contains("mtmm")) bundle.mtmm = mtmm_from_json(doc.at("mtmm"));
    if (doc.contains("gap")) bundle.gap = gap_from_json(doc.at("gap"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::schema, fmt::format("malformed report bundle: {}", e.what()));
  }
  return bundle;
}

}  // namespace maturity
