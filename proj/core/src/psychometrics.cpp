#include "maturity/psychometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>

#include "csv.hpp"
#include "maturity/errors.hpp"

namespace maturity {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Sample variance, n-1 denominator.
double variance(const std::vector<double>& xs) {
  double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = mean(xs), my = mean(ys);
  double s = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
  return s / static_cast<double>(xs.size() - 1);
}

}  // namespace

std::vector<double> PilotDataset::column(std::size_t j) const {
  std::vector<double> col;
  col.reserve(values.size());
  for (const auto& row : values) col.push_back(row.at(j));
  return col;
}

std::optional<std::size_t> PilotDataset::column_of(const QuestionId& id) const {
  for (std::size_t j = 0; j < questions.size(); ++j)
    if (questions[j] == id) return j;
  return std::nullopt;
}

PilotDataset load_pilot_csv(std::string_view csv_text) {
  auto rows = csv::parse(csv_text);
  if (rows.empty()) throw Error(ErrorKind::schema, "empty CSV document");
  const auto& header = rows.front();
  if (header.empty() || header[0] != "respondent")
    throw Error(ErrorKind::schema, "expected header starting with \"respondent\"");

  PilotDataset d;
  std::set<QuestionId> seen;
  for (std::size_t j = 1; j < header.size(); ++j) {
    QuestionId id;
    try {
      id = parse_question_id(header[j]);
    } catch (const Error& e) {
      throw Error(ErrorKind::schema,
                  fmt::format("header column {}: {}", j + 1, e.what()));
    }
    if (!seen.insert(id).second)
      throw Error(ErrorKind::schema,
                  fmt::format("duplicate question column {}", id.str()));
    d.questions.push_back(id);
  }

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size())
      throw Error(ErrorKind::schema,
                  fmt::format("row {}: expected {} fields, found {}", i + 1,
                              header.size(), row.size()));
    d.respondents.push_back(row[0]);
    std::vector<double> values;
    values.reserve(row.size() - 1);
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j].empty()) {
        values.push_back(1.0);  // blank answer rates 1, as in scoring
        continue;
      }
      double v = 0;
      try {
        std::size_t used = 0;
        v = std::stod(row[j], &used);
        if (used != row[j].size()) throw std::invalid_argument(row[j]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::schema,
                    fmt::format("row {} column {}: \"{}\" is not a number", i + 1,
                                j + 1, row[j]));
      }
      if (v != std::floor(v) || v < 1 || v > 4)
        throw Error(ErrorKind::schema,
                    fmt::format("row {} column {}: value {} outside 1..4", i + 1,
                                j + 1, row[j]));
      values.push_back(v);
    }
    d.values.push_back(std::move(values));
  }
  return d;
}

bool CorrelationMatrix::all_defined() const {
  for (bool zv : zero_variance)
    if (zv) return false;
  return true;
}

CorrelationMatrix pearson_correlation_matrix(
    const std::vector<std::vector<double>>& columns) {
  const std::size_t k = columns.size();
  std::size_t n = k > 0 ? columns[0].size() : 0;
  for (const auto& col : columns)
    if (col.size() != n)
      throw Error(ErrorKind::bad_argument, "columns differ in length");
  if (k > 0 && n < 2)
    throw Error(ErrorKind::insufficient_respondents,
                "correlation requires at least 2 observations");

  CorrelationMatrix cm;
  cm.zero_variance.resize(k, false);
  std::vector<double> sd(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double v = variance(columns[i]);
    cm.zero_variance[i] = (v == 0.0);
    sd[i] = std::sqrt(v);
  }

  cm.r.assign(k, std::vector<double>(k, kNaN));
  for (std::size_t i = 0; i < k; ++i) {
    cm.r[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cm.zero_variance[i] || cm.zero_variance[j]) continue;
      double r = covariance(columns[i], columns[j]) / (sd[i] * sd[j]);
      r = std::clamp(r, -1.0, 1.0);
      cm.r[i][j] = cm.r[j][i] = r;
    }
  }
  return cm;
}

double cronbach_alpha(const std::vector<std::vector<double>>& items) {
  const std::size_t k = items.size();
  if (k < 2)
    throw Error(ErrorKind::single_item_construct,
                "coefficient alpha requires at least 2 items");
  const std::size_t n = items[0].size();
  for (const auto& item : items)
    if (item.size() != n)
      throw Error(ErrorKind::bad_argument, "items differ in length");
  if (n < 2)
    throw Error(ErrorKind::insufficient_respondents,
                "coefficient alpha requires at least 2 respondents");

  double item_var_sum = 0;
  for (const auto& item : items) item_var_sum += variance(item);

  std::vector<double> totals(n, 0.0);
  for (const auto& item : items)
    for (std::size_t i = 0; i < n; ++i) totals[i] += item[i];
  double total_var = variance(totals);
  if (total_var == 0.0)
    throw Error(ErrorKind::zero_total_variance,
                "total score has zero variance");

  double kd = static_cast<double>(k);
  return kd / (kd - 1.0) * (1.0 - item_var_sum / total_var);
}

std::vector<double> symmetric_eigenvalues(
    const std::vector<std::vector<double>>& input) {
  const std::size_t n = input.size();
  for (const auto& row : input)
    if (row.size() != n)
      throw Error(ErrorKind::bad_argument, "matrix is not square");
  for (const auto& row : input)
    for (double v : row)
      if (!std::isfinite(v))
        throw Error(ErrorKind::bad_argument, "matrix has non-finite entries");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(input[i][j] - input[j][i]) > 1e-12)
        throw Error(ErrorKind::not_symmetric,
                    fmt::format("matrix not symmetric at ({}, {})", i, j));

  if (n == 0) return {};

  auto a = input;
  auto max_off_diagonal = [&] {
    double off = 0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(a[p][q]));
    return off;
  };
  auto diagonal_descending = [&] {
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
  };

  constexpr int kMaxSweeps = 50;
  constexpr double kOffTolerance = 1e-10;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (max_off_diagonal() < kOffTolerance) return diagonal_descending();
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (apq == 0.0) continue;
        double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                            : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0.0;
      }
    }
  }
  if (max_off_diagonal() < kOffTolerance) return diagonal_descending();
  throw Error(ErrorKind::no_convergence,
              fmt::format("Jacobi iteration did not converge in {} sweeps",
                          kMaxSweeps));
}

PracticeId ConstructStats::construct_id(const MaturityModel& m) const {
  const Practice* p = m.find_practice(practice);
  return {p != nullptr ? p->dimension : 0, level, practice};
}

namespace {

// Columns of the dataset for each (level, practice) construct, in model
// order. Every model question must be present in the dataset.
std::map<std::pair<int, int>, std::vector<std::size_t>> construct_columns(
    const PilotDataset& dataset, const MaturityModel& model) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> out;
  for (const auto& level : model.levels) {
    std::vector<Question> qs = level.questions;
    std::stable_sort(qs.begin(), qs.end(), [](const Question& a, const Question& b) {
      return canonical_less(a.id, b.id);
    });
    for (const auto& q : qs) {
      auto col = dataset.column_of(q.id);
      if (!col)
        throw Error(ErrorKind::missing_column,
                    fmt::format("pilot data lacks a column for {}", q.id.str()));
      out[{level.index, q.id.practice}].push_back(*col);
    }
  }
  return out;
}

}  // namespace

std::vector<ConstructStats> construct_validity(const PilotDataset& dataset,
                                               const MaturityModel& model) {
  if (dataset.n_respondents() < 2)
    throw Error(ErrorKind::insufficient_respondents,
                fmt::format("pilot analysis requires at least 2 respondents, got {}",
                            dataset.n_respondents()));
  auto groups = construct_columns(dataset, model);

  std::vector<ConstructStats> out;
  for (const auto& [key, cols] : groups) {
    ConstructStats stats;
    stats.level = key.first;
    stats.practice = key.second;
    stats.k_items = static_cast<int>(cols.size());
    if (stats.k_items == 1) {
      out.push_back(std::move(stats));
      continue;
    }

    std::vector<std::vector<double>> columns;
    columns.reserve(cols.size());
    for (std::size_t j : cols) columns.push_back(dataset.column(j));

    CorrelationMatrix cm = pearson_correlation_matrix(columns);
    if (!cm.all_defined()) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (cm.zero_variance[i]) {
          stats.diagnostic =
              fmt::format("item {} has zero variance; correlations undefined",
                          dataset.questions[cols[i]].str());
          break;
        }
      out.push_back(std::move(stats));
      continue;
    }

    std::vector<double> eig = symmetric_eigenvalues(cm.r);
    stats.first_eigenvalue = eig.front();
    stats.retained_components =
        static_cast<int>(std::count_if(eig.begin(), eig.end(),
                                       [](double v) { return v > 1.0; }));
    for (std::size_t i = 0; i < eig.size(); ++i)
      stats.scree.emplace_back(static_cast<int>(i) + 1, eig[i]);

    try {
      stats.alpha = cronbach_alpha(columns);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::zero_total_variance) throw;
      stats.diagnostic = "total score has zero variance; alpha undefined";
    }
    out.push_back(std::move(stats));
  }
  return out;
}

MtmmMatrix mtmm(const PilotDataset& dataset, const MaturityModel& model) {
  if (dataset.n_respondents() < 2)
    throw Error(ErrorKind::insufficient_respondents,
                fmt::format("pilot analysis requires at least 2 respondents, got {}",
                            dataset.n_respondents()));
  auto groups = construct_columns(dataset, model);

  // Columns per level, and per (level, practice), against one shared
  // correlation matrix over every model question.
  std::vector<std::size_t> all_cols;
  std::map<std::pair<int, int>, std::pair<std::size_t, std::size_t>> spans;
  std::map<int, std::pair<std::size_t, std::size_t>> level_spans;
  for (const auto& [key, cols] : groups) {
    if (!level_spans.contains(key.first))
      level_spans[key.first] = {all_cols.size(), all_cols.size()};
    spans[key] = {all_cols.size(), all_cols.size() + cols.size()};
    for (std::size_t c : cols) all_cols.push_back(c);
    level_spans[key.first].second = all_cols.size();
  }

  std::vector<std::vector<double>> columns;
  columns.reserve(all_cols.size());
  for (std::size_t c : all_cols) columns.push_back(dataset.column(c));
  CorrelationMatrix cm = pearson_correlation_matrix(columns);

  auto mean_over = [&](auto&& pairs) {
    double sum = 0;
    std::size_t count = 0;
    for (auto [i, j] : pairs) {
      double r = cm.r[i][j];
      if (std::isnan(r)) continue;
      sum += r;
      ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : kNaN;
  };

  MtmmMatrix out;
  for (const auto& level : model.levels) {
    out.levels.push_back(level.index);
    out.level_names.push_back(level.name);
  }
  const std::size_t L = out.levels.size();
  out.cells.assign(L, std::vector<double>(L, kNaN));

  for (std::size_t a = 0; a < L; ++a) {
    // Within-construct pairs pooled across the level's practices.
    std::vector<std::pair<std::size_t, std::size_t>> diag_pairs;
    for (const auto& [key, span] : spans) {
      if (key.first != out.levels[a]) continue;
      for (std::size_t i = span.first; i < span.second; ++i)
        for (std::size_t j = i + 1; j < span.second; ++j)
          diag_pairs.emplace_back(i, j);
    }
    out.cells[a][a] = mean_over(diag_pairs);

    for (std::size_t b = a + 1; b < L; ++b) {
      auto sa = level_spans[out.levels[a]];
      auto sb = level_spans[out.levels[b]];
      std::vector<std::pair<std::size_t, std::size_t>> cross_pairs;
      for (std::size_t i = sa.first; i < sa.second; ++i)
        for (std::size_t j = sb.first; j < sb.second; ++j)
          cross_pairs.emplace_back(i, j);
      out.cells[a][b] = out.cells[b][a] = mean_over(cross_pairs);
    }
  }
  return out;
}

std::string scree_csv(const std::vector<ConstructStats>& stats,
                      const MaturityModel& model) {
  std::string out = "construct,component,eigenvalue\n";
  for (const auto& s : stats)
    for (const auto& [component, eigenvalue] : s.scree)
      out += fmt::format("{},{},{:.6g}\n", s.construct_id(model).str(), component,
                         eigenvalue);
  return out;
}

}  // namespace maturity
