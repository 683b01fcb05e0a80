#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maturity/ids.hpp"
#include "maturity/model.hpp"

namespace maturity {

// A respondents x questions grid of rating values (1..4) collected to
// validate the instrument itself.
struct PilotDataset {
  std::vector<std::string> respondents;
  std::vector<QuestionId> questions;
  std::vector<std::vector<double>> values;  // [respondent][question]
  std::vector<std::string> organizations;   // optional tags; empty or per-respondent

  std::size_t n_respondents() const { return respondents.size(); }
  std::size_t n_questions() const { return questions.size(); }
  std::vector<double> column(std::size_t j) const;
  std::optional<std::size_t> column_of(const QuestionId& id) const;
};

// CSV with header `respondent,Q.1.1.1.1,...` and one row per respondent;
// cells are rating values 1..4. Blank cells take the default blank rating
// of 1, the same convention scoring applies.
PilotDataset load_pilot_csv(std::string_view csv_text);

struct CorrelationMatrix {
  std::vector<std::vector<double>> r;  // NaN where a column has no variance
  std::vector<bool> zero_variance;     // per input column

  bool all_defined() const;
};

// Pearson correlations between columns; unit diagonal, symmetric. Columns
// with zero variance are flagged and their off-diagonal entries are NaN.
CorrelationMatrix pearson_correlation_matrix(
    const std::vector<std::vector<double>>& columns);

// alpha = k/(k-1) * (1 - sum(var_i)/var_total), sample variance (n-1).
// Throws single_item_construct (k < 2), insufficient_respondents (n < 2),
// zero_total_variance.
double cronbach_alpha(const std::vector<std::vector<double>>& items);

// All eigenvalues of a symmetric matrix, descending, via cyclic Jacobi
// rotations; converged when every off-diagonal magnitude is below 1e-10.
// Throws not_symmetric and no_convergence (50 sweep bound).
std::vector<double> symmetric_eigenvalues(const std::vector<std::vector<double>>& m);

// Per-construct statistics. alpha/first_eigenvalue/retained_components are
// unset for single-item constructs (rendered "*") and for constructs whose
// correlations are undefined; the latter carry a diagnostic.
struct ConstructStats {
  int level = 0;
  int practice = 0;
  int k_items = 0;
  std::optional<double> alpha;
  std::optional<double> first_eigenvalue;
  std::optional<int> retained_components;
  std::vector<std::pair<int, double>> scree;  // (component index, eigenvalue)
  std::string diagnostic;

  PracticeId construct_id(const MaturityModel& m) const;
  bool single_item() const { return k_items == 1; }
};

// One entry per (level, practice) construct of the model, ordered by level
// then practice. Eigen-analysis runs on the item correlation matrix;
// retained_components counts eigenvalues > 1.
std::vector<ConstructStats> construct_validity(const PilotDataset& dataset,
                                               const MaturityModel& model);

// Average inter-item correlations: diagonal (J,J) pools every within-construct
// item pair at level J; off-diagonal (J,K) pools every item pair crossing
// levels J and K. Cells with no defined pairs are NaN.
struct MtmmMatrix {
  std::vector<int> levels;
  std::vector<std::string> level_names;
  std::vector<std::vector<double>> cells;
};

MtmmMatrix mtmm(const PilotDataset& dataset, const MaturityModel& model);

// CSV document `construct,component,eigenvalue` over all computed scree
// series, constructs in (level, practice) order.
std::string scree_csv(const std::vector<ConstructStats>& stats,
                      const MaturityModel& model);

}  // namespace maturity
