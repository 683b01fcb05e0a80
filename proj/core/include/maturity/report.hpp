#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maturity/gap.hpp"
#include "maturity/model.hpp"
#include "maturity/psychometrics.hpp"
#include "maturity/scoring.hpp"

namespace maturity {

enum class ReportFormat { text, markdown, csv, json };

const char* format_name(ReportFormat f);
std::optional<ReportFormat> format_from_name(std::string_view name);

// Everything a report can carry. Rendering is deterministic: stable ordering,
// counts as integers, statistics fixed to 2 decimals with '.' regardless of
// locale.
struct ReportBundle {
  std::vector<AssessmentResult> assessments;
  std::optional<std::vector<ConstructStats>> constructs;
  std::optional<MtmmMatrix> mtmm;
  std::optional<GapReport> gap;

  bool empty() const {
    return assessments.empty() && !constructs && !mtmm && !gap;
  }
};

// One row per level (question total, pass threshold, each organization's
// agreed count) plus a verdict footer per organization.
std::string render_summary(const std::vector<AssessmentResult>& results,
                           const MaturityModel& m, ReportFormat format);

// Per-level columns of (question id, rating value) pairs in canonical order.
std::string render_detail(const AssessmentResult& result, const MaturityModel& m,
                          ReportFormat format);

// Alpha grid and first-eigenvalue grid (levels x practices, "*" marks
// single-item constructs) plus the level-by-level average-correlation
// triangle when given.
std::string render_psych(const std::vector<ConstructStats>& constructs,
                         const std::optional<MtmmMatrix>& mtmm,
                         const MaturityModel& m, ReportFormat format);

std::string render_gap(const GapReport& gap, const MaturityModel& m,
                       ReportFormat format);

// All sections present in the bundle, in order: per-organization detail,
// summary, psychometrics, gap. The json format emits one machine-readable
// object that parse_bundle_json reads back.
std::string render_bundle(const ReportBundle& bundle, const MaturityModel& m,
                          ReportFormat format);

ReportBundle parse_bundle_json(std::string_view json_text);

}  // namespace maturity
