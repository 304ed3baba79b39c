// Copyright 2026 The hoidiag Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "hoidiag/categories.hpp"

namespace hoidiag {

/// A ground-truth pair of one HOI class, addressed by image and annotation index.
struct GtPair {
  std::string image_id;
  std::size_t annotation_index = 0;
  BoundingBox human_box;
  BoundingBox object_box;
};

struct GtRef {
  std::string image_id;
  std::size_t annotation_index = 0;
  friend bool operator==(const GtRef&, const GtRef&) = default;
  friend auto operator<=>(const GtRef&, const GtRef&) = default;
};

enum class Verdict { TP, FP };

struct MatchOutcome {
  std::size_t prediction_index = 0;  // Prediction::index
  Verdict verdict = Verdict::FP;
  std::optional<GtRef> matched_gt;   // present iff TP
  std::optional<double> match_iou;   // min(human iou, object iou) of the match
  std::string image_id;
  double score = 0.0;
};

/// Greedy one-to-one matching for a single HOI class. Predictions are ranked
/// with ranks_before; each takes the unmatched pair of its own image that
/// maximizes min(iou_h, iou_o), provided that minimum exceeds iou_threshold
/// (ties go to the lower annotation index). Outcomes are returned in rank order.
std::vector<MatchOutcome> match_class(std::span<const GtPair> gt_pairs,
                                      std::span<const Prediction> predictions,
                                      double iou_threshold = 0.5);

/// All-point interpolated AP: the mean, over ground-truth pairs, of the
/// precision envelope at the rank where each was recalled (0 for pairs never
/// recalled). Outcomes must be in rank order. Throws ContractViolation when
/// gt_count is 0, or when there are more TPs than ground truth.
double average_precision(std::span<const MatchOutcome> outcomes, std::size_t gt_count);

struct EvalSettings {
  double iou_threshold = 0.5;
  /// Drop invisible annotations from the matchable ground truth.
  bool strict_visible = false;
  unsigned threads = 0;
};

/// Ground truth that takes part in matching under the given settings, per class.
std::map<HoiId, std::vector<GtPair>> matchable_pairs(const Dataset& gt, const EvalSettings& settings);

/// Matching of every class present in either the ground truth or the predictions.
struct DatasetMatch {
  std::map<HoiId, std::vector<GtPair>> gt;
  std::map<HoiId, std::vector<MatchOutcome>> outcomes;
};

DatasetMatch match_dataset(const Dataset& gt, std::span<const Prediction> predictions,
                           const EvalSettings& settings);

struct ClassResult {
  double ap = 0.0;
  std::size_t gt_count = 0;
  std::size_t prediction_count = 0;
  friend bool operator==(const ClassResult&, const ClassResult&) = default;
};

/// Image subsets reported alongside the per-category breakdown.
enum class PersonGroup { SinglePerson, MultiPerson };

struct EvalReport {
  std::string model_name;
  /// Classes with at least one ground-truth pair over the whole dataset.
  std::map<HoiId, ClassResult> per_class_ap;
  double map_overall = 0.0;
  /// Mean over classes with ground truth inside each category's images.
  std::map<Category, double> per_category_map;
  std::map<Category, std::map<HoiId, ClassResult>> per_category_class_ap;
  std::map<PersonGroup, double> per_group_map;
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Per-class AP over all ground-truth images and per-category mAP over the
/// images carrying each category in `categories`. Classes without ground
/// truth in a subset are left out of that subset's mean. Deterministic for any
/// thread count.
EvalReport evaluate(const Dataset& gt, const PredictionSet& predictions,
                    const std::map<std::string, Category>& categories,
                    const EvalSettings& settings = {});

}  // namespace hoidiag
