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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "hoidiag/categories.hpp"
#include "hoidiag/evaluation.hpp"

namespace hoidiag {

enum class ErrorType { HumanBox, ObjectBox, ObjectClass, Verb, Pairing, Duplicate };

inline constexpr std::array<ErrorType, 6> kAllErrorTypes = {
    ErrorType::HumanBox, ErrorType::ObjectBox, ErrorType::ObjectClass,
    ErrorType::Verb,     ErrorType::Pairing,   ErrorType::Duplicate};

/// "human_box", "object_box", "object_class", "verb", "pairing", "duplicate".
std::string_view to_string(ErrorType t);
std::optional<ErrorType> error_type_from_string(std::string_view s);

/// Error attribution of one prediction. All clear for a TP; at least one set
/// for an FP. object_box and object_class never co-occur, and pairing, verb
/// and duplicate each exclude every other flag.
class ErrorFlags {
 public:
  bool test(ErrorType t) const { return bits_[static_cast<std::size_t>(t)]; }
  void set(ErrorType t, bool value = true) { bits_[static_cast<std::size_t>(t)] = value; }
  bool any() const;
  std::size_t count() const;
  /// Empty string if the exclusivity rules hold, otherwise the broken rule.
  std::string violated_rule() const;

  friend bool operator==(const ErrorFlags&, const ErrorFlags&) = default;

 private:
  std::array<bool, 6> bits_{};
};

/// The matchable ground truth of one image, arranged for error attribution.
/// Annotations with identical human box, object box and object class form one
/// pair carrying all their verbs.
class ImageContext {
 public:
  struct Member {
    VerbId verb = 0;
    std::size_t annotation_index = 0;
  };
  struct Pair {
    BoundingBox human_box;
    BoundingBox object_box;
    ObjectId object_class = 0;
    std::vector<Member> members;
  };
  struct ObjectBox {
    BoundingBox box;
    ObjectId object_class = 0;
  };

  ImageContext() = default;
  ImageContext(const GroundTruthImage& image, const Vocabulary& vocab, bool strict_visible);

  const std::vector<BoundingBox>& human_boxes() const noexcept { return humans_; }
  const std::vector<ObjectBox>& object_boxes() const noexcept { return objects_; }
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<BoundingBox> humans_;
  std::vector<ObjectBox> objects_;
  std::vector<Pair> pairs_;
};

/// Attributes a false positive to error types. `matched` holds the annotation
/// indices of this image claimed by higher-ranked predictions of any class.
/// Throws ContractViolation when called on a TP.
ErrorFlags decompose_fp(const Prediction& prediction, Verdict verdict, const ImageContext& context,
                        const Vocabulary& vocab, const std::set<std::size_t>& matched,
                        double iou_threshold = 0.5);

struct PredictionAnalysis {
  std::size_t prediction_index = 0;
  Verdict verdict = Verdict::FP;
  ErrorFlags flags;
};

/// Matches `predictions` and decomposes every FP. Results are ordered by
/// Prediction::index.
std::vector<PredictionAnalysis> analyze_predictions(const Dataset& gt,
                                                    std::span<const Prediction> predictions,
                                                    const EvalSettings& settings = {});

struct FlagCounts {
  std::size_t tp_count = 0;
  std::size_t fp_count = 0;
  std::array<std::size_t, 6> flags{};
  /// cooccurrence[i][j]: FPs carrying both flag i and flag j (diagonal = flags).
  std::array<std::array<std::size_t, 6>, 6> cooccurrence{};

  void add(const PredictionAnalysis& a);
  double proportion(ErrorType t) const;
  friend bool operator==(const FlagCounts&, const FlagCounts&) = default;
};

struct SweepCell {
  FlagCounts overall;
  std::map<Category, FlagCounts> per_category;  // all categories, zeros included
  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct ErrorSweep {
  std::vector<double> thresholds;
  std::vector<SweepCell> per_threshold;  // parallel to thresholds
  friend bool operator==(const ErrorSweep&, const ErrorSweep&) = default;
};

/// 0.0, 0.1, ..., 0.9.
std::vector<double> default_threshold_grid();
/// Parses "start:stop:step" (inclusive stop) or a comma-separated list.
std::vector<double> parse_threshold_grid(std::string_view text);

/// For each threshold t, re-runs matching on predictions with score >= t and
/// decomposes the resulting FPs, grouped by the category of each prediction's
/// image. Thresholds must be non-empty, ascending and within [0, 1]
/// (InputError otherwise).
ErrorSweep sweep(const Dataset& gt, std::span<const Prediction> predictions,
                 const std::map<std::string, Category>& categories,
                 std::span<const double> thresholds, const EvalSettings& settings = {});

}  // namespace hoidiag
