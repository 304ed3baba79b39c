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
#include <string>
#include <vector>

#include "hoidiag/box.hpp"
#include "hoidiag/vocabulary.hpp"

namespace hoidiag {

struct HoiAnnotation {
  BoundingBox human_box;
  BoundingBox object_box;
  HoiId hoi_id = 0;
  bool invisible = false;
  friend bool operator==(const HoiAnnotation&, const HoiAnnotation&) = default;
};

struct GroundTruthImage {
  std::string image_id;
  double width = 0.0;
  double height = 0.0;
  std::vector<HoiAnnotation> annotations;
  friend bool operator==(const GroundTruthImage&, const GroundTruthImage&) = default;
};

/// A ground-truth file: one vocabulary plus its images, in file order.
class Dataset {
 public:
  Dataset() = default;
  /// Validates image id uniqueness and every annotation's hoi_id and boxes.
  Dataset(Vocabulary vocabulary, std::vector<GroundTruthImage> images);

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<GroundTruthImage>& images() const noexcept { return images_; }

  bool contains(const std::string& image_id) const { return index_.count(image_id) != 0; }
  /// Position of the image in file order; throws ContractViolation if absent.
  std::size_t index_of(const std::string& image_id) const;
  const GroundTruthImage& image(const std::string& image_id) const {
    return images_[index_of(image_id)];
  }

  std::size_t annotation_count() const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.vocabulary_ == b.vocabulary_ && a.images_ == b.images_;
  }

 private:
  Vocabulary vocabulary_;
  std::vector<GroundTruthImage> images_;
  std::map<std::string, std::size_t> index_;
};

/// A scored HOI triplet. `index` is the position in the source file and is
/// used as the final tie-breaker when ranking.
struct Prediction {
  std::string image_id;
  BoundingBox human_box;
  BoundingBox object_box;
  HoiId hoi_id = 0;
  double score = 0.0;
  std::size_t index = 0;
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct PredictionSet {
  std::string model_name;
  std::vector<Prediction> predictions;
  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

/// Ranking order shared by matching and error analysis: score descending,
/// then image id ascending, then file position ascending.
inline bool ranks_before(const Prediction& a, const Prediction& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  return a.index < b.index;
}

}  // namespace hoidiag
