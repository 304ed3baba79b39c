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

#include "hoidiag/annotations.hpp"

#include "hoidiag/errors.hpp"

namespace hoidiag {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& detail)
    : InputError(source + ": parse error at line " + std::to_string(line) + ", column " +
                 std::to_string(column) + ": " + detail),
      line_(line),
      column_(column) {}

Dataset::Dataset(Vocabulary vocabulary, std::vector<GroundTruthImage> images)
    : vocabulary_(std::move(vocabulary)), images_(std::move(images)) {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const GroundTruthImage& img = images_[i];
    if (!index_.emplace(img.image_id, i).second) {
      throw SchemaError("duplicate image_id '" + img.image_id + "'");
    }
    if (!(img.width > 0.0) || !(img.height > 0.0)) {
      throw SchemaError("image '" + img.image_id + "': width and height must be positive");
    }
    for (std::size_t k = 0; k < img.annotations.size(); ++k) {
      const HoiAnnotation& a = img.annotations[k];
      const std::string where =
          "image '" + img.image_id + "', annotation " + std::to_string(k) + ": ";
      if (!vocabulary_.has_hoi(a.hoi_id)) {
        throw SchemaError(where + "unknown hoi_id " + std::to_string(a.hoi_id));
      }
      for (const BoundingBox* b : {&a.human_box, &a.object_box}) {
        if (auto defect = box_defect(*b); !defect.empty()) throw SchemaError(where + defect);
        if (b->x2 > img.width || b->y2 > img.height) {
          throw SchemaError(where + "box exceeds image bounds");
        }
      }
    }
  }
}

std::size_t Dataset::index_of(const std::string& image_id) const {
  auto it = index_.find(image_id);
  if (it == index_.end()) throw ContractViolation("unknown image_id '" + image_id + "'");
  return it->second;
}

std::size_t Dataset::annotation_count() const {
  std::size_t n = 0;
  for (const auto& img : images_) n += img.annotations.size();
  return n;
}

}  // namespace hoidiag
