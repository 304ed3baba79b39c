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

#include <algorithm>
#include <string>

namespace hoidiag {

/// Axis-aligned box in pixel coordinates, origin at the top-left corner.
/// Valid boxes have finite, non-negative coordinates with x2 > x1 and y2 > y1.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const noexcept { return x2 - x1; }
  double height() const noexcept { return y2 - y1; }
  double area() const noexcept { return width() * height(); }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
  friend auto operator<=>(const BoundingBox&, const BoundingBox&) = default;
};

/// Empty string when the box is valid, otherwise a short reason.
std::string box_defect(const BoundingBox& box);

inline bool is_valid(const BoundingBox& box) { return box_defect(box).empty(); }

/// Clamps to [0, width] x [0, height]. The result may be empty.
BoundingBox clamp_to(const BoundingBox& box, double width, double height);

/// Sorts each corner pair so that x1 <= x2 and y1 <= y2.
BoundingBox normalize_corners(const BoundingBox& box);

/// Intersection over union in double precision; 0 for disjoint boxes.
inline double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

/// Pair overlap used for matching: both boxes must clear the threshold.
inline double pair_iou(const BoundingBox& human_a, const BoundingBox& object_a,
                       const BoundingBox& human_b, const BoundingBox& object_b) noexcept {
  return std::min(iou(human_a, human_b), iou(object_a, object_b));
}

}  // namespace hoidiag
