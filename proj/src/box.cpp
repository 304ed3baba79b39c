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

#include "hoidiag/box.hpp"

#include <cmath>

namespace hoidiag {

std::string box_defect(const BoundingBox& b) {
  if (!std::isfinite(b.x1) || !std::isfinite(b.y1) || !std::isfinite(b.x2) ||
      !std::isfinite(b.y2)) {
    return "non-finite coordinate";
  }
  if (b.x1 < 0.0 || b.y1 < 0.0) return "negative coordinate";
  if (!(b.x2 > b.x1)) return "x2 <= x1";
  if (!(b.y2 > b.y1)) return "y2 <= y1";
  return {};
}

BoundingBox clamp_to(const BoundingBox& b, double width, double height) {
  return {std::clamp(b.x1, 0.0, width), std::clamp(b.y1, 0.0, height),
          std::clamp(b.x2, 0.0, width), std::clamp(b.y2, 0.0, height)};
}

BoundingBox normalize_corners(const BoundingBox& b) {
  return {std::min(b.x1, b.x2), std::min(b.y1, b.y2), std::max(b.x1, b.x2),
          std::max(b.y1, b.y2)};
}

}  // namespace hoidiag
