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

#include <string>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "hoidiag/vocabulary.hpp"

namespace hoidiag::testing {

// Objects: 1 bicycle, 2 horse, 3 cup.
// Verbs: 1 ride, 2 hold, 3 no_interaction, 4 feed.
// HOI: 1 ride-bicycle, 2 hold-bicycle, 3 none-bicycle, 4 ride-horse,
//      5 feed-horse, 6 hold-cup, 7 none-horse, 8 none-cup, 9 hold-horse.
inline Vocabulary tiny_vocabulary() {
  return Vocabulary({{1, "bicycle"}, {2, "horse"}, {3, "cup"}},
                    {{1, "ride", false}, {2, "hold", false}, {3, "no_interaction", true}, {4, "feed", false}},
                    {{1, 1, 1}, {2, 2, 1}, {3, 3, 1}, {4, 1, 2}, {5, 4, 2}, {6, 2, 3}, {7, 3, 2},
                     {8, 3, 3}, {9, 2, 2}});
}

inline HoiAnnotation ann(BoundingBox h, BoundingBox o, HoiId hoi, bool invisible = false) {
  return {h, o, hoi, invisible};
}

inline GroundTruthImage img(std::string id, std::vector<HoiAnnotation> anns, double w = 640,
                            double h = 480) {
  return {std::move(id), w, h, std::move(anns)};
}

inline Prediction pred(std::string image, BoundingBox h, BoundingBox o, HoiId hoi, double score,
                       std::size_t index) {
  return {std::move(image), h, o, hoi, score, index};
}

/// Ground truth fed back as score-1 predictions, in file order.
inline PredictionSet as_predictions(const Dataset& d) {
  PredictionSet out;
  out.model_name = "oracle";
  for (const auto& im : d.images()) {
    for (const auto& a : im.annotations) {
      out.predictions.push_back({im.image_id, a.human_box, a.object_box, a.hoi_id, 1.0,
                                 out.predictions.size()});
    }
  }
  return out;
}

}  // namespace hoidiag::testing
