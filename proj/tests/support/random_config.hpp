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
#include <random>
#include <string>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "oracles/reference_eval.hpp"
#include "support/fixtures.hpp"

namespace hoidiag::testing {

struct RandomLimits {
  std::size_t max_images = 10;
  std::size_t max_gt_per_class = 3;
  std::size_t max_preds_per_class = 5;
  double invisible_rate = 0.1;
};

struct RandomConfig {
  Dataset gt;
  PredictionSet predictions;
};

inline BoundingBox random_box(std::mt19937_64& rng, double w, double h) {
  std::uniform_real_distribution<double> size(20.0, 160.0);
  const double bw = size(rng);
  const double bh = size(rng);
  std::uniform_real_distribution<double> x(0.0, w - bw);
  std::uniform_real_distribution<double> y(0.0, h - bh);
  const double x1 = x(rng);
  const double y1 = y(rng);
  return {x1, y1, x1 + bw, y1 + bh};
}

/// Shifts each edge by a Gaussian fraction of the box size; the result stays
/// inside the image and non-degenerate.
inline BoundingBox perturb(std::mt19937_64& rng, const BoundingBox& b, double sigma, double w, double h) {
  std::normal_distribution<double> n(0.0, sigma);
  BoundingBox p{b.x1 + n(rng) * b.width(), b.y1 + n(rng) * b.height(), b.x2 + n(rng) * b.width(),
                b.y2 + n(rng) * b.height()};
  p = clamp_to(p, w, h);
  if (p.x2 - p.x1 < 1.0 || p.y2 - p.y1 < 1.0) return b;
  return p;
}

/// Small random ground truth and predictions over tiny_vocabulary(). Boxes
/// are reused inside an image so persons and objects are shared between
/// pairs, and predictions mix near copies, relabelings, and random boxes.
inline RandomConfig random_config(std::mt19937_64& rng, const RandomLimits& lim = {}) {
  const Vocabulary vocab = tiny_vocabulary();
  const double W = 640;
  const double H = 480;
  std::uniform_int_distribution<std::size_t> n_images(1, lim.max_images);
  const std::size_t images = n_images(rng);
  std::vector<GroundTruthImage> ims;
  std::vector<std::vector<BoundingBox>> humans(images);
  std::vector<std::vector<BoundingBox>> objects(images);
  for (std::size_t i = 0; i < images; ++i) ims.push_back(img("im" + std::to_string(i), {}, W, H));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_image(0, images - 1);
  const auto pooled = [&](std::vector<BoundingBox>& pool) {
    if (!pool.empty() && u(rng) < 0.5) {
      return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    }
    pool.push_back(random_box(rng, W, H));
    return pool.back();
  };

  std::vector<HoiId> classes;
  for (const auto& c : vocab.hoi_classes()) classes.push_back(c.id);
  std::shuffle(classes.begin(), classes.end(), rng);
  classes.resize(std::uniform_int_distribution<std::size_t>(1, 4)(rng));

  for (HoiId c : classes) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, lim.max_gt_per_class)(rng);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = pick_image(rng);
      ims[i].annotations.push_back(
          ann(pooled(humans[i]), pooled(objects[i]), c, u(rng) < lim.invisible_rate));
    }
  }
  Dataset gt(vocab, ims);

  PredictionSet preds;
  preds.model_name = "random";
  const double scores[] = {0.2, 0.4, 0.5, 0.6, 0.8, 0.9};
  for (HoiId c : classes) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, lim.max_preds_per_class)(rng);
    for (std::size_t k = 0; k < n; ++k) {
      Prediction p;
      p.hoi_id = c;
      p.index = preds.predictions.size();
      p.score = u(rng) < 0.5 ? scores[std::uniform_int_distribution<int>(0, 5)(rng)] : u(rng);
      const std::size_t i = pick_image(rng);
      p.image_id = ims[i].image_id;
      const auto& anns = ims[i].annotations;
      const double mode = u(rng);
      if (!anns.empty() && mode < 0.75) {
        const HoiAnnotation& a = anns[std::uniform_int_distribution<std::size_t>(0, anns.size() - 1)(rng)];
        p.human_box = perturb(rng, a.human_box, 0.08, W, H);
        p.object_box = perturb(rng, a.object_box, 0.08, W, H);
        if (mode < 0.35) p.hoi_id = a.hoi_id;
        if (mode > 0.6 && !objects[i].empty()) {
          p.object_box = objects[i][std::uniform_int_distribution<std::size_t>(0, objects[i].size() - 1)(rng)];
        }
      } else {
        p.human_box = humans[i].empty() || u(rng) < 0.5 ? random_box(rng, W, H) : humans[i].front();
        p.object_box = random_box(rng, W, H);
      }
      preds.predictions.push_back(p);
    }
  }
  return {gt, preds};
}

inline std::vector<oracle::GtEntry> to_oracle(const Dataset& d, bool strict_visible = false) {
  const Vocabulary& v = d.vocabulary();
  std::vector<oracle::GtEntry> out;
  for (const auto& im : d.images()) {
    for (std::size_t k = 0; k < im.annotations.size(); ++k) {
      const HoiAnnotation& a = im.annotations[k];
      if (strict_visible && a.invisible) continue;
      out.push_back({im.image_id,
                     {a.human_box.x1, a.human_box.y1, a.human_box.x2, a.human_box.y2},
                     {a.object_box.x1, a.object_box.y1, a.object_box.x2, a.object_box.y2},
                     a.hoi_id, v.verb_of(a.hoi_id), v.object_of(a.hoi_id), a.invisible, k});
    }
  }
  return out;
}

inline std::vector<oracle::PredEntry> to_oracle(const PredictionSet& ps, const Vocabulary& v) {
  std::vector<oracle::PredEntry> out;
  for (const auto& p : ps.predictions) {
    out.push_back({p.image_id,
                   {p.human_box.x1, p.human_box.y1, p.human_box.x2, p.human_box.y2},
                   {p.object_box.x1, p.object_box.y1, p.object_box.x2, p.object_box.y2},
                   p.hoi_id, v.verb_of(p.hoi_id), v.object_of(p.hoi_id), p.score, p.index});
  }
  return out;
}

}  // namespace hoidiag::testing
