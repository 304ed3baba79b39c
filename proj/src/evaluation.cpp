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

#include "hoidiag/evaluation.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "hoidiag/errors.hpp"
#include "hoidiag/parallel.hpp"

namespace hoidiag {

std::vector<MatchOutcome> match_class(std::span<const GtPair> gt_pairs,
                                      std::span<const Prediction> predictions,
                                      double iou_threshold) {
  std::map<std::string, std::vector<std::size_t>> gt_by_image;
  for (std::size_t i = 0; i < gt_pairs.size(); ++i) gt_by_image[gt_pairs[i].image_id].push_back(i);
  for (auto& [_, idx] : gt_by_image) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return gt_pairs[a].annotation_index < gt_pairs[b].annotation_index;
    });
  }

  std::vector<std::size_t> order(predictions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(predictions[a], predictions[b]);
  });

  std::vector<bool> taken(gt_pairs.size(), false);
  std::vector<MatchOutcome> out;
  out.reserve(predictions.size());
  for (std::size_t pi : order) {
    const Prediction& p = predictions[pi];
    MatchOutcome m;
    m.prediction_index = p.index;
    m.image_id = p.image_id;
    m.score = p.score;

    std::optional<std::size_t> best;
    double best_overlap = iou_threshold;
    if (auto it = gt_by_image.find(p.image_id); it != gt_by_image.end()) {
      for (std::size_t gi : it->second) {
        if (taken[gi]) continue;
        const GtPair& g = gt_pairs[gi];
        const double overlap = pair_iou(p.human_box, p.object_box, g.human_box, g.object_box);
        if (overlap > best_overlap) {
          best_overlap = overlap;
          best = gi;
        }
      }
    }
    if (best) {
      taken[*best] = true;
      m.verdict = Verdict::TP;
      m.matched_gt = GtRef{gt_pairs[*best].image_id, gt_pairs[*best].annotation_index};
      m.match_iou = best_overlap;
    }
    out.push_back(std::move(m));
  }
  return out;
}

double average_precision(std::span<const MatchOutcome> outcomes, std::size_t gt_count) {
  if (gt_count == 0) {
    throw ContractViolation("average_precision: undefined for a class without ground truth");
  }
  const std::size_t n = outcomes.size();
  std::vector<double> envelope(n);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes[i].verdict == Verdict::TP) ++tp;
    envelope[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  if (tp > gt_count) {
    throw ContractViolation("average_precision: more true positives than ground-truth pairs");
  }
  for (std::size_t i = n; i-- > 1;) envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (outcomes[i].verdict == Verdict::TP) sum += envelope[i];
  }
  return sum / static_cast<double>(gt_count);
}

std::map<HoiId, std::vector<GtPair>> matchable_pairs(const Dataset& gt,
                                                     const EvalSettings& settings) {
  std::map<HoiId, std::vector<GtPair>> out;
  for (const auto& img : gt.images()) {
    for (std::size_t k = 0; k < img.annotations.size(); ++k) {
      const HoiAnnotation& a = img.annotations[k];
      if (settings.strict_visible && a.invisible) continue;
      out[a.hoi_id].push_back({img.image_id, k, a.human_box, a.object_box});
    }
  }
  return out;
}

DatasetMatch match_dataset(const Dataset& gt, std::span<const Prediction> predictions,
                           const EvalSettings& settings) {
  DatasetMatch dm;
  dm.gt = matchable_pairs(gt, settings);
  std::map<HoiId, std::vector<Prediction>> by_class;
  for (const Prediction& p : predictions) {
    if (!gt.contains(p.image_id)) {
      throw InputError("prediction " + std::to_string(p.index) + " references unknown image '" +
                       p.image_id + "'");
    }
    by_class[p.hoi_id].push_back(p);
  }
  std::vector<HoiId> classes;
  for (const auto& [c, _] : dm.gt) classes.push_back(c);
  for (const auto& [c, _] : by_class) classes.push_back(c);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  static const std::vector<GtPair> kNoPairs;
  static const std::vector<Prediction> kNoPredictions;
  std::vector<std::vector<MatchOutcome>> results(classes.size());
  parallel_for(classes.size(), settings.threads, [&](std::size_t i) {
    auto git = dm.gt.find(classes[i]);
    auto pit = by_class.find(classes[i]);
    results[i] = match_class(git == dm.gt.end() ? kNoPairs : git->second,
                             pit == by_class.end() ? kNoPredictions : pit->second,
                             settings.iou_threshold);
  });
  for (std::size_t i = 0; i < classes.size(); ++i) dm.outcomes[classes[i]] = std::move(results[i]);
  return dm;
}

namespace {

// Subset slots: one per category, then the two person groups.
constexpr std::size_t kCategorySlots = kAllCategories.size();
constexpr std::size_t kSlots = kCategorySlots + 2;

std::vector<std::size_t> slots_of(Category c) {
  std::vector<std::size_t> s{static_cast<std::size_t>(c)};
  if (is_single_person(c)) s.push_back(kCategorySlots);
  if (is_multi_person(c)) s.push_back(kCategorySlots + 1);
  return s;
}

struct ClassEval {
  std::optional<ClassResult> overall;
  std::array<std::optional<ClassResult>, kSlots> subsets;
};

double mean_ap(const std::map<HoiId, ClassResult>& results) {
  double sum = 0.0;
  for (const auto& [_, r] : results) sum += r.ap;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

}  // namespace

EvalReport evaluate(const Dataset& gt, const PredictionSet& predictions,
                    const std::map<std::string, Category>& categories,
                    const EvalSettings& settings) {
  const DatasetMatch dm = match_dataset(gt, predictions.predictions, settings);

  std::map<std::string, std::vector<std::size_t>> image_slots;
  for (const auto& [image_id, c] : categories) image_slots[image_id] = slots_of(c);
  static const std::vector<std::size_t> kNoSlots;
  const auto slots_for = [&](const std::string& image_id) -> const std::vector<std::size_t>& {
    auto it = image_slots.find(image_id);
    return it == image_slots.end() ? kNoSlots : it->second;
  };

  std::vector<HoiId> classes;
  for (const auto& [c, _] : dm.outcomes) classes.push_back(c);
  std::vector<ClassEval> evals(classes.size());

  parallel_for(classes.size(), settings.threads, [&](std::size_t i) {
    const HoiId c = classes[i];
    const std::vector<MatchOutcome>& outcomes = dm.outcomes.at(c);
    auto git = dm.gt.find(c);
    const std::size_t gt_total = git == dm.gt.end() ? 0 : git->second.size();
    ClassEval& ev = evals[i];
    if (gt_total > 0) ev.overall = ClassResult{average_precision(outcomes, gt_total), gt_total,
                                               outcomes.size()};

    std::array<std::size_t, kSlots> gt_counts{};
    if (git != dm.gt.end()) {
      for (const GtPair& g : git->second) {
        for (std::size_t s : slots_for(g.image_id)) ++gt_counts[s];
      }
    }
    std::array<std::vector<MatchOutcome>, kSlots> subset_outcomes;
    for (const MatchOutcome& m : outcomes) {
      for (std::size_t s : slots_for(m.image_id)) subset_outcomes[s].push_back(m);
    }
    for (std::size_t s = 0; s < kSlots; ++s) {
      if (gt_counts[s] == 0) continue;
      ev.subsets[s] = ClassResult{average_precision(subset_outcomes[s], gt_counts[s]),
                                  gt_counts[s], subset_outcomes[s].size()};
    }
  });

  EvalReport report;
  report.model_name = predictions.model_name;
  std::array<std::map<HoiId, ClassResult>, kSlots> per_slot;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (evals[i].overall) report.per_class_ap[classes[i]] = *evals[i].overall;
    for (std::size_t s = 0; s < kSlots; ++s) {
      if (evals[i].subsets[s]) per_slot[s][classes[i]] = *evals[i].subsets[s];
    }
  }
  report.map_overall = mean_ap(report.per_class_ap);
  for (Category c : kAllCategories) {
    const auto& results = per_slot[static_cast<std::size_t>(c)];
    if (results.empty()) continue;
    report.per_category_map[c] = mean_ap(results);
    report.per_category_class_ap[c] = results;
  }
  if (!per_slot[kCategorySlots].empty()) {
    report.per_group_map[PersonGroup::SinglePerson] = mean_ap(per_slot[kCategorySlots]);
  }
  if (!per_slot[kCategorySlots + 1].empty()) {
    report.per_group_map[PersonGroup::MultiPerson] = mean_ap(per_slot[kCategorySlots + 1]);
  }
  return report;
}

}  // namespace hoidiag
