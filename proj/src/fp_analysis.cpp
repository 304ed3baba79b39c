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

#include "hoidiag/fp_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hoidiag/errors.hpp"
#include "hoidiag/parallel.hpp"

namespace hoidiag {

namespace {

constexpr std::array<std::string_view, 6> kErrorNames = {
    "human_box", "object_box", "object_class", "verb", "pairing", "duplicate"};

double round_grid_value(double v) { return std::round(v * 1e9) / 1e9; }

}  // namespace

std::string_view to_string(ErrorType t) { return kErrorNames[static_cast<std::size_t>(t)]; }

std::optional<ErrorType> error_type_from_string(std::string_view s) {
  for (ErrorType t : kAllErrorTypes) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

bool ErrorFlags::any() const { return count() > 0; }

std::size_t ErrorFlags::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::string ErrorFlags::violated_rule() const {
  if (test(ErrorType::ObjectBox) && test(ErrorType::ObjectClass)) {
    return "object_box and object_class are exclusive";
  }
  for (ErrorType t : {ErrorType::Pairing, ErrorType::Verb, ErrorType::Duplicate}) {
    if (test(t) && count() > 1) return std::string(to_string(t)) + " excludes every other flag";
  }
  return {};
}

ImageContext::ImageContext(const GroundTruthImage& image, const Vocabulary& vocab,
                           bool strict_visible) {
  std::map<std::tuple<BoundingBox, BoundingBox, ObjectId>, std::size_t> pair_slot;
  for (std::size_t k = 0; k < image.annotations.size(); ++k) {
    const HoiAnnotation& a = image.annotations[k];
    if (strict_visible && a.invisible) continue;
    const ObjectId cls = vocab.object_of(a.hoi_id);
    humans_.push_back(a.human_box);
    objects_.push_back({a.object_box, cls});
    auto [it, inserted] = pair_slot.emplace(std::tuple{a.human_box, a.object_box, cls}, pairs_.size());
    if (inserted) pairs_.push_back({a.human_box, a.object_box, cls, {}});
    pairs_[it->second].members.push_back({vocab.verb_of(a.hoi_id), k});
  }
}

ErrorFlags decompose_fp(const Prediction& p, Verdict verdict, const ImageContext& ctx,
                        const Vocabulary& vocab, const std::set<std::size_t>& matched,
                        double tau) {
  if (verdict == Verdict::TP) {
    throw ContractViolation("decompose_fp: prediction " + std::to_string(p.index) +
                            " is a true positive");
  }
  const ObjectId o = vocab.object_of(p.hoi_id);
  const VerbId v = vocab.verb_of(p.hoi_id);
  ErrorFlags f;

  const auto& humans = ctx.human_boxes();
  f.set(ErrorType::HumanBox, std::none_of(humans.begin(), humans.end(), [&](const BoundingBox& h) {
          return iou(p.human_box, h) > tau;
        }));

  bool object_localized = false;
  bool right_class_nearby = false;
  for (const auto& ob : ctx.object_boxes()) {
    if (iou(p.object_box, ob.box) > tau) {
      object_localized = true;
      if (ob.object_class == o) right_class_nearby = true;
    }
  }
  f.set(ErrorType::ObjectBox, !object_localized);
  f.set(ErrorType::ObjectClass, object_localized && !right_class_nearby);

  // Pairs of the predicted object class that both boxes localize onto.
  bool any_localized_pair = false;
  bool verb_present = false;
  bool verb_unclaimed = false;
  for (const auto& pair : ctx.pairs()) {
    if (pair.object_class != o) continue;
    if (pair_iou(p.human_box, p.object_box, pair.human_box, pair.object_box) <= tau) continue;
    any_localized_pair = true;
    for (const auto& m : pair.members) {
      if (m.verb != v) continue;
      verb_present = true;
      if (!matched.count(m.annotation_index)) verb_unclaimed = true;
    }
  }

  const bool box_or_class = f.test(ErrorType::HumanBox) || f.test(ErrorType::ObjectBox) ||
                            f.test(ErrorType::ObjectClass);
  f.set(ErrorType::Pairing, !any_localized_pair && !box_or_class);
  f.set(ErrorType::Verb, any_localized_pair && !verb_present);
  f.set(ErrorType::Duplicate, verb_present && !verb_unclaimed);

  if (!f.any()) {
    throw ContractViolation("decompose_fp: prediction " + std::to_string(p.index) +
                            " is an FP without any error flag; match state is inconsistent");
  }
  return f;
}

std::vector<PredictionAnalysis> analyze_predictions(const Dataset& gt,
                                                    std::span<const Prediction> predictions,
                                                    const EvalSettings& settings) {
  const DatasetMatch dm = match_dataset(gt, predictions, settings);

  std::map<std::string, std::set<std::size_t>> matched;
  std::map<std::size_t, Verdict> verdicts;
  for (const auto& [_, outcomes] : dm.outcomes) {
    for (const MatchOutcome& m : outcomes) {
      verdicts[m.prediction_index] = m.verdict;
      if (m.matched_gt) matched[m.matched_gt->image_id].insert(m.matched_gt->annotation_index);
    }
  }

  const auto& images = gt.images();
  std::vector<ImageContext> contexts(images.size());
  parallel_for(images.size(), settings.threads, [&](std::size_t i) {
    contexts[i] = ImageContext(images[i], gt.vocabulary(), settings.strict_visible);
  });

  std::vector<const Prediction*> ordered;
  ordered.reserve(predictions.size());
  for (const Prediction& p : predictions) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const Prediction* a, const Prediction* b) { return a->index < b->index; });

  static const std::set<std::size_t> kNothingMatched;
  std::vector<PredictionAnalysis> out(ordered.size());
  parallel_for(ordered.size(), settings.threads, [&](std::size_t i) {
    const Prediction& p = *ordered[i];
    PredictionAnalysis& a = out[i];
    a.prediction_index = p.index;
    a.verdict = verdicts.at(p.index);
    if (a.verdict == Verdict::TP) return;
    auto mit = matched.find(p.image_id);
    a.flags = decompose_fp(p, a.verdict, contexts[gt.index_of(p.image_id)], gt.vocabulary(),
                           mit == matched.end() ? kNothingMatched : mit->second,
                           settings.iou_threshold);
  });
  return out;
}

void FlagCounts::add(const PredictionAnalysis& a) {
  if (a.verdict == Verdict::TP) {
    ++tp_count;
    return;
  }
  ++fp_count;
  for (std::size_t i = 0; i < 6; ++i) {
    if (!a.flags.test(kAllErrorTypes[i])) continue;
    ++flags[i];
    for (std::size_t j = 0; j < 6; ++j) {
      if (a.flags.test(kAllErrorTypes[j])) ++cooccurrence[i][j];
    }
  }
}

double FlagCounts::proportion(ErrorType t) const {
  if (fp_count == 0) return 0.0;
  return static_cast<double>(flags[static_cast<std::size_t>(t)]) / static_cast<double>(fp_count);
}

std::vector<double> default_threshold_grid() {
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(round_grid_value(i * 0.1));
  return out;
}

std::vector<double> parse_threshold_grid(std::string_view text) {
  const auto to_double = [&](std::string_view s) {
    std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != str.size() || str.empty()) {
      throw InputError("invalid threshold '" + str + "' in '" + std::string(text) + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw InputError("threshold range must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = to_double(text.substr(0, a));
    const double stop = to_double(text.substr(a + 1, b - a - 1));
    const double step = to_double(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) {
      throw InputError("threshold range needs step > 0 and stop >= start");
    }
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) out.push_back(round_grid_value(start + static_cast<double>(i) * step));
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      out.push_back(to_double(text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  return out;
}

ErrorSweep sweep(const Dataset& gt, std::span<const Prediction> predictions,
                 const std::map<std::string, Category>& categories,
                 std::span<const double> thresholds, const EvalSettings& settings) {
  if (thresholds.empty()) throw InputError("sweep: the threshold list is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
      throw InputError("sweep: thresholds must lie in [0, 1]");
    }
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw InputError("sweep: thresholds must be strictly ascending");
    }
  }

  std::map<std::size_t, const Prediction*> by_index;
  for (const Prediction& p : predictions) by_index[p.index] = &p;

  ErrorSweep out;
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) {
    std::vector<Prediction> kept;
    for (const Prediction& p : predictions) {
      if (p.score >= t) kept.push_back(p);
    }
    SweepCell cell;
    for (Category c : kAllCategories) cell.per_category[c] = {};
    for (const PredictionAnalysis& a : analyze_predictions(gt, kept, settings)) {
      cell.overall.add(a);
      auto cit = categories.find(by_index.at(a.prediction_index)->image_id);
      if (cit != categories.end()) cell.per_category[cit->second].add(a);
    }
    out.per_threshold.push_back(std::move(cell));
  }
  return out;
}

}  // namespace hoidiag
