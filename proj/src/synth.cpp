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

#include "hoidiag/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "hoidiag/errors.hpp"
#include "hoidiag/parallel.hpp"

namespace hoidiag {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

std::uint64_t scene_seed(std::uint64_t seed, std::size_t scene_index) {
  SplitMix64 rng(seed ^ ((static_cast<std::uint64_t>(scene_index) + 1) * 0x9E3779B97F4A7C15ULL));
  return rng.next();
}

namespace {

constexpr int kGridCols = 6;
constexpr int kGridRows = 4;
constexpr int kCells = kGridCols * kGridRows;
constexpr std::size_t kDistinctObjects = 6;

enum VerbName { kHold = 1, kRide, kKick, kThrow, kToast, kDrinkWith, kCarry, kFeed, kNoInteraction };

const std::vector<Category>& default_mix() {
  static const std::vector<Category> mix = {Category::SPSO, Category::SPMO, Category::A,
                                            Category::B,    Category::C,    Category::D,
                                            Category::E,    Category::F};
  return mix;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

struct Layout {
  double cell_w;
  double cell_h;

  BoundingBox cell(int c) const {
    const int col = c % kGridCols;
    const int row = c / kGridCols;
    return {col * cell_w, row * cell_h, (col + 1) * cell_w, (row + 1) * cell_h};
  }

  // A box inside the cell with a 5% margin on every side.
  BoundingBox box_in(int c, SplitMix64& rng) const {
    const BoundingBox r = cell(c);
    const double mw = 0.05 * cell_w;
    const double mh = 0.05 * cell_h;
    const double w = rng.uniform(0.5, 0.85) * cell_w;
    const double h = rng.uniform(0.5, 0.85) * cell_h;
    const double x1 = r.x1 + mw + rng.uniform01() * (cell_w - 2 * mw - w);
    const double y1 = r.y1 + mh + rng.uniform01() * (cell_h - 2 * mh - h);
    return {round2(x1), round2(y1), round2(x1 + w), round2(y1 + h)};
  }
};

struct Scene {
  struct Pair {
    std::size_t person;
    std::size_t object;
    std::vector<VerbId> verbs;
  };
  std::vector<BoundingBox> persons;
  std::vector<BoundingBox> objects;
  std::vector<ObjectId> object_classes;
  std::vector<Pair> pairs;
  int void_cell = kCells - 1;
};

struct SceneOutput {
  GroundTruthImage image;
  std::vector<Prediction> predictions;
  std::vector<InjectionRecord> records;
  std::map<ErrorType, std::size_t> skipped;
};

class SceneBuilder {
 public:
  SceneBuilder(const SynthSpec& spec, const Vocabulary& vocab, std::size_t scene_index,
               Category category)
      : spec_(spec),
        vocab_(vocab),
        scene_index_(scene_index),
        category_(category),
        rng_(scene_seed(spec.seed, scene_index)),
        layout_{spec.image_width / kGridCols, spec.image_height / kGridRows} {
    for (int c = 0; c < kCells - 1; ++c) free_cells_.push_back(c);
    shuffle(free_cells_);
  }

  SceneOutput build() {
    compose();
    SceneOutput out;
    char id[32];
    std::snprintf(id, sizeof id, "synth_%06zu", scene_index_);
    out.image.image_id = id;
    out.image.width = spec_.image_width;
    out.image.height = spec_.image_height;
    for (const auto& p : scene_.pairs) {
      for (VerbId v : p.verbs) {
        out.image.annotations.push_back({scene_.persons[p.person], scene_.objects[p.object],
                                         hoi(v, scene_.object_classes[p.object]), false});
      }
    }
    emit_true_positives(out);
    for (const auto& [type, count] : spec_.injections_per_scene) {
      for (std::size_t k = 0; k < count; ++k) inject(type, out);
    }
    return out;
  }

 private:
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

  HoiId hoi(VerbId v, ObjectId o) const { return *vocab_.find_hoi(v, o); }

  std::vector<VerbId> interactive_verbs(ObjectId o) const {
    std::vector<VerbId> out;
    for (HoiId h : vocab_.classes_of_object(o)) {
      if (!vocab_.is_no_interaction(h)) out.push_back(vocab_.verb_of(h));
    }
    return out;
  }

  ObjectId random_object() {
    return static_cast<ObjectId>(rng_.uniform_int(1, static_cast<std::int64_t>(kDistinctObjects)));
  }

  // One or two distinct interactive verbs of the object.
  std::vector<VerbId> random_verb_set(ObjectId o) {
    std::vector<VerbId> pool = interactive_verbs(o);
    shuffle(pool);
    const auto n = static_cast<std::size_t>(rng_.uniform_int(1, 2));
    std::vector<VerbId> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(out.begin(), out.end());
    return out;
  }

  // A verb set that differs from {base}: either {base, w} or {w}.
  std::vector<VerbId> altered_verb_set(ObjectId o, VerbId base) {
    std::vector<VerbId> others;
    for (VerbId v : interactive_verbs(o)) {
      if (v != base) others.push_back(v);
    }
    const VerbId w = pick(others);
    std::vector<VerbId> out = rng_.uniform01() < 0.5 ? std::vector<VerbId>{base, w}
                                                     : std::vector<VerbId>{w};
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t add_person() {
    scene_.persons.push_back(layout_.box_in(take_cell(), rng_));
    return scene_.persons.size() - 1;
  }

  std::size_t add_object(ObjectId cls) {
    scene_.objects.push_back(layout_.box_in(take_cell(), rng_));
    scene_.object_classes.push_back(cls);
    return scene_.objects.size() - 1;
  }

  int take_cell() {
    const int c = free_cells_.back();
    free_cells_.pop_back();
    return c;
  }

  std::size_t person_count(std::size_t cap) {
    const std::size_t lo = std::max<std::size_t>(2, spec_.min_persons);
    const std::size_t hi = std::min(spec_.max_persons, cap);
    return static_cast<std::size_t>(
        rng_.uniform_int(static_cast<std::int64_t>(std::min(lo, hi)), static_cast<std::int64_t>(hi)));
  }

  void compose() {
    switch (category_) {
      case Category::SPSO: {
        const ObjectId o = random_object();
        const std::size_t p = add_person();
        scene_.pairs.push_back({p, add_object(o), random_verb_set(o)});
        break;
      }
      case Category::SPMO: {
        const std::size_t p = add_person();
        const auto m = static_cast<std::size_t>(rng_.uniform_int(2, 3));
        for (std::size_t i = 0; i < m; ++i) {
          const ObjectId o = random_object();
          scene_.pairs.push_back({p, add_object(o), random_verb_set(o)});
        }
        break;
      }
      case Category::A:
      case Category::B: {
        const std::size_t n = person_count(kCells);
        const ObjectId o = random_object();
        const std::size_t obj = add_object(o);
        const std::vector<VerbId> shared =
            category_ == Category::A ? random_verb_set(o) : std::vector<VerbId>{pick(interactive_verbs(o))};
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<VerbId> verbs = shared;
          if (category_ == Category::B && i == 0) verbs = altered_verb_set(o, shared.front());
          scene_.pairs.push_back({add_person(), obj, verbs});
        }
        break;
      }
      case Category::C:
      case Category::D: {
        const std::size_t n = person_count(kCells);
        const ObjectId o = random_object();
        const std::vector<VerbId> shared =
            category_ == Category::C ? random_verb_set(o) : std::vector<VerbId>{pick(interactive_verbs(o))};
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<VerbId> verbs = shared;
          if (category_ == Category::D && i == 0) verbs = altered_verb_set(o, shared.front());
          const std::size_t person = add_person();
          scene_.pairs.push_back({person, add_object(o), verbs});
        }
        break;
      }
      case Category::E:
      case Category::F: {
        const std::size_t n = person_count(kDistinctObjects);
        std::vector<ObjectId> labels;
        for (std::size_t o = 1; o <= kDistinctObjects; ++o) labels.push_back(static_cast<ObjectId>(o));
        shuffle(labels);
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<VerbId> verbs{kHold};
          if (category_ == Category::F && i == 0) verbs = altered_verb_set(labels[i], kHold);
          const std::size_t person = add_person();
          scene_.pairs.push_back({person, add_object(labels[i]), verbs});
        }
        break;
      }
      case Category::Excluded: {
        const ObjectId o = random_object();
        const std::size_t p = add_person();
        scene_.pairs.push_back({p, add_object(o), {kNoInteraction}});
        break;
      }
    }
  }

  BoundingBox jittered(const BoundingBox& b) {
    const double dx = spec_.jitter * b.width();
    const double dy = spec_.jitter * b.height();
    BoundingBox j{b.x1 + rng_.uniform(-dx, dx), b.y1 + rng_.uniform(-dy, dy),
                  b.x2 + rng_.uniform(-dx, dx), b.y2 + rng_.uniform(-dy, dy)};
    j = clamp_to(j, spec_.image_width, spec_.image_height);
    return {round2(j.x1), round2(j.y1), round2(j.x2), round2(j.y2)};
  }

  BoundingBox displaced() { return layout_.box_in(scene_.void_cell, rng_); }

  double score(double lo, double hi) { return std::round(rng_.uniform(lo, hi) * 1e6) / 1e6; }

  void push(SceneOutput& out, Prediction p, std::optional<ErrorType> injected) {
    InjectionRecord r;
    r.scene_index = scene_index_;
    r.scene_category = category_;
    r.injected = injected;
    r.intended_verdict = injected ? Verdict::FP : Verdict::TP;
    if (injected) r.intended_flags.set(*injected);
    p.image_id = out.image.image_id;
    out.predictions.push_back(std::move(p));
    out.records.push_back(r);
  }

  void emit_true_positives(SceneOutput& out) {
    for (const HoiAnnotation& a : out.image.annotations) {
      Prediction p;
      p.human_box = jittered(a.human_box);
      p.object_box = jittered(a.object_box);
      p.hoi_id = a.hoi_id;
      p.score = score(0.5, 1.0);
      push(out, p, std::nullopt);
    }
    tp_count_ = out.predictions.size();
  }

  void inject(ErrorType type, SceneOutput& out) {
    const auto& anns = out.image.annotations;
    const HoiAnnotation& a = pick(anns);
    const ObjectId o = vocab_.object_of(a.hoi_id);
    Prediction p;
    p.score = score(0.05, 0.95);
    switch (type) {
      case ErrorType::HumanBox:
        p.human_box = displaced();
        p.object_box = jittered(a.object_box);
        p.hoi_id = a.hoi_id;
        break;
      case ErrorType::ObjectBox:
        p.human_box = jittered(a.human_box);
        p.object_box = displaced();
        p.hoi_id = a.hoi_id;
        break;
      case ErrorType::ObjectClass: {
        ObjectId other = random_object();
        while (other == o) other = random_object();
        p.human_box = jittered(a.human_box);
        p.object_box = jittered(a.object_box);
        p.hoi_id = hoi(pick(interactive_verbs(other)), other);
        break;
      }
      case ErrorType::Verb: {
        std::vector<std::pair<std::size_t, VerbId>> options;
        for (std::size_t i = 0; i < scene_.pairs.size(); ++i) {
          const auto& pr = scene_.pairs[i];
          for (VerbId v : interactive_verbs(scene_.object_classes[pr.object])) {
            if (std::find(pr.verbs.begin(), pr.verbs.end(), v) == pr.verbs.end()) options.push_back({i, v});
          }
        }
        if (options.empty()) {
          ++out.skipped[type];
          return;
        }
        const auto [pi, v] = pick(options);
        const auto& pr = scene_.pairs[pi];
        p.human_box = jittered(scene_.persons[pr.person]);
        p.object_box = jittered(scene_.objects[pr.object]);
        p.hoi_id = hoi(v, scene_.object_classes[pr.object]);
        break;
      }
      case ErrorType::Pairing: {
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t h = 0; h < scene_.persons.size(); ++h) {
          for (std::size_t ob = 0; ob < scene_.objects.size(); ++ob) {
            const bool annotated = std::any_of(scene_.pairs.begin(), scene_.pairs.end(), [&](const auto& pr) {
              return pr.person == h && pr.object == ob;
            });
            if (!annotated) options.push_back({h, ob});
          }
        }
        if (options.empty()) {
          ++out.skipped[type];
          return;
        }
        // Prefer another instance of a class the person already interacts with.
        std::vector<std::pair<std::size_t, std::size_t>> same_class;
        for (const auto& [h, ob] : options) {
          const bool shares = std::any_of(scene_.pairs.begin(), scene_.pairs.end(), [&](const auto& pr) {
            return pr.person == h && scene_.object_classes[pr.object] == scene_.object_classes[ob];
          });
          if (shares) same_class.push_back({h, ob});
        }
        const auto [h, ob] = pick(same_class.empty() ? options : same_class);
        const ObjectId cls = scene_.object_classes[ob];
        p.human_box = jittered(scene_.persons[h]);
        p.object_box = jittered(scene_.objects[ob]);
        p.hoi_id = hoi(pick(interactive_verbs(cls)), cls);
        break;
      }
      case ErrorType::Duplicate: {
        const Prediction& tp = out.predictions[static_cast<std::size_t>(
            rng_.uniform_int(0, static_cast<std::int64_t>(tp_count_) - 1))];
        p.human_box = tp.human_box;
        p.object_box = tp.object_box;
        p.hoi_id = tp.hoi_id;
        p.score = std::round(tp.score * rng_.uniform(0.2, 0.95) * 1e6) / 1e6;
        break;
      }
    }
    push(out, p, type);
  }

  const SynthSpec& spec_;
  const Vocabulary& vocab_;
  std::size_t scene_index_;
  Category category_;
  SplitMix64 rng_;
  Layout layout_;
  std::vector<int> free_cells_;
  Scene scene_;
  std::size_t tp_count_ = 0;
};

// Smooth weighted round-robin: deterministic, proportional, and every
// category with positive weight appears once scene_count >= #categories.
std::vector<Category> schedule(const SynthSpec& spec) {
  std::vector<std::pair<Category, double>> weights;
  if (spec.category_mix.empty()) {
    for (Category c : default_mix()) weights.push_back({c, 1.0});
  } else {
    for (const auto& [c, w] : spec.category_mix) {
      if (w > 0.0) weights.push_back({c, w});
    }
  }
  double total = 0.0;
  for (const auto& [_, w] : weights) total += w;
  std::vector<double> current(weights.size(), 0.0);
  std::vector<Category> out;
  out.reserve(spec.scene_count);
  for (std::size_t i = 0; i < spec.scene_count; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      current[k] += weights[k].second;
      if (current[k] > current[best]) best = k;
    }
    current[best] -= total;
    out.push_back(weights[best].first);
  }
  return out;
}

}  // namespace

Vocabulary synthetic_vocabulary() {
  std::vector<ObjectCategory> objects = {{1, "horse"},      {2, "bicycle"},    {3, "sports_ball"},
                                         {4, "skateboard"}, {5, "wine_glass"}, {6, "cup"}};
  std::vector<Verb> verbs = {{kHold, "hold", false},   {kRide, "ride", false},
                             {kKick, "kick", false},   {kThrow, "throw", false},
                             {kToast, "toast", false}, {kDrinkWith, "drink_with", false},
                             {kCarry, "carry", false}, {kFeed, "feed", false},
                             {kNoInteraction, "no_interaction", true}};
  const std::vector<std::pair<ObjectId, std::vector<VerbId>>> combos = {
      {1, {kHold, kRide, kFeed}},
      {2, {kHold, kRide, kCarry}},
      {3, {kHold, kKick, kThrow, kCarry}},
      {4, {kHold, kRide, kCarry}},
      {5, {kHold, kToast, kDrinkWith}},
      {6, {kHold, kToast, kDrinkWith}},
  };
  std::vector<HoiClass> classes;
  HoiId next = 1;
  for (const auto& [o, vs] : combos) {
    for (VerbId v : vs) classes.push_back({next++, v, o});
    classes.push_back({next++, kNoInteraction, o});
  }
  return Vocabulary(std::move(objects), std::move(verbs), std::move(classes));
}

void validate(const SynthSpec& spec) {
  if (spec.scene_count == 0) throw InputError("synth: scene count must be positive");
  if (spec.min_persons < 1 || spec.min_persons > spec.max_persons) {
    throw InputError("synth: person range must satisfy 1 <= min <= max");
  }
  // Persons and objects each take a grid cell; one cell stays empty.
  if (2 * spec.max_persons + 1 > static_cast<std::size_t>(kCells)) {
    throw InputError("synth: at most " + std::to_string((kCells - 1) / 2) +
                     " persons fit the scene layout");
  }
  if (!(spec.image_width >= 240.0) || !(spec.image_height >= 160.0)) {
    throw InputError("synth: image must be at least 240x160 pixels");
  }
  if (!(spec.jitter >= 0.0 && spec.jitter <= 0.04)) {
    throw InputError("synth: jitter must lie in [0, 0.04] to keep IoU slack");
  }
  const std::vector<Category>& requested = default_mix();
  std::vector<Category> cats;
  if (spec.category_mix.empty()) {
    cats = requested;
  } else {
    for (const auto& [c, w] : spec.category_mix) {
      if (w < 0.0 || !std::isfinite(w)) throw InputError("synth: category weights must be >= 0");
      if (w > 0.0) cats.push_back(c);
    }
    if (cats.empty()) throw InputError("synth: category mix has no positive weight");
  }
  for (Category c : cats) {
    if (is_multi_person(c) && spec.max_persons < 2) {
      throw InputError("synth: category " + std::string(to_string(c)) +
                       " needs at least two persons but max_persons is " +
                       std::to_string(spec.max_persons));
    }
    if ((is_single_person(c) || c == Category::Excluded) && spec.min_persons > 1) {
      throw InputError("synth: category " + std::string(to_string(c)) +
                       " needs a single person but min_persons is " + std::to_string(spec.min_persons));
    }
  }
}

SynthOutput generate(const SynthSpec& spec) {
  validate(spec);
  const Vocabulary vocab = synthetic_vocabulary();
  const std::vector<Category> plan = schedule(spec);

  std::vector<SceneOutput> scenes(plan.size());
  parallel_for(plan.size(), 0, [&](std::size_t i) {
    scenes[i] = SceneBuilder(spec, vocab, i, plan[i]).build();
  });

  SynthOutput out;
  out.scene_categories = plan;
  out.predictions.model_name = "synthetic";
  std::vector<GroundTruthImage> images;
  images.reserve(scenes.size());
  for (auto& s : scenes) {
    for (std::size_t k = 0; k < s.predictions.size(); ++k) {
      s.predictions[k].index = out.predictions.predictions.size();
      s.records[k].prediction_index = s.predictions[k].index;
      out.predictions.predictions.push_back(std::move(s.predictions[k]));
      out.log.records.push_back(s.records[k]);
    }
    for (const auto& [t, n] : s.skipped) out.log.skipped[t] += n;
    images.push_back(std::move(s.image));
  }
  out.ground_truth = Dataset(vocab, std::move(images));
  return out;
}

nlohmann::json injection_log_to_json(const InjectionLog& log) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : log.records) {
    nlohmann::json flags = nlohmann::json::array();
    for (ErrorType t : kAllErrorTypes) {
      if (r.intended_flags.test(t)) flags.push_back(std::string(to_string(t)));
    }
    records.push_back({{"prediction_index", r.prediction_index},
                       {"scene_index", r.scene_index},
                       {"scene_category", std::string(to_string(r.scene_category))},
                       {"injected", r.injected ? nlohmann::json(std::string(to_string(*r.injected)))
                                               : nlohmann::json(nullptr)},
                       {"intended_verdict", r.intended_verdict == Verdict::TP ? "TP" : "FP"},
                       {"intended_flags", flags}});
  }
  nlohmann::json skipped = nlohmann::json::object();
  for (const auto& [t, n] : log.skipped) skipped[std::string(to_string(t))] = n;
  return {{"records", records}, {"skipped", skipped}};
}

}  // namespace hoidiag
