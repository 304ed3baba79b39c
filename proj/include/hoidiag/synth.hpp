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
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"

#include "hoidiag/annotations.hpp"
#include "hoidiag/categories.hpp"
#include "hoidiag/fp_analysis.hpp"

namespace hoidiag {

/// SplitMix64. Each step adds 0x9E3779B97F4A7C15 to the state and mixes it:
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   out = z ^ (z >> 31)
/// Derived quantities are defined on top of next() so any implementation
/// reproduces the same streams:
///   uniform01()        = (next() >> 11) * 2^-53
///   uniform(lo, hi)    = lo + (hi - lo) * uniform01()
///   uniform_int(lo, hi) = lo + next() % (hi - lo + 1)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform01();
  double uniform(double lo, double hi);
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Seed of scene i: the first output of SplitMix64(seed ^ ((i + 1) * 0x9E3779B97F4A7C15)).
std::uint64_t scene_seed(std::uint64_t seed, std::size_t scene_index);

struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t scene_count = 100;
  std::size_t min_persons = 1;
  std::size_t max_persons = 3;
  /// Relative weights of requested scene categories. Empty means equal weights
  /// for SPSO, SPMO and A-F. Excluded requests an image whose only
  /// annotations are no-interaction.
  std::map<Category, double> category_mix;
  /// Injected false positives of each type per scene (when the scene can host them).
  std::map<ErrorType, std::size_t> injections_per_scene;
  double image_width = 1280.0;
  double image_height = 960.0;
  /// Maximum shift of predicted box edges, as a fraction of the box size.
  double jitter = 0.02;
};

/// Throws InputError when the spec cannot be realized (e.g. a multi-person
/// category with max_persons < 2, or a layout that does not fit the image).
void validate(const SynthSpec& spec);

struct InjectionRecord {
  std::size_t prediction_index = 0;
  std::size_t scene_index = 0;
  Category scene_category = Category::SPSO;
  std::optional<ErrorType> injected;  // empty for intended true positives
  Verdict intended_verdict = Verdict::TP;
  ErrorFlags intended_flags;
};

struct InjectionLog {
  std::vector<InjectionRecord> records;  // one per prediction, in prediction order
  /// Requested injections a scene could not host (e.g. pairing in SPSO).
  std::map<ErrorType, std::size_t> skipped;
};

struct SynthOutput {
  Dataset ground_truth;
  PredictionSet predictions;
  InjectionLog log;
  std::vector<Category> scene_categories;  // requested category per scene
};

/// The fixed label space used for synthetic scenes.
Vocabulary synthetic_vocabulary();

/// Deterministic in the spec. Each injected prediction triggers exactly its
/// intended flag: displaced boxes land in an empty region (IoU 0 with all
/// ground truth), kept boxes are jittered copies with IoU well above 0.6.
SynthOutput generate(const SynthSpec& spec);

nlohmann::json injection_log_to_json(const InjectionLog& log);

}  // namespace hoidiag
