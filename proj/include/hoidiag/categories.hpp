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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "hoidiag/instances.hpp"

namespace hoidiag {

enum class Category { SPSO, SPMO, A, B, C, D, E, F, Excluded };

inline constexpr std::array<Category, 9> kAllCategories = {
    Category::SPSO, Category::SPMO, Category::A, Category::B,       Category::C,
    Category::D,    Category::E,    Category::F, Category::Excluded};

enum class ExclusionReason { OnlyNoInteraction, AllInvisible, MixedConfiguration, NoConsensus };

/// "SPSO", "SPMO", "A".."F", "EXCLUDED".
std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);
std::string_view to_string(ExclusionReason r);
std::optional<ExclusionReason> exclusion_reason_from_string(std::string_view s);

inline bool is_single_person(Category c) { return c == Category::SPSO || c == Category::SPMO; }
inline bool is_multi_person(Category c) {
  return c != Category::Excluded && !is_single_person(c);
}

/// A category with its exclusion reason; the reason is present iff Excluded.
class SceneCategory {
 public:
  SceneCategory() = default;
  /// Throws ContractViolation for Category::Excluded (use excluded()).
  explicit SceneCategory(Category value);
  static SceneCategory excluded(ExclusionReason reason);

  Category value() const noexcept { return value_; }
  const std::optional<ExclusionReason>& exclusion_reason() const noexcept { return reason_; }

  friend bool operator==(const SceneCategory&, const SceneCategory&) = default;

 private:
  Category value_ = Category::Excluded;
  std::optional<ExclusionReason> reason_ = ExclusionReason::MixedConfiguration;
};

enum class AssignmentSource { RuleBased, Consensus };

struct CategoryAssignment {
  std::string image_id;
  SceneCategory category;
  std::size_t person_count = 0;
  std::size_t object_instance_count = 0;
  /// Annotations that survived the categorization filters.
  std::size_t hoi_count = 0;
  AssignmentSource source = AssignmentSource::RuleBased;
  friend bool operator==(const CategoryAssignment&, const CategoryAssignment&) = default;
};

enum class FilterVerdict { Keep, DropOnlyNoInteraction, DropAllInvisible };

/// Drops images whose annotations are all no-interaction, else those whose
/// annotations are all invisible. Images without annotations are dropped as
/// no-interaction-only.
FilterVerdict filter_image(const GroundTruthImage& image, const Vocabulary& vocab);

/// Assigns the taxonomy cell of a scene graph built with categorization flags.
/// Multi-person images are classified per person pair: object relation is
/// SameInstance (both use exactly one common instance), SameLabel (disjoint
/// instances, one shared object class), or DifferentLabel (disjoint instances
/// and disjoint classes); any other pattern, or pairs disagreeing on a cell,
/// yields Excluded(MixedConfiguration). An empty graph is Excluded with the
/// reason that dropped more annotations.
CategoryAssignment categorize(const SceneGraph& graph);

/// filter_image, then resolve_instances with categorization flags, then categorize.
CategoryAssignment categorize_image(const GroundTruthImage& image, const Vocabulary& vocab,
                                    double merge_iou = 0.7);

/// Rule-based categorization of a whole dataset, parallel over images.
std::vector<CategoryAssignment> categorize_dataset(const Dataset& dataset, double merge_iou,
                                                   unsigned threads);

using LabelFile = std::map<std::string, Category>;

/// Majority vote over annotator label files. A strict majority wins; anything
/// else is Excluded(NoConsensus). A majority for EXCLUDED maps to
/// Excluded(MixedConfiguration). Throws InputError if the files cover
/// different image sets and ContractViolation when given no files.
std::map<std::string, CategoryAssignment> consensus(const std::vector<LabelFile>& labels);

struct Disagreement {
  std::string image_id;
  SceneCategory rule_based;
  SceneCategory consensus;
};

/// Overlays consensus labels on rule-based assignments (consensus wins).
/// Counts are kept from the rule-based pass when they agree with the
/// consensus cell's person-count constraint, otherwise zeroed.
std::vector<CategoryAssignment> merge_with_consensus(
    const std::vector<CategoryAssignment>& rule_based,
    const std::map<std::string, CategoryAssignment>& consensus,
    std::vector<Disagreement>* disagreements);

struct CategoryCount {
  std::size_t images = 0;
  std::size_t hois = 0;
  friend bool operator==(const CategoryCount&, const CategoryCount&) = default;
};

struct CategoryStatistics {
  std::map<Category, CategoryCount> per_category;  // every category present, zeros included
  CategoryCount single_person;
  CategoryCount multi_person;
  CategoryCount total;
  friend bool operator==(const CategoryStatistics&, const CategoryStatistics&) = default;
};

CategoryStatistics category_statistics(const std::vector<CategoryAssignment>& assignments);

/// image_id -> category value, for restricting evaluation to subsets.
std::map<std::string, Category> category_lookup(const std::vector<CategoryAssignment>& assignments);

}  // namespace hoidiag
