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

#include "hoidiag/categories.hpp"

#include <algorithm>
#include <set>

#include "hoidiag/errors.hpp"
#include "hoidiag/parallel.hpp"

namespace hoidiag {

namespace {

constexpr std::array<std::string_view, 9> kCategoryNames = {"SPSO", "SPMO", "A", "B", "C",
                                                            "D",    "E",    "F", "EXCLUDED"};
constexpr std::array<std::string_view, 4> kReasonNames = {
    "only_no_interaction", "all_invisible", "mixed_configuration", "no_consensus"};

enum class ObjectRelation { SameInstance, SameLabel, DifferentLabel, Mixed };

ObjectRelation object_relation(const SceneGraph& g, int p, int q) {
  const std::set<int> sp = g.objects_of_person(p);
  const std::set<int> sq = g.objects_of_person(q);
  if (sp == sq && sp.size() == 1) return ObjectRelation::SameInstance;
  const bool disjoint = std::none_of(sp.begin(), sp.end(), [&](int o) { return sq.count(o); });
  if (!disjoint) return ObjectRelation::Mixed;

  const auto labels = [&](const std::set<int>& instances) {
    std::set<ObjectId> out;
    for (int o : instances) out.insert(g.objects[static_cast<std::size_t>(o)].object_id);
    return out;
  };
  const std::set<ObjectId> lp = labels(sp);
  const std::set<ObjectId> lq = labels(sq);
  if (lp == lq && lp.size() == 1) return ObjectRelation::SameLabel;
  const bool label_disjoint =
      std::none_of(lp.begin(), lp.end(), [&](ObjectId o) { return lq.count(o); });
  return label_disjoint ? ObjectRelation::DifferentLabel : ObjectRelation::Mixed;
}

Category cell(ObjectRelation objects, bool same_interaction) {
  switch (objects) {
    case ObjectRelation::SameInstance:
      return same_interaction ? Category::A : Category::B;
    case ObjectRelation::SameLabel:
      return same_interaction ? Category::C : Category::D;
    case ObjectRelation::DifferentLabel:
      return same_interaction ? Category::E : Category::F;
    case ObjectRelation::Mixed:
      break;
  }
  return Category::Excluded;
}

bool consistent_counts(Category c, std::size_t persons) {
  if (c == Category::Excluded) return true;
  return is_single_person(c) ? persons == 1 : persons >= 2;
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> category_from_string(std::string_view s) {
  for (Category c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view to_string(ExclusionReason r) { return kReasonNames[static_cast<std::size_t>(r)]; }

std::optional<ExclusionReason> exclusion_reason_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == s) return static_cast<ExclusionReason>(i);
  }
  return std::nullopt;
}

SceneCategory::SceneCategory(Category value) : value_(value), reason_(std::nullopt) {
  if (value == Category::Excluded) {
    throw ContractViolation("SceneCategory: Excluded requires an exclusion reason");
  }
}

SceneCategory SceneCategory::excluded(ExclusionReason reason) {
  SceneCategory c;
  c.value_ = Category::Excluded;
  c.reason_ = reason;
  return c;
}

FilterVerdict filter_image(const GroundTruthImage& image, const Vocabulary& vocab) {
  const auto& anns = image.annotations;
  if (std::all_of(anns.begin(), anns.end(),
                  [&](const HoiAnnotation& a) { return vocab.is_no_interaction(a.hoi_id); })) {
    return FilterVerdict::DropOnlyNoInteraction;
  }
  if (std::all_of(anns.begin(), anns.end(), [](const HoiAnnotation& a) { return a.invisible; })) {
    return FilterVerdict::DropAllInvisible;
  }
  return FilterVerdict::Keep;
}

CategoryAssignment categorize(const SceneGraph& g) {
  CategoryAssignment out;
  out.image_id = g.image_id;
  out.person_count = g.persons.size();
  out.object_instance_count = g.objects.size();
  out.hoi_count = g.included_annotations;
  out.source = AssignmentSource::RuleBased;

  if (g.persons.empty() || g.pair_verbs.empty()) {
    out.category = SceneCategory::excluded(g.dropped_invisible > g.dropped_no_interaction
                                               ? ExclusionReason::AllInvisible
                                               : ExclusionReason::OnlyNoInteraction);
    return out;
  }
  if (g.persons.size() == 1) {
    out.category = SceneCategory(g.objects.size() == 1 ? Category::SPSO : Category::SPMO);
    return out;
  }

  std::optional<ObjectRelation> relation;
  bool same_interaction = true;
  const int n = static_cast<int>(g.persons.size());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const ObjectRelation r = object_relation(g, p, q);
      if (r == ObjectRelation::Mixed || (relation && *relation != r)) {
        out.category = SceneCategory::excluded(ExclusionReason::MixedConfiguration);
        return out;
      }
      relation = r;
      switch (interaction_relation(g, p, q)) {
        case InteractionRelation::Same:
          break;
        case InteractionRelation::Different:
          same_interaction = false;
          break;
        case InteractionRelation::NoSharedBasis:
          out.category = SceneCategory::excluded(ExclusionReason::MixedConfiguration);
          return out;
      }
    }
  }
  out.category = SceneCategory(cell(*relation, same_interaction));
  return out;
}

CategoryAssignment categorize_image(const GroundTruthImage& image, const Vocabulary& vocab,
                                    double merge_iou) {
  ResolveOptions opts = ResolveOptions::for_categorization();
  opts.merge_iou = merge_iou;
  const SceneGraph g = resolve_instances(image, vocab, opts);
  CategoryAssignment a = categorize(g);
  switch (filter_image(image, vocab)) {
    case FilterVerdict::Keep:
      break;
    case FilterVerdict::DropOnlyNoInteraction:
      a.category = SceneCategory::excluded(ExclusionReason::OnlyNoInteraction);
      break;
    case FilterVerdict::DropAllInvisible:
      a.category = SceneCategory::excluded(ExclusionReason::AllInvisible);
      break;
  }
  return a;
}

std::vector<CategoryAssignment> categorize_dataset(const Dataset& dataset, double merge_iou,
                                                   unsigned threads) {
  const auto& images = dataset.images();
  std::vector<CategoryAssignment> out(images.size());
  parallel_for(images.size(), threads, [&](std::size_t i) {
    out[i] = categorize_image(images[i], dataset.vocabulary(), merge_iou);
  });
  return out;
}

std::map<std::string, CategoryAssignment> consensus(const std::vector<LabelFile>& labels) {
  if (labels.empty()) throw ContractViolation("consensus: at least one label file is required");
  for (std::size_t f = 1; f < labels.size(); ++f) {
    const bool same_keys =
        labels[f].size() == labels[0].size() &&
        std::equal(labels[f].begin(), labels[f].end(), labels[0].begin(),
                   [](const auto& a, const auto& b) { return a.first == b.first; });
    if (!same_keys) {
      throw InputError("consensus: label file " + std::to_string(f + 1) +
                       " covers a different set of images than label file 1");
    }
  }
  std::map<std::string, CategoryAssignment> out;
  for (const auto& [image_id, _] : labels[0]) {
    std::map<Category, std::size_t> votes;
    for (const LabelFile& file : labels) ++votes[file.at(image_id)];
    CategoryAssignment a;
    a.image_id = image_id;
    a.source = AssignmentSource::Consensus;
    a.category = SceneCategory::excluded(ExclusionReason::NoConsensus);
    for (const auto& [cat, count] : votes) {
      if (2 * count > labels.size()) {
        a.category = cat == Category::Excluded
                         ? SceneCategory::excluded(ExclusionReason::MixedConfiguration)
                         : SceneCategory(cat);
      }
    }
    out.emplace(image_id, std::move(a));
  }
  return out;
}

std::vector<CategoryAssignment> merge_with_consensus(
    const std::vector<CategoryAssignment>& rule_based,
    const std::map<std::string, CategoryAssignment>& votes,
    std::vector<Disagreement>* disagreements) {
  std::set<std::string> known;
  for (const auto& a : rule_based) known.insert(a.image_id);
  for (const auto& [image_id, _] : votes) {
    if (!known.count(image_id)) {
      throw InputError("label files mention image '" + image_id + "' absent from the ground truth");
    }
  }
  std::vector<CategoryAssignment> out;
  out.reserve(rule_based.size());
  for (const auto& rule : rule_based) {
    auto it = votes.find(rule.image_id);
    if (it == votes.end()) {
      out.push_back(rule);
      continue;
    }
    CategoryAssignment merged = rule;
    merged.category = it->second.category;
    merged.source = AssignmentSource::Consensus;
    if (!consistent_counts(merged.category.value(), merged.person_count)) {
      merged.person_count = 0;
      merged.object_instance_count = 0;
    }
    if (disagreements && rule.category.value() != merged.category.value()) {
      disagreements->push_back({rule.image_id, rule.category, merged.category});
    }
    out.push_back(std::move(merged));
  }
  return out;
}

CategoryStatistics category_statistics(const std::vector<CategoryAssignment>& assignments) {
  CategoryStatistics s;
  for (Category c : kAllCategories) s.per_category[c] = {};
  const auto add = [](CategoryCount& into, std::size_t hois) {
    ++into.images;
    into.hois += hois;
  };
  for (const auto& a : assignments) {
    const Category c = a.category.value();
    add(s.per_category[c], a.hoi_count);
    add(s.total, a.hoi_count);
    if (is_single_person(c)) add(s.single_person, a.hoi_count);
    if (is_multi_person(c)) add(s.multi_person, a.hoi_count);
  }
  return s;
}

std::map<std::string, Category> category_lookup(const std::vector<CategoryAssignment>& assignments) {
  std::map<std::string, Category> out;
  for (const auto& a : assignments) out[a.image_id] = a.category.value();
  return out;
}

}  // namespace hoidiag
