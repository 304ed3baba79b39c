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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hoidiag/annotations.hpp"

namespace hoidiag {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct PersonInstance {
  int instance_id = 0;
  std::vector<BoundingBox> member_boxes;  // distinct boxes, first-appearance order
  BoundingBox canonical_box;              // == member_boxes.front()
};

struct ObjectInstance {
  int instance_id = 0;
  ObjectId object_id = 0;
  std::vector<BoundingBox> member_boxes;
  BoundingBox canonical_box;
};

struct ResolveOptions {
  double merge_iou = 0.7;
  bool include_invisible = false;
  bool include_no_interaction = false;

  /// Flags for categorization: invisible and no-interaction pairs excluded.
  static ResolveOptions for_categorization() { return {}; }
};

using InstancePair = std::pair<int, int>;  // (person instance id, object instance id)

/// Persons, objects, and the verbs annotated between them for one image.
struct SceneGraph {
  std::string image_id;
  std::vector<PersonInstance> persons;
  std::vector<ObjectInstance> objects;
  /// Verbs per (person, object) pair, sorted, one entry per included
  /// annotation (so repeated annotations keep their multiplicity).
  std::map<InstancePair, std::vector<VerbId>> pair_verbs;
  /// For each annotation of the source image: its pair, or {-1, -1} when the
  /// annotation was excluded by the resolve flags.
  std::vector<InstancePair> annotation_pairs;
  std::size_t included_annotations = 0;
  std::size_t dropped_no_interaction = 0;
  std::size_t dropped_invisible = 0;

  /// Union of distinct verbs over all objects of a person.
  std::set<VerbId> verbs_of_person(int person_id) const;
  /// Object instances a person has at least one annotated verb with.
  std::set<int> objects_of_person(int person_id) const;
};

/// Deduplicates boxes by exact coordinates, then clusters humans (and objects
/// of the same class) by single-link union-find on iou >= merge_iou.
/// Instance ids follow first appearance in annotation order.
/// Throws ContractViolation unless 0.5 <= merge_iou <= 1.
SceneGraph resolve_instances(const GroundTruthImage& image, const Vocabulary& vocab,
                             const ResolveOptions& options = {});

enum class InteractionRelation { Same, Different, NoSharedBasis };

/// Compares two persons' full verb sets: Same iff equal, Different otherwise
/// (including when one set strictly contains the other). NoSharedBasis when
/// either person has no annotated verbs. Throws ContractViolation for unknown ids.
InteractionRelation interaction_relation(const SceneGraph& graph, int person_a, int person_b);

}  // namespace hoidiag
