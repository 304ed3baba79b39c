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

#include "hoidiag/instances.hpp"

#include <algorithm>
#include <numeric>

#include "hoidiag/errors.hpp"

namespace hoidiag {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
}

namespace {

// Distinct boxes of one clustering group, in first-appearance order.
struct BoxGroup {
  std::vector<BoundingBox> boxes;
  std::map<BoundingBox, std::size_t> slot;

  std::size_t add(const BoundingBox& b) {
    auto [it, inserted] = slot.emplace(b, boxes.size());
    if (inserted) boxes.push_back(b);
    return it->second;
  }

  // Cluster label per distinct box; labels are dense and numbered by first
  // appearance of any member.
  std::vector<std::size_t> cluster(double merge_iou) const {
    UnionFind uf(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        if (iou(boxes[i], boxes[j]) >= merge_iou) uf.unite(i, j);
      }
    }
    std::vector<std::size_t> label(boxes.size());
    std::map<std::size_t, std::size_t> root_label;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      auto [it, _] = root_label.emplace(uf.find(i), root_label.size());
      label[i] = it->second;
    }
    return label;
  }
};

}  // namespace

SceneGraph resolve_instances(const GroundTruthImage& image, const Vocabulary& vocab,
                             const ResolveOptions& options) {
  if (!(options.merge_iou >= 0.5 && options.merge_iou <= 1.0)) {
    throw ContractViolation("resolve_instances: merge_iou must lie in [0.5, 1]");
  }
  SceneGraph g;
  g.image_id = image.image_id;
  g.annotation_pairs.assign(image.annotations.size(), {-1, -1});

  std::vector<std::size_t> included;
  for (std::size_t k = 0; k < image.annotations.size(); ++k) {
    const HoiAnnotation& a = image.annotations[k];
    if (!options.include_no_interaction && vocab.is_no_interaction(a.hoi_id)) {
      ++g.dropped_no_interaction;
    } else if (!options.include_invisible && a.invisible) {
      ++g.dropped_invisible;
    } else {
      included.push_back(k);
    }
  }
  g.included_annotations = included.size();

  // Humans form one group; objects are grouped per object class and their
  // instance ids are interleaved by global first appearance.
  BoxGroup humans;
  std::map<ObjectId, BoxGroup> objects_by_class;
  std::vector<std::size_t> human_slot(image.annotations.size());
  std::vector<std::size_t> object_slot(image.annotations.size());
  for (std::size_t k : included) {
    const HoiAnnotation& a = image.annotations[k];
    human_slot[k] = humans.add(a.human_box);
    object_slot[k] = objects_by_class[vocab.object_of(a.hoi_id)].add(a.object_box);
  }

  const std::vector<std::size_t> human_label = humans.cluster(options.merge_iou);
  std::map<ObjectId, std::vector<std::size_t>> object_label;
  for (const auto& [cls, group] : objects_by_class) object_label[cls] = group.cluster(options.merge_iou);

  std::map<std::size_t, int> person_id_of_label;
  std::map<std::pair<ObjectId, std::size_t>, int> object_id_of_label;
  std::vector<std::set<std::size_t>> person_members;
  std::vector<std::set<std::size_t>> object_members;

  for (std::size_t k : included) {
    const HoiAnnotation& a = image.annotations[k];
    const ObjectId cls = vocab.object_of(a.hoi_id);

    const std::size_t hl = human_label[human_slot[k]];
    auto [pit, new_person] = person_id_of_label.emplace(hl, static_cast<int>(g.persons.size()));
    if (new_person) {
      g.persons.push_back({pit->second, {}, a.human_box});
      person_members.emplace_back();
    }
    const std::size_t ol = object_label[cls][object_slot[k]];
    auto [oit, new_object] =
        object_id_of_label.emplace(std::pair{cls, ol}, static_cast<int>(g.objects.size()));
    if (new_object) {
      g.objects.push_back({oit->second, cls, {}, a.object_box});
      object_members.emplace_back();
    }

    const int pid = pit->second;
    const int oid = oit->second;
    if (person_members[static_cast<std::size_t>(pid)].insert(human_slot[k]).second) {
      g.persons[static_cast<std::size_t>(pid)].member_boxes.push_back(a.human_box);
    }
    if (object_members[static_cast<std::size_t>(oid)].insert(object_slot[k]).second) {
      g.objects[static_cast<std::size_t>(oid)].member_boxes.push_back(a.object_box);
    }
    g.annotation_pairs[k] = {pid, oid};
    g.pair_verbs[{pid, oid}].push_back(vocab.verb_of(a.hoi_id));
  }
  for (auto& [_, verbs] : g.pair_verbs) std::sort(verbs.begin(), verbs.end());
  return g;
}

std::set<VerbId> SceneGraph::verbs_of_person(int person_id) const {
  std::set<VerbId> out;
  for (const auto& [key, verbs] : pair_verbs) {
    if (key.first == person_id) out.insert(verbs.begin(), verbs.end());
  }
  return out;
}

std::set<int> SceneGraph::objects_of_person(int person_id) const {
  std::set<int> out;
  for (const auto& [key, verbs] : pair_verbs) {
    if (key.first == person_id && !verbs.empty()) out.insert(key.second);
  }
  return out;
}

InteractionRelation interaction_relation(const SceneGraph& g, int person_a, int person_b) {
  const auto valid = [&](int id) {
    return id >= 0 && static_cast<std::size_t>(id) < g.persons.size();
  };
  if (!valid(person_a) || !valid(person_b)) {
    throw ContractViolation("interaction_relation: unknown person id");
  }
  const std::set<VerbId> a = g.verbs_of_person(person_a);
  const std::set<VerbId> b = g.verbs_of_person(person_b);
  if (a.empty() || b.empty()) return InteractionRelation::NoSharedBasis;
  return a == b ? InteractionRelation::Same : InteractionRelation::Different;
}

}  // namespace hoidiag
