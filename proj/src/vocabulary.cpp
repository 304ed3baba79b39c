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

#include "hoidiag/vocabulary.hpp"

#include <algorithm>
#include <set>

#include "hoidiag/errors.hpp"

namespace hoidiag {

Vocabulary::Vocabulary(std::vector<ObjectCategory> objects, std::vector<Verb> verbs,
                       std::vector<HoiClass> hoi_classes)
    : objects_(std::move(objects)), verbs_(std::move(verbs)), hoi_classes_(std::move(hoi_classes)) {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!object_index_.emplace(objects_[i].id, i).second) {
      throw SchemaError("vocabulary: duplicate object id " + std::to_string(objects_[i].id));
    }
  }
  for (std::size_t i = 0; i < verbs_.size(); ++i) {
    if (!verb_index_.emplace(verbs_[i].id, i).second) {
      throw SchemaError("vocabulary: duplicate verb id " + std::to_string(verbs_[i].id));
    }
  }
  std::set<ObjectId> objects_with_null_class;
  for (std::size_t i = 0; i < hoi_classes_.size(); ++i) {
    const HoiClass& c = hoi_classes_[i];
    const std::string tag = "vocabulary: hoi class " + std::to_string(c.id);
    if (!hoi_index_.emplace(c.id, i).second) throw SchemaError(tag + " is duplicated");
    if (!has_verb(c.verb_id)) throw SchemaError(tag + " references unknown verb");
    if (!has_object(c.object_id)) throw SchemaError(tag + " references unknown object");
    if (!pair_index_.emplace(std::pair{c.verb_id, c.object_id}, c.id).second) {
      throw SchemaError(tag + " repeats the (verb " + std::to_string(c.verb_id) + ", object " +
                        std::to_string(c.object_id) + ") pair");
    }
    if (verbs_[verb_index_.at(c.verb_id)].no_interaction &&
        !objects_with_null_class.insert(c.object_id).second) {
      throw SchemaError(tag + ": object " + std::to_string(c.object_id) +
                        " has more than one no-interaction class");
    }
  }
}

const HoiClass& Vocabulary::hoi(HoiId id) const {
  auto it = hoi_index_.find(id);
  if (it == hoi_index_.end()) throw ContractViolation("unknown hoi id " + std::to_string(id));
  return hoi_classes_[it->second];
}

const ObjectCategory& Vocabulary::object(ObjectId id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) throw ContractViolation("unknown object id " + std::to_string(id));
  return objects_[it->second];
}

const Verb& Vocabulary::verb(VerbId id) const {
  auto it = verb_index_.find(id);
  if (it == verb_index_.end()) throw ContractViolation("unknown verb id " + std::to_string(id));
  return verbs_[it->second];
}

std::optional<HoiId> Vocabulary::find_hoi(VerbId verb, ObjectId object) const {
  auto it = pair_index_.find({verb, object});
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> Vocabulary::find_object(const std::string& name) const {
  for (const auto& o : objects_) {
    if (o.name == name) return o.id;
  }
  return std::nullopt;
}

std::vector<HoiId> Vocabulary::classes_of_object(ObjectId object) const {
  std::vector<HoiId> out;
  for (const auto& [key, hoi_id] : pair_index_) {
    if (key.second == object) out.push_back(hoi_id);
  }
  std::sort(out.begin(), out.end(),
            [this](HoiId a, HoiId b) { return verb_of(a) < verb_of(b); });
  return out;
}

}  // namespace hoidiag
