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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hoidiag {

using ObjectId = int;
using VerbId = int;
using HoiId = int;

struct ObjectCategory {
  ObjectId id = 0;
  std::string name;
  friend bool operator==(const ObjectCategory&, const ObjectCategory&) = default;
};

struct Verb {
  VerbId id = 0;
  std::string name;
  bool no_interaction = false;
  friend bool operator==(const Verb&, const Verb&) = default;
};

struct HoiClass {
  HoiId id = 0;
  VerbId verb_id = 0;
  ObjectId object_id = 0;
  friend bool operator==(const HoiClass&, const HoiClass&) = default;
};

/// The HOI label space: object categories, verbs, and the sparse set of
/// (verb, object) combinations that form HOI classes.
///
/// Construction validates integrity: unique ids, unique (verb, object) pairs,
/// resolvable references, and at most one no-interaction class per object.
/// Throws SchemaError on violation.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<ObjectCategory> objects, std::vector<Verb> verbs,
             std::vector<HoiClass> hoi_classes);

  const std::vector<ObjectCategory>& objects() const noexcept { return objects_; }
  const std::vector<Verb>& verbs() const noexcept { return verbs_; }
  const std::vector<HoiClass>& hoi_classes() const noexcept { return hoi_classes_; }

  bool has_hoi(HoiId id) const { return hoi_index_.count(id) != 0; }
  bool has_object(ObjectId id) const { return object_index_.count(id) != 0; }
  bool has_verb(VerbId id) const { return verb_index_.count(id) != 0; }

  /// Throws ContractViolation for unknown ids.
  const HoiClass& hoi(HoiId id) const;
  const ObjectCategory& object(ObjectId id) const;
  const Verb& verb(VerbId id) const;

  std::optional<HoiId> find_hoi(VerbId verb, ObjectId object) const;
  std::optional<ObjectId> find_object(const std::string& name) const;

  bool is_no_interaction(HoiId id) const { return verb(hoi(id).verb_id).no_interaction; }
  ObjectId object_of(HoiId id) const { return hoi(id).object_id; }
  VerbId verb_of(HoiId id) const { return hoi(id).verb_id; }

  /// HOI classes of one object, ordered by verb id.
  std::vector<HoiId> classes_of_object(ObjectId object) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.objects_ == b.objects_ && a.verbs_ == b.verbs_ && a.hoi_classes_ == b.hoi_classes_;
  }

 private:
  std::vector<ObjectCategory> objects_;
  std::vector<Verb> verbs_;
  std::vector<HoiClass> hoi_classes_;
  std::map<ObjectId, std::size_t> object_index_;
  std::map<VerbId, std::size_t> verb_index_;
  std::map<HoiId, std::size_t> hoi_index_;
  std::map<std::pair<VerbId, ObjectId>, HoiId> pair_index_;
};

}  // namespace hoidiag
