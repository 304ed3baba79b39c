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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoidiag/annotations.hpp"
#include "hoidiag/categories.hpp"
#include "hoidiag/evaluation.hpp"

namespace hoidiag {

struct BiasOptions {
  /// Keep no-interaction verbs in the object-conditioned verb shares.
  bool include_no_interaction = false;
};

struct VerbShare {
  std::size_t train_count = 0;
  /// train_count over the object's total; empty when the object has no
  /// training instances.
  std::optional<double> share;
};

struct FrequencyTable {
  /// Training instances per HOI class, every vocabulary class listed.
  /// Invisible and no-interaction annotations are counted.
  std::map<HoiId, std::size_t> train_counts;
  /// Test instances per category and class (classes with a positive count).
  std::map<Category, std::map<HoiId, std::size_t>> test_counts;
  /// Per object: its verbs' training counts and conditional shares.
  std::map<ObjectId, std::map<VerbId, VerbShare>> object_verbs;
};

/// Throws InputError when the two datasets carry different vocabularies.
FrequencyTable build_frequencies(const Dataset& train, const Dataset& test,
                                 const std::map<std::string, Category>& categories,
                                 const BiasOptions& options = {});

struct TopKRow {
  HoiId hoi_id = 0;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::vector<std::optional<double>> ap;  // one per report, empty if not scored
};

/// The k most frequent classes of a category by test count (ties by hoi id).
/// Throws InputError for k < 1 or a category without HOIs.
std::vector<TopKRow> top_k_table(const FrequencyTable& freq, std::span<const EvalReport> reports,
                                 Category category, std::size_t k);

struct BiasRow {
  VerbId verb_id = 0;
  HoiId hoi_id = 0;
  std::size_t train_count = 0;
  std::optional<double> share;
  std::size_t test_count = 0;
  std::vector<std::optional<double>> ap;
};

struct BiasTable {
  ObjectId object_id = 0;
  Category category = Category::SPSO;
  std::vector<BiasRow> rows;  // training count descending, then verb id
  /// Spearman rank correlation of training count vs AP per report; empty when
  /// fewer than two scored rows or a constant column.
  std::vector<std::optional<double>> spearman;
};

/// Verbs of one object present in a category with at least
/// `min_test_instances` test instances. Throws InputError for an object
/// absent from the vocabulary.
BiasTable object_bias_table(const FrequencyTable& freq, std::span<const EvalReport> reports,
                            const Vocabulary& vocab, ObjectId object_id, Category category,
                            std::size_t min_test_instances = 5);

/// Spearman's rho with average ranks for ties.
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace hoidiag
