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

#include "hoidiag/bias.hpp"

#include <algorithm>
#include <cmath>

#include <gsl/gsl_statistics_double.h>

#include "hoidiag/errors.hpp"

namespace hoidiag {

namespace {

std::vector<std::optional<double>> ap_columns(std::span<const EvalReport> reports, Category c,
                                              HoiId hoi) {
  std::vector<std::optional<double>> out;
  for (const EvalReport& r : reports) {
    std::optional<double> ap;
    if (auto cit = r.per_category_class_ap.find(c); cit != r.per_category_class_ap.end()) {
      if (auto hit = cit->second.find(hoi); hit != cit->second.end()) ap = hit->second.ap;
    }
    out.push_back(ap);
  }
  return out;
}

}  // namespace

FrequencyTable build_frequencies(const Dataset& train, const Dataset& test,
                                 const std::map<std::string, Category>& categories,
                                 const BiasOptions& options) {
  if (!(train.vocabulary() == test.vocabulary())) {
    throw InputError("training and test ground truth use different vocabularies");
  }
  const Vocabulary& vocab = test.vocabulary();
  FrequencyTable t;
  for (const auto& c : vocab.hoi_classes()) t.train_counts[c.id] = 0;
  for (const auto& img : train.images()) {
    for (const auto& a : img.annotations) ++t.train_counts[a.hoi_id];
  }
  for (const auto& img : test.images()) {
    auto it = categories.find(img.image_id);
    if (it == categories.end()) continue;
    for (const auto& a : img.annotations) ++t.test_counts[it->second][a.hoi_id];
  }
  for (const auto& obj : vocab.objects()) {
    auto& verbs = t.object_verbs[obj.id];
    std::size_t total = 0;
    for (HoiId h : vocab.classes_of_object(obj.id)) {
      const VerbId v = vocab.verb_of(h);
      if (!options.include_no_interaction && vocab.verb(v).no_interaction) continue;
      verbs[v].train_count = t.train_counts[h];
      total += t.train_counts[h];
    }
    if (total == 0) continue;
    for (auto& [_, vs] : verbs) {
      vs.share = static_cast<double>(vs.train_count) / static_cast<double>(total);
    }
  }
  return t;
}

std::vector<TopKRow> top_k_table(const FrequencyTable& freq, std::span<const EvalReport> reports,
                                 Category category, std::size_t k) {
  if (k < 1) throw InputError("top-k table: k must be at least 1");
  auto cit = freq.test_counts.find(category);
  if (cit == freq.test_counts.end() || cit->second.empty()) {
    throw InputError("top-k table: category " + std::string(to_string(category)) +
                     " has no HOI instances");
  }
  std::vector<std::pair<HoiId, std::size_t>> ranked(cit->second.begin(), cit->second.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  ranked.resize(std::min(k, ranked.size()));

  std::vector<TopKRow> rows;
  for (const auto& [hoi, count] : ranked) {
    auto tit = freq.train_counts.find(hoi);
    rows.push_back({hoi, tit == freq.train_counts.end() ? 0 : tit->second, count,
                    ap_columns(reports, category, hoi)});
  }
  return rows;
}

BiasTable object_bias_table(const FrequencyTable& freq, std::span<const EvalReport> reports,
                            const Vocabulary& vocab, ObjectId object_id, Category category,
                            std::size_t min_test_instances) {
  if (!vocab.has_object(object_id)) {
    throw InputError("object " + std::to_string(object_id) + " is not in the vocabulary");
  }
  BiasTable table;
  table.object_id = object_id;
  table.category = category;

  static const std::map<HoiId, std::size_t> kNone;
  auto cit = freq.test_counts.find(category);
  const auto& test_counts = cit == freq.test_counts.end() ? kNone : cit->second;
  auto oit = freq.object_verbs.find(object_id);
  if (oit != freq.object_verbs.end()) {
    for (const auto& [verb, vs] : oit->second) {
      const HoiId hoi = *vocab.find_hoi(verb, object_id);
      auto tc = test_counts.find(hoi);
      const std::size_t n = tc == test_counts.end() ? 0 : tc->second;
      if (n == 0 || n < min_test_instances) continue;
      table.rows.push_back({verb, hoi, vs.train_count, vs.share, n, ap_columns(reports, category, hoi)});
    }
  }
  std::stable_sort(table.rows.begin(), table.rows.end(), [](const BiasRow& a, const BiasRow& b) {
    return a.train_count > b.train_count;
  });

  for (std::size_t m = 0; m < reports.size(); ++m) {
    std::vector<double> counts;
    std::vector<double> aps;
    for (const BiasRow& r : table.rows) {
      if (!r.ap[m]) continue;
      counts.push_back(static_cast<double>(r.train_count));
      aps.push_back(*r.ap[m]);
    }
    table.spearman.push_back(spearman_rho(counts, aps));
  }
  return table;
}

std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractViolation("spearman_rho: length mismatch");
  if (x.size() < 2) return std::nullopt;
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) return std::nullopt;
  std::vector<double> work(2 * x.size());
  const double rho = gsl_stats_spearman(x.data(), 1, y.data(), 1, x.size(), work.data());
  if (!std::isfinite(rho)) return std::nullopt;
  return rho;
}

}  // namespace hoidiag
