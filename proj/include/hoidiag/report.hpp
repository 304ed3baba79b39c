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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "hoidiag/bias.hpp"
#include "hoidiag/categories.hpp"
#include "hoidiag/evaluation.hpp"
#include "hoidiag/fp_analysis.hpp"
#include "hoidiag/instances.hpp"

namespace hoidiag {

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Fixed-point text used by every CSV column holding a real number.
std::string format_real(double v, int digits = 6);

nlohmann::json scene_graph_to_json(const SceneGraph& graph);

nlohmann::json category_statistics_to_json(const CategoryStatistics& stats);

/// The categorize report: one entry per image, the stats block, and any
/// rule-based/consensus disagreements.
nlohmann::json categories_to_json(const std::vector<CategoryAssignment>& assignments,
                                  const std::vector<Disagreement>& disagreements);

/// Reads a categorize report or a bare label map {"image_id": "A", ...}.
std::vector<CategoryAssignment> categories_from_json(const nlohmann::json& j,
                                                     const std::string& source);

/// Fixed-width table of per-category image and HOI counts with subtotals.
std::string statistics_table(const CategoryStatistics& stats);
std::string statistics_csv(const CategoryStatistics& stats);

nlohmann::json eval_report_to_json(const EvalReport& report, const Vocabulary& vocab,
                                   const EvalSettings& settings);
/// hoi_id, verb, object, gt_count, AP rows over the whole dataset.
std::string per_class_csv(const EvalReport& report, const Vocabulary& vocab);

/// Rows: category (ALL, then each category), threshold, flag, count, proportion_of_fp.
std::string errors_csv(const ErrorSweep& sweep);
nlohmann::json errors_to_json(const ErrorSweep& sweep);

std::string topk_csv(const std::vector<std::pair<Category, std::vector<TopKRow>>>& tables,
                     const Vocabulary& vocab, std::span<const std::string> model_names);
std::string bias_csv(const std::vector<BiasTable>& tables, const Vocabulary& vocab,
                     std::span<const std::string> model_names);

}  // namespace hoidiag
