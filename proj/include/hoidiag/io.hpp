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
#include <string>
#include <string_view>

#include "json.hpp"

#include "hoidiag/annotations.hpp"
#include "hoidiag/vocabulary.hpp"

namespace hoidiag {

/// Supported third-party ground-truth layouts for convert_external.
enum class ExternalFormat {
  /// Community HICO-DET export: a JSON array with one object per image
  /// holding `file_name`, a flat `annotations` box list (`bbox`,
  /// `category_id`) and `hoi_annotation` index pairs (`subject_id`,
  /// `object_id`, verb `category_id`, optional `hoi_category_id`).
  HicoCommunityV1,
};

/// Maps a format tag such as "hico-community-v1"; throws InputError otherwise.
ExternalFormat parse_format_tag(std::string_view tag);

std::string read_text_file(const std::filesystem::path& path);

/// Parses JSON text, turning syntax errors into ParseError with line/column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);

Vocabulary vocabulary_from_json(const nlohmann::json& j);
nlohmann::json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary parse_vocabulary(const std::filesystem::path& path);

/// Canonical ground truth. Boxes overshooting the image are clamped; a clamp
/// that empties a box, an unordered or degenerate box, or an unknown hoi_id
/// is a SchemaError naming the image (and annotation index).
Dataset ground_truth_from_json(const nlohmann::json& j, const std::string& source);
Dataset parse_ground_truth(const std::filesystem::path& path);
/// Like parse_ground_truth, but the file's vocabulary must equal `vocab`
/// (a file without a vocabulary block adopts it).
Dataset parse_ground_truth(const std::filesystem::path& path, const Vocabulary& vocab);
nlohmann::json ground_truth_to_json(const Dataset& dataset);

/// Canonical predictions. Every image_id must exist in `gt`, every score must
/// lie in [0, 1], every hoi_id in the vocabulary. Boxes are clamped to the
/// referenced image like ground truth.
PredictionSet predictions_from_json(const nlohmann::json& j, const Dataset& gt,
                                    const std::string& source);
PredictionSet parse_predictions(const std::filesystem::path& path, const Dataset& gt);
nlohmann::json predictions_to_json(const PredictionSet& predictions);

Dataset convert_external_json(const nlohmann::json& j, ExternalFormat format,
                              const Vocabulary& vocab, const std::string& source);
Dataset convert_external(const std::filesystem::path& path, ExternalFormat format,
                         const Vocabulary& vocab);

}  // namespace hoidiag
