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

#include "hoidiag/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hoidiag/errors.hpp"

namespace hoidiag {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  return v;
}

BoundingBox as_box(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) throw SchemaError(where + ": expected [x1, y1, x2, y2]");
  BoundingBox b{as_number(v[0], where), as_number(v[1], where), as_number(v[2], where),
                as_number(v[3], where)};
  if (!std::isfinite(b.x1) || !std::isfinite(b.y1) || !std::isfinite(b.x2) ||
      !std::isfinite(b.y2)) {
    throw SchemaError(where + ": non-finite coordinate");
  }
  return b;
}

json box_to_json(const BoundingBox& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }

// Canonical boxes must have ordered corners; overshoot is clamped and a box
// that the clamp empties is rejected.
BoundingBox ingest_box(const BoundingBox& raw, double width, double height,
                       const std::string& where) {
  if (!(raw.x2 > raw.x1) || !(raw.y2 > raw.y1)) {
    throw SchemaError(where + ": degenerate or unordered box");
  }
  BoundingBox b = clamp_to(raw, width, height);
  if (auto defect = box_defect(b); !defect.empty()) {
    throw SchemaError(where + ": box is empty after clamping to the image (" + defect + ")");
  }
  return b;
}

std::string image_where(const std::string& source, const std::string& image_id) {
  return source + ": image '" + image_id + "'";
}

}  // namespace

ExternalFormat parse_format_tag(std::string_view tag) {
  if (tag == "hico-community-v1") return ExternalFormat::HicoCommunityV1;
  throw InputError("unsupported external format '" + std::string(tag) +
                   "' (supported: hico-community-v1)");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source, line, column, e.what());
  }
}

Vocabulary vocabulary_from_json(const json& j) {
  const std::string where = "vocabulary";
  std::vector<ObjectCategory> objects;
  for (const auto& o : as_array(require(j, "objects", where), where + ".objects")) {
    objects.push_back({as_int(require(o, "id", "object"), "object.id"),
                       as_string(require(o, "name", "object"), "object.name")});
  }
  std::vector<Verb> verbs;
  for (const auto& v : as_array(require(j, "verbs", where), where + ".verbs")) {
    bool null_verb = false;
    if (auto it = v.find("no_interaction"); it != v.end()) {
      if (!it->is_boolean()) throw SchemaError("verb.no_interaction: expected a boolean");
      null_verb = it->get<bool>();
    }
    verbs.push_back({as_int(require(v, "id", "verb"), "verb.id"),
                     as_string(require(v, "name", "verb"), "verb.name"), null_verb});
  }
  std::vector<HoiClass> classes;
  for (const auto& c : as_array(require(j, "hoi_classes", where), where + ".hoi_classes")) {
    classes.push_back({as_int(require(c, "id", "hoi_class"), "hoi_class.id"),
                       as_int(require(c, "verb_id", "hoi_class"), "hoi_class.verb_id"),
                       as_int(require(c, "object_id", "hoi_class"), "hoi_class.object_id")});
  }
  return Vocabulary(std::move(objects), std::move(verbs), std::move(classes));
}

json vocabulary_to_json(const Vocabulary& vocab) {
  json objects = json::array();
  for (const auto& o : vocab.objects()) objects.push_back({{"id", o.id}, {"name", o.name}});
  json verbs = json::array();
  for (const auto& v : vocab.verbs()) {
    verbs.push_back({{"id", v.id}, {"name", v.name}, {"no_interaction", v.no_interaction}});
  }
  json classes = json::array();
  for (const auto& c : vocab.hoi_classes()) {
    classes.push_back({{"id", c.id}, {"verb_id", c.verb_id}, {"object_id", c.object_id}});
  }
  return {{"objects", objects}, {"verbs", verbs}, {"hoi_classes", classes}};
}

Vocabulary parse_vocabulary(const std::filesystem::path& path) {
  const json j = parse_json_text(read_text_file(path), path.string());
  // Accept either a bare vocabulary or a ground-truth file that embeds one.
  if (j.is_object() && j.contains("vocabulary")) return vocabulary_from_json(j["vocabulary"]);
  return vocabulary_from_json(j);
}

namespace {

Dataset ground_truth_with(const json& j, Vocabulary vocab, const std::string& source) {
  std::vector<GroundTruthImage> images;
  for (const auto& ji : as_array(require(j, "images", source), source + ".images")) {
    GroundTruthImage img;
    img.image_id = as_string(require(ji, "image_id", source + ": image"), source + ": image_id");
    const std::string where = image_where(source, img.image_id);
    img.width = as_number(require(ji, "width", where), where + ".width");
    img.height = as_number(require(ji, "height", where), where + ".height");
    if (!(img.width > 0.0) || !(img.height > 0.0) || !std::isfinite(img.width) ||
        !std::isfinite(img.height)) {
      throw SchemaError(where + ": width and height must be positive and finite");
    }
    const json& anns = as_array(require(ji, "annotations", where), where + ".annotations");
    for (std::size_t k = 0; k < anns.size(); ++k) {
      const json& ja = anns[k];
      const std::string aw = where + ", annotation " + std::to_string(k);
      HoiAnnotation a;
      a.hoi_id = as_int(require(ja, "hoi_id", aw), aw + ".hoi_id");
      if (!vocab.has_hoi(a.hoi_id)) {
        throw SchemaError(aw + ": unknown hoi_id " + std::to_string(a.hoi_id));
      }
      a.human_box = ingest_box(as_box(require(ja, "human_box", aw), aw + ".human_box"),
                               img.width, img.height, aw + ".human_box");
      a.object_box = ingest_box(as_box(require(ja, "object_box", aw), aw + ".object_box"),
                                img.width, img.height, aw + ".object_box");
      if (auto it = ja.find("invisible"); it != ja.end()) {
        if (!it->is_boolean()) throw SchemaError(aw + ".invisible: expected a boolean");
        a.invisible = it->get<bool>();
      }
      img.annotations.push_back(a);
    }
    images.push_back(std::move(img));
  }
  try {
    return Dataset(std::move(vocab), std::move(images));
  } catch (const SchemaError& e) {
    throw SchemaError(source + ": " + e.what());
  }
}

}  // namespace

Dataset ground_truth_from_json(const json& j, const std::string& source) {
  if (!j.is_object()) throw SchemaError(source + ": expected a top-level object");
  return ground_truth_with(j, vocabulary_from_json(require(j, "vocabulary", source)), source);
}

Dataset parse_ground_truth(const std::filesystem::path& path) {
  return ground_truth_from_json(parse_json_text(read_text_file(path), path.string()),
                                path.string());
}

Dataset parse_ground_truth(const std::filesystem::path& path, const Vocabulary& vocab) {
  const std::string source = path.string();
  const json j = parse_json_text(read_text_file(path), source);
  if (!j.is_object()) throw SchemaError(source + ": expected a top-level object");
  if (j.contains("vocabulary") && !(vocabulary_from_json(j["vocabulary"]) == vocab)) {
    throw SchemaError(source + ": vocabulary differs from the reference vocabulary");
  }
  return ground_truth_with(j, vocab, source);
}

json ground_truth_to_json(const Dataset& dataset) {
  json images = json::array();
  for (const auto& img : dataset.images()) {
    json anns = json::array();
    for (const auto& a : img.annotations) {
      anns.push_back({{"human_box", box_to_json(a.human_box)},
                      {"object_box", box_to_json(a.object_box)},
                      {"hoi_id", a.hoi_id},
                      {"invisible", a.invisible}});
    }
    images.push_back({{"image_id", img.image_id},
                      {"width", img.width},
                      {"height", img.height},
                      {"annotations", anns}});
  }
  return {{"vocabulary", vocabulary_to_json(dataset.vocabulary())}, {"images", images}};
}

PredictionSet predictions_from_json(const json& j, const Dataset& gt, const std::string& source) {
  if (!j.is_object()) throw SchemaError(source + ": expected a top-level object");
  PredictionSet out;
  if (auto it = j.find("model_name"); it != j.end()) {
    out.model_name = as_string(*it, source + ".model_name");
  }
  const json& preds = as_array(require(j, "predictions", source), source + ".predictions");
  out.predictions.reserve(preds.size());
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const json& jp = preds[k];
    const std::string where = source + ": prediction " + std::to_string(k);
    Prediction p;
    p.index = k;
    p.image_id = as_string(require(jp, "image_id", where), where + ".image_id");
    if (!gt.contains(p.image_id)) {
      throw SchemaError(where + ": image_id '" + p.image_id + "' is not in the ground truth");
    }
    const GroundTruthImage& img = gt.image(p.image_id);
    p.hoi_id = as_int(require(jp, "hoi_id", where), where + ".hoi_id");
    if (!gt.vocabulary().has_hoi(p.hoi_id)) {
      throw SchemaError(where + ": unknown hoi_id " + std::to_string(p.hoi_id));
    }
    p.score = as_number(require(jp, "score", where), where + ".score");
    if (!(p.score >= 0.0 && p.score <= 1.0)) {
      throw SchemaError(where + ": score must lie in [0, 1]");
    }
    p.human_box = ingest_box(as_box(require(jp, "human_box", where), where + ".human_box"),
                             img.width, img.height, where + ".human_box");
    p.object_box = ingest_box(as_box(require(jp, "object_box", where), where + ".object_box"),
                              img.width, img.height, where + ".object_box");
    out.predictions.push_back(std::move(p));
  }
  return out;
}

PredictionSet parse_predictions(const std::filesystem::path& path, const Dataset& gt) {
  return predictions_from_json(parse_json_text(read_text_file(path), path.string()), gt,
                               path.string());
}

json predictions_to_json(const PredictionSet& set) {
  json preds = json::array();
  for (const auto& p : set.predictions) {
    preds.push_back({{"image_id", p.image_id},
                     {"human_box", box_to_json(p.human_box)},
                     {"object_box", box_to_json(p.object_box)},
                     {"hoi_id", p.hoi_id},
                     {"score", p.score}});
  }
  return {{"model_name", set.model_name}, {"predictions", preds}};
}

namespace {

bool external_invisible(const json& jh, const std::string& where) {
  for (const char* key : {"invisible", "invis"}) {
    auto it = jh.find(key);
    if (it == jh.end()) continue;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number_integer()) return it->get<int>() != 0;
    throw SchemaError(where + "." + key + ": expected a boolean or 0/1");
  }
  return false;
}

Dataset convert_hico_community(const json& j, const Vocabulary& vocab, const std::string& source) {
  const json& entries = as_array(j, source + ": top level");
  std::vector<GroundTruthImage> images;
  images.reserve(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const json& je = entries[e];
    GroundTruthImage img;
    img.image_id = as_string(require(je, "file_name", source + ": entry " + std::to_string(e)),
                             source + ".file_name");
    const std::string where = image_where(source, img.image_id);

    struct Box {
      BoundingBox box;
      ObjectId category;
    };
    std::vector<Box> boxes;
    for (const auto& jb : as_array(require(je, "annotations", where), where + ".annotations")) {
      BoundingBox b = normalize_corners(as_box(require(jb, "bbox", where), where + ".bbox"));
      boxes.push_back({b, as_int(require(jb, "category_id", where), where + ".category_id")});
    }

    // Image size: explicit fields when present, otherwise the box extent.
    double extent_w = 0.0;
    double extent_h = 0.0;
    for (const auto& b : boxes) {
      extent_w = std::max(extent_w, b.box.x2);
      extent_h = std::max(extent_h, b.box.y2);
    }
    img.width = je.contains("width") ? as_number(je["width"], where + ".width") : std::ceil(extent_w);
    img.height =
        je.contains("height") ? as_number(je["height"], where + ".height") : std::ceil(extent_h);

    const json& hois = as_array(require(je, "hoi_annotation", where), where + ".hoi_annotation");
    for (std::size_t k = 0; k < hois.size(); ++k) {
      const json& jh = hois[k];
      const std::string hw = where + ", hoi " + std::to_string(k);
      const int subject = as_int(require(jh, "subject_id", hw), hw + ".subject_id");
      const int object = as_int(require(jh, "object_id", hw), hw + ".object_id");
      if (subject < 0 || object < 0 || static_cast<std::size_t>(subject) >= boxes.size() ||
          static_cast<std::size_t>(object) >= boxes.size()) {
        throw SchemaError(hw + ": box index out of range");
      }
      const ObjectId object_category = boxes[static_cast<std::size_t>(object)].category;
      std::optional<HoiId> hoi;
      if (auto it = jh.find("hoi_category_id"); it != jh.end()) {
        hoi = as_int(*it, hw + ".hoi_category_id");
        if (!vocab.has_hoi(*hoi)) {
          throw SchemaError(hw + ": unknown hoi_category_id " + std::to_string(*hoi));
        }
        if (vocab.object_of(*hoi) != object_category) {
          throw SchemaError(hw + ": hoi_category_id disagrees with the object box category");
        }
      } else {
        const VerbId verb = as_int(require(jh, "category_id", hw), hw + ".category_id");
        hoi = vocab.find_hoi(verb, object_category);
        if (!hoi) {
          throw SchemaError(hw + ": no hoi class for verb " + std::to_string(verb) +
                            " and object " + std::to_string(object_category));
        }
      }
      HoiAnnotation a;
      a.hoi_id = *hoi;
      a.invisible = external_invisible(jh, hw);
      a.human_box = ingest_box(boxes[static_cast<std::size_t>(subject)].box, img.width,
                               img.height, hw + ".subject");
      a.object_box = ingest_box(boxes[static_cast<std::size_t>(object)].box, img.width,
                                img.height, hw + ".object");
      img.annotations.push_back(a);
    }
    if (!(img.width > 0.0) || !(img.height > 0.0)) {
      throw SchemaError(where + ": cannot determine a positive image size");
    }
    images.push_back(std::move(img));
  }
  try {
    return Dataset(vocab, std::move(images));
  } catch (const SchemaError& e) {
    throw SchemaError(source + ": " + e.what());
  }
}

}  // namespace

Dataset convert_external_json(const json& j, ExternalFormat format, const Vocabulary& vocab,
                              const std::string& source) {
  switch (format) {
    case ExternalFormat::HicoCommunityV1:
      return convert_hico_community(j, vocab, source);
  }
  throw InputError("unsupported external format");
}

Dataset convert_external(const std::filesystem::path& path, ExternalFormat format,
                         const Vocabulary& vocab) {
  return convert_external_json(parse_json_text(read_text_file(path), path.string()), format,
                               vocab, path.string());
}

}  // namespace hoidiag
