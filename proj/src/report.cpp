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

#include "hoidiag/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "hoidiag/errors.hpp"
#include "hoidiag/io.hpp"

namespace hoidiag {

namespace {

using nlohmann::json;

json box_json(const BoundingBox& b) { return json::array({b.x1, b.y1, b.x2, b.y2}); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string with_separators(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

const char* source_name(AssignmentSource s) {
  return s == AssignmentSource::RuleBased ? "rule_based" : "consensus";
}

json scene_category_json(const SceneCategory& c) {
  json j = {{"category", std::string(to_string(c.value()))}};
  j["exclusion_reason"] =
      c.exclusion_reason() ? json(std::string(to_string(*c.exclusion_reason()))) : json(nullptr);
  return j;
}

json count_json(const CategoryCount& c) { return {{"images", c.images}, {"hois", c.hois}}; }

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

json class_results_json(const std::map<HoiId, ClassResult>& results, const Vocabulary& vocab) {
  json rows = json::array();
  for (const auto& [hoi, r] : results) {
    rows.push_back({{"hoi_id", hoi},
                    {"verb", vocab.verb(vocab.verb_of(hoi)).name},
                    {"object", vocab.object(vocab.object_of(hoi)).name},
                    {"gt_count", r.gt_count},
                    {"prediction_count", r.prediction_count},
                    {"ap", r.ap}});
  }
  return rows;
}

template <class F>
void for_each_group(const SweepCell& cell, F&& fn) {
  fn(std::string("ALL"), cell.overall);
  for (const auto& [c, counts] : cell.per_category) fn(std::string(to_string(c)), counts);
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

std::string sha256_file(const std::filesystem::path& path) {
  const std::string bytes = read_text_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw ContractViolation("SHA-256 computation failed for " + path.string());
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json scene_graph_to_json(const SceneGraph& g) {
  json persons = json::array();
  for (const auto& p : g.persons) {
    json members = json::array();
    for (const auto& b : p.member_boxes) members.push_back(box_json(b));
    persons.push_back({{"instance_id", p.instance_id}, {"box", box_json(p.canonical_box)},
                       {"member_boxes", members}});
  }
  json objects = json::array();
  for (const auto& o : g.objects) {
    json members = json::array();
    for (const auto& b : o.member_boxes) members.push_back(box_json(b));
    objects.push_back({{"instance_id", o.instance_id}, {"object_id", o.object_id},
                       {"box", box_json(o.canonical_box)}, {"member_boxes", members}});
  }
  json pairs = json::array();
  for (const auto& [key, verbs] : g.pair_verbs) {
    pairs.push_back({{"person", key.first}, {"object", key.second}, {"verbs", verbs}});
  }
  return {{"image_id", g.image_id},
          {"persons", persons},
          {"objects", objects},
          {"pairs", pairs},
          {"included_annotations", g.included_annotations},
          {"dropped_no_interaction", g.dropped_no_interaction},
          {"dropped_invisible", g.dropped_invisible}};
}

json category_statistics_to_json(const CategoryStatistics& stats) {
  json per = json::object();
  for (const auto& [c, n] : stats.per_category) per[std::string(to_string(c))] = count_json(n);
  return {{"per_category", per},
          {"single_person", count_json(stats.single_person)},
          {"multi_person", count_json(stats.multi_person)},
          {"total", count_json(stats.total)}};
}

json categories_to_json(const std::vector<CategoryAssignment>& assignments,
                        const std::vector<Disagreement>& disagreements) {
  json images = json::array();
  for (const auto& a : assignments) {
    json e = {{"image_id", a.image_id}};
    e.update(scene_category_json(a.category));
    e["person_count"] = a.person_count;
    e["object_instance_count"] = a.object_instance_count;
    e["hoi_count"] = a.hoi_count;
    e["source"] = source_name(a.source);
    images.push_back(std::move(e));
  }
  json dis = json::array();
  for (const auto& d : disagreements) {
    dis.push_back({{"image_id", d.image_id},
                   {"rule_based", scene_category_json(d.rule_based)},
                   {"consensus", scene_category_json(d.consensus)}});
  }
  return {{"images", images},
          {"stats", category_statistics_to_json(category_statistics(assignments))},
          {"disagreements", dis}};
}

std::vector<CategoryAssignment> categories_from_json(const json& j, const std::string& source) {
  const auto fail = [&](const std::string& what) { throw SchemaError(source + ": " + what); };
  const auto parse_category = [&](const json& v, const std::string& image_id) {
    if (!v.is_string()) fail("category of '" + image_id + "' is not a string");
    auto c = category_from_string(v.get<std::string>());
    if (!c) fail("unknown category '" + v.get<std::string>() + "' for '" + image_id + "'");
    return *c;
  };

  std::vector<CategoryAssignment> out;
  if (!j.is_object()) fail("expected a JSON object");
  if (j.contains("images")) {
    const json& images = j.at("images");
    if (!images.is_array()) fail("'images' must be an array");
    for (const json& e : images) {
      if (!e.is_object() || !e.contains("image_id") || !e.at("image_id").is_string()) {
        fail("every entry of 'images' needs a string image_id");
      }
      CategoryAssignment a;
      a.image_id = e.at("image_id").get<std::string>();
      if (!e.contains("category")) fail("entry '" + a.image_id + "' has no category");
      const Category c = parse_category(e.at("category"), a.image_id);
      if (c == Category::Excluded) {
        ExclusionReason reason = ExclusionReason::MixedConfiguration;
        if (e.contains("exclusion_reason") && e.at("exclusion_reason").is_string()) {
          auto r = exclusion_reason_from_string(e.at("exclusion_reason").get<std::string>());
          if (!r) fail("unknown exclusion_reason for '" + a.image_id + "'");
          reason = *r;
        }
        a.category = SceneCategory::excluded(reason);
      } else {
        a.category = SceneCategory(c);
      }
      const auto count = [&](const char* key) -> std::size_t {
        if (!e.contains(key)) return 0;
        if (!e.at(key).is_number_unsigned()) fail(std::string(key) + " of '" + a.image_id + "' must be a count");
        return e.at(key).get<std::size_t>();
      };
      a.person_count = count("person_count");
      a.object_instance_count = count("object_instance_count");
      a.hoi_count = count("hoi_count");
      a.source = e.value("source", std::string("rule_based")) == "consensus" ? AssignmentSource::Consensus
                                                                              : AssignmentSource::RuleBased;
      out.push_back(std::move(a));
    }
  } else {
    for (const auto& [image_id, v] : j.items()) {
      CategoryAssignment a;
      a.image_id = image_id;
      const Category c = parse_category(v, image_id);
      a.category = c == Category::Excluded ? SceneCategory::excluded(ExclusionReason::MixedConfiguration)
                                           : SceneCategory(c);
      a.source = AssignmentSource::Consensus;
      out.push_back(std::move(a));
    }
  }
  std::set<std::string> seen;
  for (const auto& a : out) {
    if (!seen.insert(a.image_id).second) fail("duplicate image_id '" + a.image_id + "'");
  }
  return out;
}

std::string statistics_table(const CategoryStatistics& stats) {
  std::ostringstream os;
  char line[96];
  const auto row = [&](const std::string& name, const CategoryCount& c) {
    std::snprintf(line, sizeof line, "%-14s %10s %10s\n", name.c_str(), with_separators(c.images).c_str(),
                  with_separators(c.hois).c_str());
    os << line;
  };
  std::snprintf(line, sizeof line, "%-14s %10s %10s\n", "category", "images", "hois");
  os << line;
  for (const auto& [c, n] : stats.per_category) row(std::string(to_string(c)), n);
  row("single-person", stats.single_person);
  row("multi-person", stats.multi_person);
  row("total", stats.total);
  return os.str();
}

std::string statistics_csv(const CategoryStatistics& stats) {
  std::ostringstream os;
  os << "category,images,hois\n";
  const auto row = [&](const std::string& name, const CategoryCount& c) {
    os << name << ',' << c.images << ',' << c.hois << '\n';
  };
  for (const auto& [c, n] : stats.per_category) row(std::string(to_string(c)), n);
  row("SINGLE_PERSON", stats.single_person);
  row("MULTI_PERSON", stats.multi_person);
  row("TOTAL", stats.total);
  return os.str();
}

json eval_report_to_json(const EvalReport& report, const Vocabulary& vocab,
                         const EvalSettings& settings) {
  json per_category = json::object();
  json per_category_class = json::object();
  for (const auto& [c, m] : report.per_category_map) per_category[std::string(to_string(c))] = m;
  for (const auto& [c, results] : report.per_category_class_ap) {
    per_category_class[std::string(to_string(c))] = class_results_json(results, vocab);
  }
  json groups = json::object();
  for (const auto& [g, m] : report.per_group_map) {
    groups[g == PersonGroup::SinglePerson ? "single_person" : "multi_person"] = m;
  }
  json j = {{"model_name", report.model_name},
            {"iou_threshold", settings.iou_threshold},
            {"strict_visible", settings.strict_visible},
            {"map_overall", report.map_overall},
            {"per_category_map", per_category},
            {"per_group_map", groups},
            {"per_class", class_results_json(report.per_class_ap, vocab)},
            {"per_category_class", per_category_class}};
  if (report.per_group_map.count(PersonGroup::SinglePerson) &&
      report.per_group_map.count(PersonGroup::MultiPerson)) {
    j["multi_person_gap"] = report.per_group_map.at(PersonGroup::SinglePerson) -
                            report.per_group_map.at(PersonGroup::MultiPerson);
  } else {
    j["multi_person_gap"] = nullptr;
  }
  return j;
}

std::string per_class_csv(const EvalReport& report, const Vocabulary& vocab) {
  std::ostringstream os;
  os << "hoi_id,verb,object,gt_count,AP\n";
  for (const auto& [hoi, r] : report.per_class_ap) {
    os << hoi << ',' << csv_field(vocab.verb(vocab.verb_of(hoi)).name) << ','
       << csv_field(vocab.object(vocab.object_of(hoi)).name) << ',' << r.gt_count << ','
       << format_real(r.ap, 9) << '\n';
  }
  return os.str();
}

std::string errors_csv(const ErrorSweep& sweep) {
  // Grouped by category, then threshold, then flag.
  std::map<std::string, std::vector<std::string>> by_group;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < sweep.thresholds.size(); ++i) {
    const std::string t = format_real(sweep.thresholds[i], 2);
    for_each_group(sweep.per_threshold[i], [&](const std::string& group, const FlagCounts& counts) {
      if (!by_group.count(group)) order.push_back(group);
      auto& rows = by_group[group];
      for (ErrorType e : kAllErrorTypes) {
        rows.push_back(group + ',' + t + ',' + std::string(to_string(e)) + ',' +
                       std::to_string(counts.flags[static_cast<std::size_t>(e)]) + ',' +
                       format_real(counts.proportion(e)));
      }
    });
  }
  std::ostringstream os;
  os << "category,threshold,flag,count,proportion_of_fp\n";
  for (const auto& group : order) {
    for (const auto& r : by_group[group]) os << r << '\n';
  }
  return os.str();
}

json errors_to_json(const ErrorSweep& sweep) {
  json cells = json::array();
  for (std::size_t i = 0; i < sweep.thresholds.size(); ++i) {
    json groups = json::object();
    for_each_group(sweep.per_threshold[i], [&](const std::string& group, const FlagCounts& counts) {
      json flags = json::object();
      json co = json::object();
      for (ErrorType a : kAllErrorTypes) {
        const auto ia = static_cast<std::size_t>(a);
        flags[std::string(to_string(a))] = {{"count", counts.flags[ia]},
                                            {"proportion_of_fp", counts.proportion(a)}};
        json row = json::object();
        for (ErrorType b : kAllErrorTypes) {
          row[std::string(to_string(b))] = counts.cooccurrence[ia][static_cast<std::size_t>(b)];
        }
        co[std::string(to_string(a))] = row;
      }
      groups[group] = {{"tp_count", counts.tp_count},
                       {"fp_count", counts.fp_count},
                       {"flags", flags},
                       {"cooccurrence", co}};
    });
    cells.push_back({{"threshold", sweep.thresholds[i]}, {"groups", groups}});
  }
  return {{"flags", [] {
             json names = json::array();
             for (ErrorType e : kAllErrorTypes) names.push_back(std::string(to_string(e)));
             return names;
           }()},
          {"cells", cells}};
}

std::string topk_csv(const std::vector<std::pair<Category, std::vector<TopKRow>>>& tables,
                     const Vocabulary& vocab, std::span<const std::string> model_names) {
  std::ostringstream os;
  os << "category,rank,hoi_id,verb,object,train_count,test_count";
  for (const auto& m : model_names) os << ',' << csv_field("AP_" + m);
  os << '\n';
  for (const auto& [c, rows] : tables) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const TopKRow& row = rows[r];
      os << to_string(c) << ',' << r + 1 << ',' << row.hoi_id << ','
         << csv_field(vocab.verb(vocab.verb_of(row.hoi_id)).name) << ','
         << csv_field(vocab.object(vocab.object_of(row.hoi_id)).name) << ',' << row.train_count << ','
         << row.test_count;
      for (const auto& ap : row.ap) os << ',' << optional_real(ap);
      os << '\n';
    }
  }
  return os.str();
}

std::string bias_csv(const std::vector<BiasTable>& tables, const Vocabulary& vocab,
                     std::span<const std::string> model_names) {
  std::ostringstream os;
  os << "object,category,verb,hoi_id,train_count,train_share,test_count";
  for (const auto& m : model_names) os << ',' << csv_field("AP_" + m);
  os << '\n';
  for (const BiasTable& t : tables) {
    const std::string object = csv_field(vocab.object(t.object_id).name);
    for (const BiasRow& r : t.rows) {
      os << object << ',' << to_string(t.category) << ',' << csv_field(vocab.verb(r.verb_id).name) << ','
         << r.hoi_id << ',' << r.train_count << ',' << optional_real(r.share) << ',' << r.test_count;
      for (const auto& ap : r.ap) os << ',' << optional_real(ap);
      os << '\n';
    }
    os << object << ',' << to_string(t.category) << ",SPEARMAN,,,,";
    for (const auto& rho : t.spearman) os << ',' << optional_real(rho);
    os << '\n';
  }
  return os.str();
}

}  // namespace hoidiag
