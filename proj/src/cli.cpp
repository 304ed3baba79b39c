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

#include "hoidiag/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hoidiag/bias.hpp"
#include "hoidiag/categories.hpp"
#include "hoidiag/errors.hpp"
#include "hoidiag/evaluation.hpp"
#include "hoidiag/fp_analysis.hpp"
#include "hoidiag/instances.hpp"
#include "hoidiag/io.hpp"
#include "hoidiag/report.hpp"
#include "hoidiag/synth.hpp"

namespace hoidiag::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kOutDirEnv = "HOIDIAG_OUT_DIR";

struct RunConfig {
  std::string subcommand;
  std::string gt;
  std::string vocab;
  std::vector<std::string> pred;
  std::string categories;
  std::vector<std::string> labels;
  std::string train;
  std::string input;
  std::string format = "hico-community-v1";
  double merge_iou = 0.7;
  double iou = 0.5;
  bool strict_visible = false;
  std::string thresholds = "0.0:0.9:0.1";
  bool per_class_csv = false;
  bool dump_scene_graphs = false;
  bool manifest = false;
  unsigned threads = 0;
  std::string out_dir;
  std::size_t k = 10;
  std::vector<std::string> topk_categories;
  std::vector<std::string> focus;
  std::size_t min_test = 5;
  bool include_no_interaction = false;
  std::uint64_t seed = 1;
  std::size_t scenes = 100;
  std::string persons = "1:3";
  std::string mix;
  std::string inject;
  double jitter = 0.02;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_readable(const std::string& path, const std::string& flag) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(flag + ": cannot read '" + path + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || s[0] == '-') throw InputError(what + ": '" + s + "' is not a count");
  return static_cast<std::size_t>(v);
}

double parse_weight(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw InputError(what + ": '" + s + "' is not a number");
  return v;
}

Category parse_category_name(const std::string& s, const std::string& what) {
  auto c = category_from_string(s);
  if (!c) throw InputError(what + ": unknown category '" + s + "'");
  return *c;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void run() {
    validate();
    out_dir_ = resolve_out_dir();
    const std::string& s = cfg_.subcommand;
    if (s == "categorize") return categorize();
    if (s == "stats") return stats();
    if (s == "eval") return eval();
    if (s == "errors") return errors();
    if (s == "bias") return bias();
    if (s == "synth") return synth();
    if (s == "convert") return convert();
    throw ContractViolation("run: unhandled subcommand '" + s + "'");
  }

 private:
  // Every input path is checked before any computation starts.
  void validate() {
    const std::string& s = cfg_.subcommand;
    if (!cfg_.gt.empty()) require_readable(cfg_.gt, "--gt");
    if (!cfg_.vocab.empty()) require_readable(cfg_.vocab, "--vocab");
    if (!cfg_.categories.empty()) require_readable(cfg_.categories, "--categories");
    if (!cfg_.train.empty()) require_readable(cfg_.train, "--train");
    if (!cfg_.input.empty()) require_readable(cfg_.input, "--input");
    for (const auto& p : cfg_.pred) require_readable(p, "--pred");
    for (const auto& p : cfg_.labels) require_readable(p, "--labels");
    if (!cfg_.categories.empty() && !cfg_.labels.empty()) {
      throw InputError("--categories and --labels are alternative category sources");
    }
    if (!(cfg_.merge_iou >= 0.5 && cfg_.merge_iou <= 1.0)) {
      throw InputError("--merge-iou must lie in [0.5, 1]");
    }
    if (!(cfg_.iou > 0.0 && cfg_.iou < 1.0)) throw InputError("--iou must lie in (0, 1)");
    if (s == "stats" && cfg_.gt.empty() && cfg_.categories.empty()) {
      throw InputError("stats needs --categories or --gt");
    }
    if (s == "bias" && cfg_.k < 1) throw InputError("--k must be at least 1");
  }

  fs::path resolve_out_dir() const {
    std::string dir = cfg_.out_dir;
    if (dir.empty()) {
      const char* env = std::getenv(kOutDirEnv);
      dir = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw InputError("cannot create output directory '" + dir + "'");
    return dir;
  }

  EvalSettings settings() const { return {cfg_.iou, cfg_.strict_visible, cfg_.threads}; }

  Dataset load_gt(const std::string& path) const {
    if (cfg_.vocab.empty()) return parse_ground_truth(path);
    return parse_ground_truth(path, parse_vocabulary(cfg_.vocab));
  }

  std::vector<CategoryAssignment> load_categories(const Dataset& gt, std::vector<Disagreement>* dis) const {
    if (!cfg_.categories.empty()) {
      std::vector<CategoryAssignment> a =
          categories_from_json(parse_json_text(read_text_file(cfg_.categories), cfg_.categories),
                               cfg_.categories);
      for (const auto& x : a) {
        if (!gt.contains(x.image_id)) {
          throw InputError(cfg_.categories + ": image '" + x.image_id + "' is not in the ground truth");
        }
      }
      return a;
    }
    std::vector<CategoryAssignment> rule = categorize_dataset(gt, cfg_.merge_iou, cfg_.threads);
    if (cfg_.labels.empty()) return rule;
    std::vector<LabelFile> votes;
    for (const auto& path : cfg_.labels) {
      const json j = parse_json_text(read_text_file(path), path);
      if (!j.is_object() || j.contains("images")) {
        throw SchemaError(path + ": a label file is a JSON object mapping image_id to category");
      }
      LabelFile f;
      for (const auto& a : categories_from_json(j, path)) f[a.image_id] = a.category.value();
      votes.push_back(std::move(f));
    }
    return merge_with_consensus(rule, consensus(votes), dis);
  }

  json manifest(const std::vector<std::pair<std::string, std::string>>& inputs) const {
    json files = json::array();
    for (const auto& [role, path] : inputs) {
      if (path.empty()) continue;
      files.push_back({{"role", role}, {"path", path}, {"sha256", sha256_file(path)}});
    }
    json config = {{"merge_iou", cfg_.merge_iou},
                   {"iou_threshold", cfg_.iou},
                   {"strict_visible", cfg_.strict_visible},
                   {"thresholds", cfg_.thresholds},
                   {"category_source", !cfg_.categories.empty() ? "file"
                                       : cfg_.labels.empty()    ? "rule_based"
                                                                : "consensus"}};
    if (cfg_.subcommand == "bias") {
      config["k"] = cfg_.k;
      config["min_test"] = cfg_.min_test;
      config["include_no_interaction"] = cfg_.include_no_interaction;
      config["focus"] = cfg_.focus;
      config["topk_categories"] = cfg_.topk_categories;
    }
    return {{"tool", "hoidiag"}, {"subcommand", cfg_.subcommand}, {"config", config}, {"inputs", files}};
  }

  std::vector<std::pair<std::string, std::string>> input_roles() const {
    std::vector<std::pair<std::string, std::string>> r = {
        {"gt", cfg_.gt}, {"vocab", cfg_.vocab}, {"categories", cfg_.categories},
        {"train", cfg_.train}, {"input", cfg_.input}};
    for (const auto& p : cfg_.pred) r.push_back({"pred", p});
    for (const auto& p : cfg_.labels) r.push_back({"labels", p});
    return r;
  }

  void attach_manifest(json& report) const {
    if (cfg_.manifest) report["manifest"] = manifest(input_roles());
  }

  void write_manifest_file() const {
    if (cfg_.manifest) write_atomic(out_dir_ / "manifest.json", dump(manifest(input_roles())));
  }

  void categorize() {
    const Dataset gt = load_gt(cfg_.gt);
    std::vector<Disagreement> dis;
    const std::vector<CategoryAssignment> assignments = load_categories(gt, &dis);
    json report = categories_to_json(assignments, dis);
    report["merge_iou"] = cfg_.merge_iou;
    if (cfg_.dump_scene_graphs) {
      ResolveOptions opts = ResolveOptions::for_categorization();
      opts.merge_iou = cfg_.merge_iou;
      json graphs = json::array();
      for (const auto& img : gt.images()) {
        graphs.push_back(scene_graph_to_json(resolve_instances(img, gt.vocabulary(), opts)));
      }
      report["scene_graphs"] = graphs;
    }
    attach_manifest(report);
    write_atomic(out_dir_ / "categories.json", dump(report));

    const CategoryStatistics s = category_statistics(assignments);
    out_ << "categorized " << s.total.images << " images:";
    for (const auto& [c, n] : s.per_category) out_ << ' ' << to_string(c) << ' ' << n.images;
    if (!dis.empty()) out_ << "; " << dis.size() << " consensus disagreements";
    out_ << '\n';
  }

  void stats() {
    std::vector<CategoryAssignment> assignments;
    if (!cfg_.categories.empty()) {
      assignments = categories_from_json(parse_json_text(read_text_file(cfg_.categories), cfg_.categories),
                                         cfg_.categories);
    } else {
      assignments = load_categories(load_gt(cfg_.gt), nullptr);
    }
    const CategoryStatistics s = category_statistics(assignments);
    write_atomic(out_dir_ / "stats.csv", statistics_csv(s));
    write_manifest_file();
    out_ << statistics_table(s);
    out_ << "stats: " << s.total.images << " images, " << s.single_person.images << " single-person, "
         << s.multi_person.images << " multi-person\n";
  }

  void eval() {
    if (cfg_.pred.size() != 1) throw InputError("eval takes exactly one --pred file");
    const Dataset gt = load_gt(cfg_.gt);
    const PredictionSet preds = parse_predictions(cfg_.pred.front(), gt);
    const auto categories = category_lookup(load_categories(gt, nullptr));
    const EvalReport r = evaluate(gt, preds, categories, settings());
    json report = eval_report_to_json(r, gt.vocabulary(), settings());
    attach_manifest(report);
    write_atomic(out_dir_ / "report.json", dump(report));
    if (cfg_.per_class_csv) write_atomic(out_dir_ / "per_class.csv", per_class_csv(r, gt.vocabulary()));

    out_ << "mAP " << format_real(100.0 * r.map_overall, 2);
    const auto sp = r.per_group_map.find(PersonGroup::SinglePerson);
    const auto mp = r.per_group_map.find(PersonGroup::MultiPerson);
    if (sp != r.per_group_map.end()) out_ << " | single-person " << format_real(100.0 * sp->second, 2);
    if (mp != r.per_group_map.end()) out_ << " | multi-person " << format_real(100.0 * mp->second, 2);
    if (sp != r.per_group_map.end() && mp != r.per_group_map.end()) {
      out_ << " | gap " << format_real(100.0 * (sp->second - mp->second), 2);
    }
    out_ << '\n';
  }

  void errors() {
    if (cfg_.pred.size() != 1) throw InputError("errors takes exactly one --pred file");
    const std::vector<double> grid = parse_threshold_grid(cfg_.thresholds);
    const Dataset gt = load_gt(cfg_.gt);
    const PredictionSet preds = parse_predictions(cfg_.pred.front(), gt);
    const auto categories = category_lookup(load_categories(gt, nullptr));
    const ErrorSweep s = sweep(gt, preds.predictions, categories, grid, settings());
    write_atomic(out_dir_ / "errors.csv", errors_csv(s));
    json report = errors_to_json(s);
    attach_manifest(report);
    write_atomic(out_dir_ / "errors.json", dump(report));

    const FlagCounts& first = s.per_threshold.front().overall;
    out_ << "errors: " << first.fp_count << " FP at threshold " << format_real(s.thresholds.front(), 2)
         << " (";
    for (std::size_t i = 0; i < kAllErrorTypes.size(); ++i) {
      out_ << (i ? ", " : "") << to_string(kAllErrorTypes[i]) << ' ' << first.flags[i];
    }
    out_ << "); " << s.thresholds.size() << " thresholds\n";
  }

  void bias() {
    if (cfg_.train.empty()) throw InputError("bias needs --train");
    const Dataset test = load_gt(cfg_.gt);
    const Dataset train = parse_ground_truth(cfg_.train, test.vocabulary());
    const std::vector<CategoryAssignment> assignments = load_categories(test, nullptr);
    const auto categories = category_lookup(assignments);

    std::vector<EvalReport> reports;
    std::vector<std::string> names;
    for (const auto& path : cfg_.pred) {
      reports.push_back(evaluate(test, parse_predictions(path, test), categories, settings()));
      names.push_back(reports.back().model_name.empty() ? path : reports.back().model_name);
    }
    const FrequencyTable freq =
        build_frequencies(train, test, categories, BiasOptions{cfg_.include_no_interaction});
    const Vocabulary& vocab = test.vocabulary();

    std::vector<Category> wanted;
    for (const auto& c : cfg_.topk_categories) wanted.push_back(parse_category_name(c, "--category"));
    if (wanted.empty()) {
      for (Category c : kAllCategories) {
        auto it = freq.test_counts.find(c);
        if (c != Category::Excluded && it != freq.test_counts.end() && !it->second.empty()) wanted.push_back(c);
      }
    }
    std::vector<std::pair<Category, std::vector<TopKRow>>> topk;
    for (Category c : wanted) topk.push_back({c, top_k_table(freq, reports, c, cfg_.k)});
    write_atomic(out_dir_ / "topk.csv", topk_csv(topk, vocab, names));

    std::vector<BiasTable> tables;
    for (const auto& f : cfg_.focus) {
      const std::size_t colon = f.rfind(':');
      if (colon == std::string::npos) throw InputError("--focus expects OBJECT:CATEGORY, got '" + f + "'");
      const std::string object = f.substr(0, colon);
      std::optional<ObjectId> id = vocab.find_object(object);
      if (!id) {
        try {
          id = static_cast<ObjectId>(parse_count(object, "--focus"));
        } catch (const InputError&) {
          throw InputError("--focus: unknown object '" + object + "'");
        }
      }
      tables.push_back(object_bias_table(freq, reports, vocab, *id,
                                         parse_category_name(f.substr(colon + 1), "--focus"), cfg_.min_test));
    }
    if (!tables.empty()) write_atomic(out_dir_ / "bias.csv", bias_csv(tables, vocab, names));
    write_manifest_file();

    out_ << "bias: top-" << cfg_.k << " tables for " << topk.size() << " categories, " << tables.size()
         << " object tables, " << reports.size() << " models\n";
  }

  void synth() {
    SynthSpec spec;
    spec.seed = cfg_.seed;
    spec.scene_count = cfg_.scenes;
    spec.jitter = cfg_.jitter;
    const auto range = split(cfg_.persons, ':');
    if (range.size() != 2) throw InputError("--persons expects MIN:MAX, got '" + cfg_.persons + "'");
    spec.min_persons = parse_count(range[0], "--persons");
    spec.max_persons = parse_count(range[1], "--persons");
    if (!cfg_.mix.empty()) {
      for (const auto& item : split(cfg_.mix, ',')) {
        const auto kv = split(item, '=');
        if (kv.size() != 2) throw InputError("--mix expects CATEGORY=WEIGHT items, got '" + item + "'");
        spec.category_mix[parse_category_name(kv[0], "--mix")] = parse_weight(kv[1], "--mix");
      }
    }
    if (!cfg_.inject.empty()) {
      for (const auto& item : split(cfg_.inject, ',')) {
        const auto kv = split(item, '=');
        if (kv.size() != 2) throw InputError("--inject expects TYPE=COUNT items, got '" + item + "'");
        const std::size_t n = parse_count(kv[1], "--inject");
        if (kv[0] == "all") {
          for (ErrorType t : kAllErrorTypes) spec.injections_per_scene[t] = n;
          continue;
        }
        auto t = error_type_from_string(kv[0]);
        if (!t) throw InputError("--inject: unknown error type '" + kv[0] + "'");
        spec.injections_per_scene[*t] = n;
      }
    }
    const SynthOutput s = generate(spec);
    write_atomic(out_dir_ / "gt.json", dump(ground_truth_to_json(s.ground_truth)));
    write_atomic(out_dir_ / "predictions.json", dump(predictions_to_json(s.predictions)));
    json log = injection_log_to_json(s.log);
    json cats = json::array();
    for (Category c : s.scene_categories) cats.push_back(std::string(to_string(c)));
    log["scene_categories"] = cats;
    log["seed"] = spec.seed;
    write_atomic(out_dir_ / "truth_log.json", dump(log));

    std::size_t injected = 0;
    for (const auto& r : s.log.records) injected += r.injected.has_value();
    std::size_t skipped = 0;
    for (const auto& [_, n] : s.log.skipped) skipped += n;
    out_ << "synth: " << s.scene_categories.size() << " scenes, " << s.predictions.predictions.size()
         << " predictions (" << injected << " injected, " << skipped << " skipped)\n";
  }

  void convert() {
    if (cfg_.input.empty() || cfg_.vocab.empty()) throw InputError("convert needs --input and --vocab");
    const Dataset d = convert_external(cfg_.input, parse_format_tag(cfg_.format), parse_vocabulary(cfg_.vocab));
    write_atomic(out_dir_ / "gt.json", dump(ground_truth_to_json(d)));
    write_manifest_file();
    out_ << "convert: " << d.images().size() << " images, " << d.annotation_count() << " annotations\n";
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  fs::path out_dir_;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_dir,
                  std::string("Output directory (default: $") + kOutDirEnv + ", else the current directory)");
  sub->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores (never changes output)");
  sub->add_flag("--manifest", cfg.manifest, "Record config and SHA-256 digests of every input in the report");
}

void add_gt(CLI::App* sub, RunConfig& cfg, bool required) {
  auto* o = sub->add_option("--gt", cfg.gt, "Canonical ground-truth JSON");
  if (required) o->required();
  sub->add_option("--vocab", cfg.vocab, "Vocabulary JSON for ground truth without an embedded vocabulary");
}

void add_category_source(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--categories", cfg.categories, "categories.json from `categorize`, or a label map");
  sub->add_option("--labels", cfg.labels, "Annotator label files for majority-vote consensus (repeatable)");
  sub->add_option("--merge-iou", cfg.merge_iou, "IoU at which boxes merge into one instance")
      ->capture_default_str();
}

void add_matching(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--iou", cfg.iou, "Pair-matching IoU threshold (strict >)")->capture_default_str();
  sub->add_flag("--strict-visible", cfg.strict_visible, "Drop invisible annotations from matchable ground truth");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"hoidiag: diagnostics for human-object interaction detection"};
  app.name("hoidiag");
  app.require_subcommand(1, 1);

  auto* categorize = app.add_subcommand("categorize", "Assign a scene category to every image");
  add_gt(categorize, cfg, true);
  add_category_source(categorize, cfg);
  categorize->add_flag("--dump-scene-graphs", cfg.dump_scene_graphs, "Include resolved scene graphs");
  add_common(categorize, cfg);

  auto* stats = app.add_subcommand("stats", "Image and HOI counts per scene category");
  add_gt(stats, cfg, false);
  add_category_source(stats, cfg);
  add_common(stats, cfg);

  auto* eval = app.add_subcommand("eval", "Per-class AP and per-category mAP");
  add_gt(eval, cfg, true);
  eval->add_option("--pred", cfg.pred, "Prediction JSON")->required();
  add_category_source(eval, cfg);
  add_matching(eval, cfg);
  eval->add_flag("--per-class-csv", cfg.per_class_csv, "Also write per_class.csv");
  add_common(eval, cfg);

  auto* errors = app.add_subcommand("errors", "Decompose false positives over a score-threshold sweep");
  add_gt(errors, cfg, true);
  errors->add_option("--pred", cfg.pred, "Prediction JSON")->required();
  add_category_source(errors, cfg);
  add_matching(errors, cfg);
  errors->add_option("--thresholds", cfg.thresholds, "Score grid: START:STOP:STEP (inclusive) or a comma list")
      ->capture_default_str();
  add_common(errors, cfg);

  auto* bias = app.add_subcommand("bias", "Class-frequency and object-conditioned verb tables");
  add_gt(bias, cfg, true);
  bias->add_option("--train", cfg.train, "Training ground-truth JSON")->required();
  bias->add_option("--pred", cfg.pred, "Prediction JSON, one AP column each (repeatable)");
  add_category_source(bias, cfg);
  add_matching(bias, cfg);
  bias->add_option("--k", cfg.k, "Rows per top-k table")->capture_default_str();
  bias->add_option("--category", cfg.topk_categories, "Categories for top-k tables (default: all non-empty)");
  bias->add_option("--focus", cfg.focus, "OBJECT:CATEGORY verb table, object by name or id (repeatable)");
  bias->add_option("--min-test", cfg.min_test, "Minimum test instances for a verb row")->capture_default_str();
  bias->add_flag("--include-no-interaction", cfg.include_no_interaction,
                 "Keep no-interaction verbs in verb shares");
  add_common(bias, cfg);

  auto* synth = app.add_subcommand("synth", "Generate synthetic scenes with labeled error injections");
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--scenes", cfg.scenes, "Number of scenes")->capture_default_str();
  synth->add_option("--persons", cfg.persons, "Person count range MIN:MAX")->capture_default_str();
  synth->add_option("--mix", cfg.mix, "Category weights, e.g. SPSO=2,A=1 (default: equal over SPSO, SPMO, A-F)");
  synth->add_option("--inject", cfg.inject, "Injected FPs per scene, e.g. verb=1,pairing=2 or all=1");
  synth->add_option("--jitter", cfg.jitter, "Edge jitter of predicted boxes, fraction of box size")
      ->capture_default_str();
  add_common(synth, cfg);

  auto* convert = app.add_subcommand("convert", "Convert a third-party annotation export to canonical JSON");
  convert->add_option("--input", cfg.input, "External annotation file")->required();
  convert->add_option("--format", cfg.format, "Input format tag")->capture_default_str();
  convert->add_option("--vocab", cfg.vocab, "Vocabulary JSON")->required();
  add_common(convert, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    err << "error: " << e.what() << "\n\n" << target->help();
    return 1;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    Runner(cfg, out).run();
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ContractViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hoidiag::cli
