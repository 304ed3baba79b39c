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

// Acceptance checks. Run `acceptance` for every criterion or `acceptance N`
// for one. Each criterion prints one PASS/FAIL/SKIP line. Exit status: 0 pass,
// 1 fail, 77 skipped because the required external data is not configured.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "hoidiag/categories.hpp"
#include "hoidiag/cli.hpp"
#include "hoidiag/evaluation.hpp"
#include "hoidiag/fp_analysis.hpp"
#include "hoidiag/io.hpp"
#include "hoidiag/synth.hpp"
#include "oracles/reference_eval.hpp"
#include "support/random_config.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hoidiag;

// Pinned tolerances and budgets.
constexpr std::size_t kHicoTestImages = 9658;
constexpr double kHicoSinglePerson = 6124;
constexpr double kSinglePersonRelTol = 0.02;
constexpr double kCategoryRelTol = 0.10;
constexpr double kEfAbsTol = 2.0;
constexpr double kCategorizeBudgetSeconds = 30.0;
constexpr std::size_t kDecomposerScenes = 1000;
constexpr double kDecomposerBudgetSeconds = 10.0;
constexpr int kApInstances = 200;
constexpr double kApTolerance = 1e-9;
constexpr int kCompletenessConfigs = 10000;
constexpr unsigned kManyThreads = 8;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kSkip = 77;

struct Outcome {
  int status;
  std::string detail;
};

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Real test annotations: canonical JSON in HOIDIAG_HICO_TEST_GT, or a
// community export in HOIDIAG_HICO_TEST_RAW with HOIDIAG_HICO_VOCAB.
std::optional<Dataset> real_test_set() {
  if (const char* gt = env("HOIDIAG_HICO_TEST_GT")) return parse_ground_truth(gt);
  const char* raw = env("HOIDIAG_HICO_TEST_RAW");
  const char* vocab = env("HOIDIAG_HICO_VOCAB");
  if (raw && vocab) return convert_external(raw, ExternalFormat::HicoCommunityV1, parse_vocabulary(vocab));
  return std::nullopt;
}

Outcome categorization_statistics() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::optional<Dataset> test = real_test_set();
  if (!test) {
    // Timing on a synthetic set of the same size, for information only.
    SynthSpec spec;
    spec.scene_count = kHicoTestImages;
    spec.max_persons = 4;
    const Dataset synthetic = generate(spec).ground_truth;
    const auto t1 = std::chrono::steady_clock::now();
    category_statistics(categorize_dataset(synthetic, 0.7, 0));
    return {kSkip,
            "HICO-DET test annotations not configured (set HOIDIAG_HICO_TEST_GT, or HOIDIAG_HICO_TEST_RAW "
            "and HOIDIAG_HICO_VOCAB); synthetic " +
                std::to_string(kHicoTestImages) + "-image categorization took " + fixed(seconds_since(t1), 2) +
                " s"};
  }
  const CategoryStatistics s = category_statistics(categorize_dataset(*test, 0.7, 0));
  const double elapsed = seconds_since(t0);

  std::ostringstream d;
  bool ok = true;
  const auto check = [&](const std::string& what, double got, double want, double tol, bool relative) {
    const double bound = relative ? tol * want : tol;
    const bool pass = std::abs(got - want) <= bound;
    ok = ok && pass;
    d << what << ' ' << got << " (target " << want << " +/- " << bound << (pass ? "" : " MISS") << "); ";
  };
  check("total", static_cast<double>(s.total.images), kHicoTestImages, 0.0, false);
  check("single-person", static_cast<double>(s.single_person.images), kHicoSinglePerson, kSinglePersonRelTol,
        true);
  const std::vector<std::pair<Category, double>> fig = {{Category::SPSO, 5897}, {Category::SPMO, 227},
                                                        {Category::A, 513},     {Category::B, 303},
                                                        {Category::C, 621},     {Category::D, 146}};
  for (const auto& [c, want] : fig) {
    check(std::string(to_string(c)), static_cast<double>(s.per_category.at(c).images), want, kCategoryRelTol, true);
  }
  check("E", static_cast<double>(s.per_category.at(Category::E).images), 1, kEfAbsTol, false);
  check("F", static_cast<double>(s.per_category.at(Category::F).images), 9, kEfAbsTol, false);
  const bool fast = elapsed < kCategorizeBudgetSeconds;
  d << "runtime " << fixed(elapsed, 2) << " s (limit " << kCategorizeBudgetSeconds << " s)";
  return {ok && fast ? kPass : kFail, d.str()};
}

Outcome decomposer_exactness() {
  SynthSpec spec;
  spec.seed = 20240601;
  spec.scene_count = kDecomposerScenes;
  spec.min_persons = 1;
  spec.max_persons = 4;
  for (ErrorType t : kAllErrorTypes) spec.injections_per_scene[t] = 1;

  const auto t0 = std::chrono::steady_clock::now();
  const SynthOutput out = generate(spec);
  const auto analysis = analyze_predictions(out.ground_truth, out.predictions.predictions, {});
  const double elapsed = seconds_since(t0);

  std::size_t mismatches = 0;
  std::map<ErrorType, std::size_t> injected;
  for (std::size_t i = 0; i < analysis.size(); ++i) {
    const InjectionRecord& r = out.log.records[i];
    if (analysis[i].prediction_index != r.prediction_index || analysis[i].verdict != r.intended_verdict ||
        !(analysis[i].flags == r.intended_flags)) {
      ++mismatches;
    }
    if (r.injected) ++injected[*r.injected];
  }
  if (analysis.size() != out.log.records.size()) ++mismatches;
  std::set<Category> categories(out.scene_categories.begin(), out.scene_categories.end());

  std::ostringstream d;
  d << mismatches << " mismatches over " << analysis.size() << " predictions; injected";
  for (ErrorType t : kAllErrorTypes) d << ' ' << to_string(t) << '=' << injected[t];
  d << "; " << categories.size() << " categories; runtime " << fixed(elapsed, 2) << " s (limit "
    << kDecomposerBudgetSeconds << " s)";
  const bool covered = injected.size() == 6 && categories.size() == 8;
  return {mismatches == 0 && covered && elapsed < kDecomposerBudgetSeconds ? kPass : kFail, d.str()};
}

Outcome ap_equivalence() {
  std::mt19937_64 rng(31337);
  testing::RandomLimits limits;
  limits.max_images = 10;
  limits.max_gt_per_class = 3;
  limits.max_preds_per_class = 5;
  double worst = 0.0;
  std::size_t classes = 0;
  std::size_t count_mismatch = 0;
  for (int i = 0; i < kApInstances; ++i) {
    const auto cfg = testing::random_config(rng, limits);
    const auto gt = testing::to_oracle(cfg.gt);
    const auto preds = testing::to_oracle(cfg.predictions, cfg.gt.vocabulary());
    const EvalReport r = evaluate(cfg.gt, cfg.predictions, {});
    std::set<int> with_gt;
    for (const auto& g : gt) with_gt.insert(g.hoi);
    if (with_gt.size() != r.per_class_ap.size()) ++count_mismatch;
    for (const auto& [hoi, res] : r.per_class_ap) {
      worst = std::max(worst, std::abs(res.ap - oracle::naive_ap(gt, preds, hoi, 0.5)));
      ++classes;
    }
  }
  std::ostringstream d;
  d << kApInstances << " instances, " << classes << " class APs, max |diff| " << worst << " (tolerance "
    << kApTolerance << "), class-set mismatches " << count_mismatch;
  return {worst <= kApTolerance && count_mismatch == 0 ? kPass : kFail, d.str()};
}

Outcome perfect_detector() {
  SynthSpec spec;
  spec.seed = 4;
  spec.scene_count = 450;
  spec.max_persons = 4;
  spec.category_mix = {{Category::SPSO, 1}, {Category::SPMO, 1}, {Category::A, 1}, {Category::B, 1},
                       {Category::C, 1},    {Category::D, 1},    {Category::E, 1}, {Category::F, 1},
                       {Category::Excluded, 1}};
  const Dataset gt = generate(spec).ground_truth;
  const auto cats = category_lookup(categorize_dataset(gt, 0.7, 0));
  const EvalReport perfect = evaluate(gt, testing::as_predictions(gt), cats);
  const EvalReport empty = evaluate(gt, PredictionSet{"empty", {}}, cats);

  bool ok = perfect.map_overall == 1.0 && empty.map_overall == 0.0 && perfect.per_category_map.size() == 9;
  for (const auto& [c, m] : perfect.per_category_map) ok = ok && m == 1.0;
  for (const auto& [c, m] : empty.per_category_map) ok = ok && m == 0.0;
  std::ostringstream d;
  d << "perfect mAP " << fixed(perfect.map_overall, 17) << " over " << perfect.per_class_ap.size()
    << " classes, " << perfect.per_category_map.size() << " category mAPs all 1.0: "
    << (ok ? "yes" : "no") << "; empty mAP " << empty.map_overall;
  return {ok ? kPass : kFail, d.str()};
}

Outcome fp_completeness() {
  std::mt19937_64 rng(8675309);
  std::size_t fps = 0;
  std::size_t tps = 0;
  std::size_t failures = 0;
  std::string first_failure;
  for (int i = 0; i < kCompletenessConfigs; ++i) {
    const auto cfg = testing::random_config(rng);
    EvalSettings s;
    s.strict_visible = i % 3 == 0;
    s.threads = 1;
    try {
      for (const auto& a : analyze_predictions(cfg.gt, cfg.predictions.predictions, s)) {
        const bool fine = a.verdict == Verdict::TP ? !a.flags.any() : a.flags.any();
        (a.verdict == Verdict::TP ? tps : fps) += 1;
        if (!fine) {
          ++failures;
          if (first_failure.empty()) first_failure = "config " + std::to_string(i);
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) first_failure = "config " + std::to_string(i) + ": " + e.what();
    }
  }
  std::ostringstream d;
  d << kCompletenessConfigs << " configurations, " << fps << " FP with >=1 flag, " << tps
    << " TP without flags, failures " << failures;
  if (!first_failure.empty()) d << " (first: " << first_failure << ')';
  return {failures == 0 ? kPass : kFail, d.str()};
}

int cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"hoidiag"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::map<std::string, std::string> directory_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("hoidiag_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string data = (root / "data").string();
  if (cli({"synth", "--scenes", "400", "--seed", "77", "--persons", "1:4", "--inject", "all=1", "--out", data}) != 0) {
    return {kFail, "synthetic input generation failed"};
  }
  const std::string gt = data + "/gt.json";
  const std::string pred = data + "/predictions.json";
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"categorize", {"categorize", "--gt", gt, "--dump-scene-graphs", "--manifest"}},
      {"eval", {"eval", "--gt", gt, "--pred", pred, "--per-class-csv", "--manifest"}},
      {"errors", {"errors", "--gt", gt, "--pred", pred, "--thresholds", "0.0:0.9:0.1", "--manifest"}},
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, base] : commands) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const std::string& threads : std::vector<std::string>{"1", std::to_string(kManyThreads), "1", std::to_string(kManyThreads)}) {
      const std::string out = (root / (name + "_" + std::to_string(runs.size()))).string();
      auto args = base;
      args.insert(args.end(), {"--threads", threads, "--out", out});
      if (cli(args) != 0) {
        ok = false;
        d << name << " failed; ";
        break;
      }
      runs.push_back(directory_bytes(out));
    }
    bool same = runs.size() == 4;
    std::size_t bytes = 0;
    for (const auto& r : runs) {
      same = same && r == runs.front() && !r.empty();
    }
    for (const auto& [_, content] : runs.front()) bytes += content.size();
    ok = ok && same;
    d << name << ' ' << (same ? "identical" : "DIFFERENT") << " (" << runs.front().size() << " files, " << bytes
      << " bytes); ";
  }
  d << "threads 1 vs " << kManyThreads << ", two runs each";
  fs::remove_all(root);
  return {ok ? kPass : kFail, d.str()};
}

Outcome directional_reproduction() {
  const std::optional<Dataset> test = real_test_set();
  const char* pred = env("HOIDIAG_PRED");
  if (!test || !pred) {
    return {kSkip, "soft criterion: needs HICO-DET test annotations and a real prediction file (HOIDIAG_PRED)"};
  }
  const PredictionSet p = parse_predictions(pred, *test);
  const EvalReport r = evaluate(*test, p, category_lookup(categorize_dataset(*test, 0.7, 0)));
  const double sp = r.per_group_map.count(PersonGroup::SinglePerson) ? r.per_group_map.at(PersonGroup::SinglePerson) : 0;
  const double mp = r.per_group_map.count(PersonGroup::MultiPerson) ? r.per_group_map.at(PersonGroup::MultiPerson) : 0;
  std::ostringstream d;
  d << "REPORTED, not asserted: single-person mAP " << fixed(100 * sp, 2) << ", multi-person mAP "
    << fixed(100 * mp, 2) << ", gap " << fixed(100 * (sp - mp), 2) << " points; multi-person lower: "
    << (mp < sp ? "yes" : "no");
  return {kPass, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "categorization statistics on HICO-DET test", categorization_statistics},
      {2, "decomposer oracle exactness", decomposer_exactness},
      {3, "AP oracle equivalence", ap_equivalence},
      {4, "perfect-detector identity", perfect_detector},
      {5, "FP completeness property", fp_completeness},
      {6, "determinism across thread counts and runs", determinism},
      {7, "directional reproduction (soft)", directional_reproduction},
  };
  return all;
}

int report(const Criterion& c) {
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {kFail, std::string("exception: ") + e.what()};
  }
  const char* tag = o.status == kPass ? "PASS" : o.status == kSkip ? "SKIP" : "FAIL";
  std::printf("criterion %d %s: %s (%s)\n", c.id, c.name, tag, o.detail.c_str());
  std::fflush(stdout);
  return o.status;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 2) {
    const int id = std::atoi(argv[1]);
    for (const auto& c : criteria()) {
      if (c.id == id) return report(c);
    }
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 2;
  }
  int status = kPass;
  for (const auto& c : criteria()) {
    if (report(c) == kFail) status = kFail;
  }
  return status;
}
