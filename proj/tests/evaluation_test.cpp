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

#include "hoidiag/evaluation.hpp"

#include <random>

#include <gtest/gtest.h>

#include "hoidiag/errors.hpp"
#include "oracles/reference_eval.hpp"
#include "support/fixtures.hpp"
#include "support/random_config.hpp"

namespace hoidiag {
namespace {

using testing::ann;
using testing::img;
using testing::pred;
using testing::tiny_vocabulary;

const BoundingBox kH{0, 0, 10, 10};
const BoundingBox kO{20, 0, 30, 10};

MatchOutcome outcome(Verdict v) {
  MatchOutcome m;
  m.verdict = v;
  return m;
}

TEST(AveragePrecisionTest, EnvelopeOverRecalledPairs) {
  const std::vector<MatchOutcome> o = {outcome(Verdict::TP), outcome(Verdict::FP), outcome(Verdict::TP)};
  EXPECT_NEAR(average_precision(o, 2), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  // A later, higher precision lifts the envelope of earlier ranks.
  const std::vector<MatchOutcome> lifted = {outcome(Verdict::FP), outcome(Verdict::TP), outcome(Verdict::FP),
                                            outcome(Verdict::TP), outcome(Verdict::TP)};
  EXPECT_NEAR(average_precision(lifted, 4), (0.6 + 0.6 + 0.6) / 4.0, 1e-15);
}

TEST(AveragePrecisionTest, PerfectEmptyAndInvalid) {
  EXPECT_EQ(average_precision(std::vector<MatchOutcome>(3, outcome(Verdict::TP)), 3), 1.0);
  EXPECT_EQ(average_precision({}, 3), 0.0);
  EXPECT_THROW(average_precision({}, 0), ContractViolation);
  EXPECT_THROW(average_precision(std::vector<MatchOutcome>(2, outcome(Verdict::TP)), 1), ContractViolation);
}

TEST(MatchClassTest, ThresholdIsStrict) {
  const std::vector<GtPair> gt = {{"a", 0, kH, kO}};
  // Human IoU exactly 0.5.
  const std::vector<Prediction> at = {pred("a", {0, 0, 10, 20}, kO, 1, 0.9, 0)};
  EXPECT_EQ(match_class(gt, at, 0.5)[0].verdict, Verdict::FP);
  EXPECT_EQ(match_class(gt, at, 0.49)[0].verdict, Verdict::TP);
}

TEST(MatchClassTest, MinOfHumanAndObjectOverlap) {
  const std::vector<GtPair> gt = {{"a", 0, kH, kO}};
  const std::vector<Prediction> p = {pred("a", kH, {25, 0, 35, 10}, 1, 0.9, 0)};
  const auto m = match_class(gt, p, 0.5);
  EXPECT_EQ(m[0].verdict, Verdict::FP);
  EXPECT_FALSE(m[0].matched_gt.has_value());
}

TEST(MatchClassTest, GreedyByScoreOneToOne) {
  const std::vector<GtPair> gt = {{"a", 0, kH, kO}};
  const std::vector<Prediction> p = {pred("a", kH, kO, 1, 0.3, 0), pred("a", kH, kO, 1, 0.8, 1)};
  const auto m = match_class(gt, p, 0.5);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].prediction_index, 1u);
  EXPECT_EQ(m[0].verdict, Verdict::TP);
  EXPECT_EQ(m[1].verdict, Verdict::FP);
  EXPECT_DOUBLE_EQ(*m[0].match_iou, 1.0);
}

TEST(MatchClassTest, TakesBestOverlapThenLowerAnnotationIndex) {
  const BoundingBox shifted{1, 0, 11, 10};
  const std::vector<GtPair> gt = {{"a", 0, shifted, kO}, {"a", 1, kH, kO}, {"a", 2, kH, kO}};
  const std::vector<Prediction> p = {pred("a", kH, kO, 1, 0.9, 0), pred("a", kH, kO, 1, 0.8, 1)};
  const auto m = match_class(gt, p, 0.5);
  EXPECT_EQ(m[0].matched_gt->annotation_index, 1u);
  EXPECT_EQ(m[1].matched_gt->annotation_index, 2u);
}

TEST(MatchClassTest, EqualScoresRankByImageThenFilePosition) {
  const std::vector<GtPair> gt = {{"a", 0, kH, kO}, {"b", 0, kH, kO}};
  const std::vector<Prediction> p = {pred("b", kH, kO, 1, 0.5, 0), pred("a", kH, kO, 1, 0.5, 2),
                                     pred("a", kH, kO, 1, 0.5, 1)};
  const auto m = match_class(gt, p, 0.5);
  EXPECT_EQ(m[0].prediction_index, 1u);
  EXPECT_EQ(m[1].prediction_index, 2u);
  EXPECT_EQ(m[2].prediction_index, 0u);
  EXPECT_EQ(m[0].verdict, Verdict::TP);
  EXPECT_EQ(m[1].verdict, Verdict::FP);
  EXPECT_EQ(m[2].verdict, Verdict::TP);
}

TEST(MatchClassTest, PredictionsOnlyMatchTheirOwnImage) {
  const std::vector<GtPair> gt = {{"a", 0, kH, kO}};
  const std::vector<Prediction> p = {pred("b", kH, kO, 1, 0.9, 0)};
  EXPECT_EQ(match_class(gt, p, 0.5)[0].verdict, Verdict::FP);
}

TEST(EvaluateTest, PerfectDetectorAndEmptyPredictions) {
  const Dataset d(tiny_vocabulary(), {img("a", {ann(kH, kO, 1), ann(kH, kO, 2)}),
                                      img("b", {ann(kH, kO, 1), ann({50, 50, 60, 60}, kO, 6, true)})});
  const std::map<std::string, Category> cats = {{"a", Category::SPSO}, {"b", Category::SPMO}};
  const EvalReport perfect = evaluate(d, testing::as_predictions(d), cats);
  EXPECT_EQ(perfect.map_overall, 1.0);
  EXPECT_EQ(perfect.per_category_map.at(Category::SPSO), 1.0);
  EXPECT_EQ(perfect.per_category_map.at(Category::SPMO), 1.0);
  EXPECT_EQ(perfect.per_group_map.at(PersonGroup::SinglePerson), 1.0);
  EXPECT_FALSE(perfect.per_group_map.count(PersonGroup::MultiPerson));
  EXPECT_EQ(perfect.per_class_ap.size(), 3u);

  const EvalReport empty = evaluate(d, PredictionSet{"none", {}}, cats);
  EXPECT_EQ(empty.map_overall, 0.0);
  EXPECT_EQ(empty.per_category_map.at(Category::SPSO), 0.0);
}

TEST(EvaluateTest, CategorySubsetsRescoreTheirOwnRanks) {
  // Class 1 has one pair in each image; the FP in image b only hurts b's subset.
  const Dataset d(tiny_vocabulary(), {img("a", {ann(kH, kO, 1)}), img("b", {ann(kH, kO, 1)})});
  const PredictionSet p{"m",
                        {pred("b", {100, 100, 110, 110}, kO, 1, 0.9, 0), pred("a", kH, kO, 1, 0.8, 1),
                         pred("b", kH, kO, 1, 0.7, 2)}};
  const EvalReport r = evaluate(d, p, {{"a", Category::A}, {"b", Category::B}});
  EXPECT_NEAR(r.per_class_ap.at(1).ap, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(r.per_category_map.at(Category::A), 1.0);
  EXPECT_NEAR(r.per_category_map.at(Category::B), 0.5, 1e-12);
  EXPECT_NEAR(r.per_group_map.at(PersonGroup::MultiPerson), 2.0 / 3.0, 1e-12);
}

TEST(EvaluateTest, StrictVisibleDropsInvisiblePairs) {
  const Dataset d(tiny_vocabulary(), {img("a", {ann(kH, kO, 1), ann(kH, kO, 2, true)})});
  const PredictionSet p{"m", {pred("a", kH, kO, 1, 0.9, 0)}};
  EvalSettings s;
  EXPECT_EQ(evaluate(d, p, {}, s).per_class_ap.size(), 2u);
  s.strict_visible = true;
  const EvalReport r = evaluate(d, p, {}, s);
  EXPECT_EQ(r.per_class_ap.size(), 1u);
  EXPECT_EQ(r.map_overall, 1.0);
}

TEST(EvaluateTest, UnknownImageIsInputError) {
  const Dataset d(tiny_vocabulary(), {img("a", {ann(kH, kO, 1)})});
  EXPECT_THROW(evaluate(d, PredictionSet{"m", {pred("q", kH, kO, 1, 0.9, 0)}}, {}), InputError);
}

TEST(EvaluateTest, MatchesNaiveReferenceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cfg = testing::random_config(rng);
    const auto gt = testing::to_oracle(cfg.gt);
    const auto preds = testing::to_oracle(cfg.predictions, cfg.gt.vocabulary());
    EvalSettings s;
    s.threads = 1 + trial % 3;
    const EvalReport r = evaluate(cfg.gt, cfg.predictions, {}, s);
    for (const auto& [hoi, result] : r.per_class_ap) {
      ASSERT_NEAR(result.ap, oracle::naive_ap(gt, preds, hoi, 0.5), 1e-12) << "trial " << trial;
    }
    std::set<int> with_gt;
    for (const auto& g : gt) with_gt.insert(g.hoi);
    ASSERT_EQ(r.per_class_ap.size(), with_gt.size());
  }
}

TEST(EvaluateTest, ThreadCountDoesNotChangeTheReport) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cfg = testing::random_config(rng);
    std::map<std::string, Category> cats;
    for (const auto& im : cfg.gt.images()) cats[im.image_id] = static_cast<Category>(rng() % 9);
    EvalSettings one;
    one.threads = 1;
    EvalSettings many;
    many.threads = 8;
    ASSERT_EQ(evaluate(cfg.gt, cfg.predictions, cats, one), evaluate(cfg.gt, cfg.predictions, cats, many));
  }
}

}  // namespace
}  // namespace hoidiag
