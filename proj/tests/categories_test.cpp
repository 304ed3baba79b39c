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

#include "hoidiag/categories.hpp"

#include <gtest/gtest.h>

#include "hoidiag/errors.hpp"
#include "support/fixtures.hpp"

namespace hoidiag {
namespace {

using testing::ann;
using testing::img;
using testing::tiny_vocabulary;

const BoundingBox kP1{10, 10, 100, 250};
const BoundingBox kP2{200, 10, 290, 250};
const BoundingBox kP3{400, 10, 490, 250};
const BoundingBox kBike1{20, 300, 120, 400};
const BoundingBox kBike2{220, 300, 320, 400};
const BoundingBox kHorse{100, 260, 400, 470};
const BoundingBox kCup{500, 300, 540, 340};

SceneCategory categorize_anns(std::vector<HoiAnnotation> anns) {
  return categorize_image(img("x", std::move(anns)), tiny_vocabulary()).category;
}

TEST(CategorizeTest, SinglePersonSingleObject) {
  const CategoryAssignment a = categorize_image(img("x", {ann(kP1, kBike1, 1), ann(kP1, kBike1, 2)}),
                                                tiny_vocabulary());
  EXPECT_EQ(a.category, SceneCategory(Category::SPSO));
  EXPECT_EQ(a.person_count, 1u);
  EXPECT_EQ(a.object_instance_count, 1u);
  EXPECT_EQ(a.hoi_count, 2u);
}

TEST(CategorizeTest, SinglePersonMultipleObjects) {
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1), ann(kP1, kCup, 6)}), SceneCategory(Category::SPMO));
}

TEST(CategorizeTest, JitteredBoxesOfOnePersonStaySingle) {
  const BoundingBox jitter{12, 11, 101, 248};
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1), ann(jitter, kBike1, 2)}), SceneCategory(Category::SPSO));
}

TEST(CategorizeTest, SameInstanceSameInteractionIsA) {
  EXPECT_EQ(categorize_anns({ann(kP1, kHorse, 4), ann(kP2, kHorse, 4), ann(kP3, kHorse, 4)}),
            SceneCategory(Category::A));
}

TEST(CategorizeTest, SameInstanceDifferentInteractionIsB) {
  EXPECT_EQ(categorize_anns({ann(kP1, kHorse, 4), ann(kP2, kHorse, 5)}), SceneCategory(Category::B));
}

TEST(CategorizeTest, SameLabelCells) {
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1), ann(kP2, kBike2, 1)}), SceneCategory(Category::C));
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1), ann(kP2, kBike2, 2)}), SceneCategory(Category::D));
}

TEST(CategorizeTest, DifferentLabelCells) {
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 2), ann(kP2, kCup, 6)}), SceneCategory(Category::E));
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1), ann(kP2, kCup, 6)}), SceneCategory(Category::F));
}

TEST(CategorizeTest, NonUniformConfigurationsAreExcluded) {
  // P1 and P2 share the horse, P2 and P3 use different bicycles.
  EXPECT_EQ(categorize_anns({ann(kP1, kHorse, 4), ann(kP2, kHorse, 4), ann(kP3, kBike2, 1)}),
            SceneCategory::excluded(ExclusionReason::MixedConfiguration));
  // Overlapping but unequal object sets.
  EXPECT_EQ(categorize_anns({ann(kP1, kHorse, 4), ann(kP2, kHorse, 4), ann(kP2, kCup, 6)}),
            SceneCategory::excluded(ExclusionReason::MixedConfiguration));
}

TEST(CategorizeTest, FilteredImagesCarryTheirReason) {
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 3), ann(kP2, kHorse, 7)}),
            SceneCategory::excluded(ExclusionReason::OnlyNoInteraction));
  EXPECT_EQ(categorize_anns({ann(kP1, kBike1, 1, true), ann(kP2, kHorse, 4, true)}),
            SceneCategory::excluded(ExclusionReason::AllInvisible));
  EXPECT_EQ(categorize_anns({}), SceneCategory::excluded(ExclusionReason::OnlyNoInteraction));
}

TEST(CategorizeTest, NoInteractionAndInvisiblePartsAreIgnored) {
  // The second person only co-occurs with the bicycle, the third is invisible.
  const CategoryAssignment a = categorize_image(
      img("x", {ann(kP1, kBike1, 1), ann(kP2, kBike1, 3), ann(kP3, kCup, 6, true)}), tiny_vocabulary());
  EXPECT_EQ(a.category, SceneCategory(Category::SPSO));
  EXPECT_EQ(a.hoi_count, 1u);
}

TEST(SceneCategoryTest, ExcludedNeedsReason) {
  EXPECT_THROW(SceneCategory(Category::Excluded), ContractViolation);
  EXPECT_FALSE(SceneCategory(Category::A).exclusion_reason().has_value());
  EXPECT_EQ(to_string(Category::Excluded), "EXCLUDED");
  EXPECT_EQ(category_from_string("SPMO"), std::optional<Category>(Category::SPMO));
  EXPECT_FALSE(category_from_string("G").has_value());
}

TEST(ConsensusTest, StrictMajorityWins) {
  const auto c = consensus({{{"i1", Category::A}, {"i2", Category::A}, {"i3", Category::Excluded}},
                            {{"i1", Category::A}, {"i2", Category::B}, {"i3", Category::Excluded}},
                            {{"i1", Category::B}, {"i2", Category::C}, {"i3", Category::A}}});
  EXPECT_EQ(c.at("i1").category, SceneCategory(Category::A));
  EXPECT_EQ(c.at("i2").category, SceneCategory::excluded(ExclusionReason::NoConsensus));
  EXPECT_EQ(c.at("i3").category, SceneCategory::excluded(ExclusionReason::MixedConfiguration));
  EXPECT_EQ(c.at("i1").source, AssignmentSource::Consensus);
}

TEST(ConsensusTest, TieBetweenTwoAnnotatorsIsNoConsensus) {
  const auto c = consensus({{{"i1", Category::A}}, {{"i1", Category::B}}});
  EXPECT_EQ(c.at("i1").category, SceneCategory::excluded(ExclusionReason::NoConsensus));
}

TEST(ConsensusTest, MismatchedImageSetsAreInputErrors) {
  EXPECT_THROW(consensus({{{"i1", Category::A}}, {{"i2", Category::A}}}), InputError);
  EXPECT_THROW(consensus({}), ContractViolation);
}

TEST(ConsensusTest, MergeRecordsDisagreements) {
  const Dataset d(tiny_vocabulary(), {img("c", {ann(kP1, kBike1, 1), ann(kP2, kBike2, 1)}),
                                      img("s", {ann(kP1, kBike1, 1)})});
  const auto rule = categorize_dataset(d, 0.7, 1);
  ASSERT_EQ(rule[0].category, SceneCategory(Category::C));
  std::vector<Disagreement> dis;
  const auto merged = merge_with_consensus(rule, consensus({{{"c", Category::D}, {"s", Category::SPSO}}}), &dis);
  EXPECT_EQ(merged[0].category, SceneCategory(Category::D));
  EXPECT_EQ(merged[0].person_count, 2u);
  EXPECT_EQ(merged[1].category, SceneCategory(Category::SPSO));
  ASSERT_EQ(dis.size(), 1u);
  EXPECT_EQ(dis[0].image_id, "c");
  EXPECT_EQ(dis[0].rule_based, SceneCategory(Category::C));

  // A single-person label on a two-person image drops the inconsistent counts.
  const auto odd = merge_with_consensus(rule, consensus({{{"c", Category::SPSO}, {"s", Category::SPSO}}}), nullptr);
  EXPECT_EQ(odd[0].person_count, 0u);

  EXPECT_THROW(merge_with_consensus(rule, consensus({{{"zz", Category::A}}}), nullptr), InputError);
}

TEST(StatisticsTest, CountsImagesAndHois) {
  const Dataset d(tiny_vocabulary(),
                  {img("a", {ann(kP1, kBike1, 1), ann(kP1, kBike1, 2)}), img("b", {ann(kP1, kBike1, 1)}),
                   img("c", {ann(kP1, kHorse, 4), ann(kP2, kHorse, 5)}), img("d", {ann(kP1, kBike1, 3)})});
  const CategoryStatistics s = category_statistics(categorize_dataset(d, 0.7, 2));
  EXPECT_EQ(s.per_category.at(Category::SPSO), (CategoryCount{2, 3}));
  EXPECT_EQ(s.per_category.at(Category::B), (CategoryCount{1, 2}));
  EXPECT_EQ(s.per_category.at(Category::Excluded), (CategoryCount{1, 0}));
  EXPECT_EQ(s.per_category.at(Category::F), (CategoryCount{0, 0}));
  EXPECT_EQ(s.single_person, (CategoryCount{2, 3}));
  EXPECT_EQ(s.multi_person, (CategoryCount{1, 2}));
  EXPECT_EQ(s.total, (CategoryCount{4, 5}));
}

}  // namespace
}  // namespace hoidiag
