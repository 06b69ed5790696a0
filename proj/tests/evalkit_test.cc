// Copyright 2026 The attnkg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "attnkg/evalkit.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "testing/fixtures.h"
#include "testing/synthetic.h"

namespace attnkg {
namespace {

using testing::FourSlotOracle;
using testing::MappedFact;
using testing::TwoOfThreePredictions;

TEST(ScoreSlotFillingTest, TwoOfThree) {
  ScoreReport r = ScoreSlotFilling(TwoOfThreePredictions(), FourSlotOracle());
  EXPECT_NEAR(r.precision, 0.6667, 1e-4);
  EXPECT_NEAR(r.recall, 0.5, 1e-4);
  EXPECT_NEAR(r.f1, 0.5714, 1e-4);
  EXPECT_EQ(r.num_predictions, 3);
  EXPECT_EQ(r.num_correct, 2);
  EXPECT_EQ(r.num_oracle_slots_filled, 2);
  EXPECT_EQ(r.num_oracle_slots, 4);
}

TEST(ScoreSlotFillingTest, Identity) {
  const OracleKG oracle = FourSlotOracle();
  std::vector<OpenFact> preds;
  for (const auto &[h, r, t] : oracle.facts()) {
    preds.push_back(MappedFact(h, r, t));
  }
  ScoreReport s = ScoreSlotFilling(preds, oracle);
  EXPECT_EQ(s.precision, 1.0);
  EXPECT_EQ(s.recall, 1.0);
  EXPECT_EQ(s.f1, 1.0);
}

TEST(ScoreSlotFillingTest, ZeroPredictions) {
  ScoreReport s = ScoreSlotFilling({}, FourSlotOracle());
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  EXPECT_EQ(ScoreSlotFilling({}, OracleKG{}).f1, 0.0);
}

TEST(ScoreSlotFillingTest, OffSlotPredictions) {
  std::vector<OpenFact> preds = TwoOfThreePredictions();
  preds.push_back(MappedFact("S9", "R", "G9"));
  preds.push_back(MappedFact("S1", "other", "G1"));
  ScoreReport lenient = ScoreSlotFilling(preds, FourSlotOracle());
  EXPECT_EQ(lenient.num_predictions, 3);
  ScoreReport strict = ScoreSlotFilling(preds, FourSlotOracle(), {true});
  EXPECT_EQ(strict.num_predictions, 5);
  EXPECT_NEAR(strict.precision, 0.4, 1e-9);
  EXPECT_EQ(strict.recall, lenient.recall);
}

TEST(ScoreSlotFillingTest, IgnoresUnmappedFacts) {
  std::vector<OpenFact> preds = TwoOfThreePredictions();
  OpenFact partial = MappedFact("S4", "R", "G4");
  partial.relation_kg.reset();
  partial.category = FactCategory::kPartiallyUnmapped;
  preds.push_back(partial);
  EXPECT_EQ(ScoreSlotFilling(preds, FourSlotOracle()).num_predictions, 3);
}

TEST(ScoreSlotFillingPropertyTest, OrderDuplicatesAndBounds) {
  std::mt19937_64 rng(23);
  OracleKG oracle;
  for (int i = 0; i < 20; ++i) {
    oracle.Add("H" + std::to_string(i), "R" + std::to_string(i % 3),
               "T" + std::to_string(i));
  }
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<OpenFact> preds;
    const int n = testing::UniformInt(rng, 0, 30);
    for (int i = 0; i < n; ++i) {
      const int h = testing::UniformInt(rng, 0, 24);
      preds.push_back(MappedFact("H" + std::to_string(h),
                                 "R" + std::to_string(rng() % 3),
                                 "T" + std::to_string(rng() % 2 ? h : h + 1)));
    }
    ScoreReport base = ScoreSlotFilling(preds, oracle);
    EXPECT_GE(base.precision, 0.0);
    EXPECT_LE(base.precision, 1.0);
    EXPECT_GE(base.recall, 0.0);
    EXPECT_LE(base.recall, 1.0);
    EXPECT_LE(base.num_correct, base.num_predictions);
    if (base.precision + base.recall > 0) {
      EXPECT_NEAR(base.f1, 2 * base.precision * base.recall /
                               (base.precision + base.recall), 1e-12);
    }

    std::vector<OpenFact> noisy = preds;
    for (int i = 0; i < n / 2; ++i) noisy.push_back(preds[rng() % n]);
    std::shuffle(noisy.begin(), noisy.end(), rng);
    ScoreReport again = ScoreSlotFilling(noisy, oracle);
    EXPECT_EQ(again.precision, base.precision);
    EXPECT_EQ(again.recall, base.recall);
    EXPECT_EQ(again.f1, base.f1);

    std::vector<OpenFact> plus_correct = preds;
    const int k = testing::UniformInt(rng, 0, 19);
    plus_correct.push_back(MappedFact("H" + std::to_string(k),
                                      "R" + std::to_string(k % 3),
                                      "T" + std::to_string(k)));
    EXPECT_GE(ScoreSlotFilling(plus_correct, oracle).recall, base.recall);

    std::vector<OpenFact> plus_wrong = preds;
    plus_wrong.push_back(MappedFact("H" + std::to_string(k),
                                    "R" + std::to_string(k % 3), "nope"));
    EXPECT_LE(ScoreSlotFilling(plus_wrong, oracle).precision, base.precision);
  }
}

std::vector<OpenFact> Population(int n) {
  std::vector<OpenFact> out;
  for (int i = 0; i < n; ++i) {
    OpenFact f = MappedFact("H" + std::to_string(i), "R", "T");
    f.doc_id = "doc" + std::to_string(i % 5);
    f.sent_id = i;
    out.push_back(f);
  }
  return out;
}

TEST(SampleForReviewTest, Examples) {
  std::vector<OpenFact> pop = Population(40);
  EXPECT_TRUE(SampleForReview(pop, 0, 1).empty());

  auto a = SampleForReview(pop, 10, 7);
  auto b = SampleForReview(pop, 10, 7);
  ASSERT_EQ(a.size(), 10u);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].head, b[i].head);
  for (size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].doc_id, a[i].doc_id);

  auto all = SampleForReview(pop, 100, 7);
  ASSERT_EQ(all.size(), pop.size());
  std::set<std::string> heads;
  for (const ReviewRow &r : all) heads.insert(r.head);
  EXPECT_EQ(heads.size(), pop.size());
}

TEST(SampleForReviewTest, SeedsDiffer) {
  std::vector<OpenFact> pop = Population(200);
  auto a = SampleForReview(pop, 10, 1);
  auto b = SampleForReview(pop, 10, 2);
  bool same = true;
  for (size_t i = 0; i < a.size(); ++i) same = same && a[i].head == b[i].head;
  EXPECT_FALSE(same);
}

TEST(SampleForReviewTest, SheetLayout) {
  std::ostringstream out;
  WriteReviewSheet(SampleForReview(Population(3), 3, 0), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "doc_id\tsent_id\thead\trelation\ttail\tcategory\tverdict");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(Split(line, '\t').size(), 7u);
    EXPECT_EQ(line.back(), '\t');
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace attnkg
