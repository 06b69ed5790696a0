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

#include "attnkg/filters.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "attnkg/relmap.h"
#include "testing/synthetic.h"

namespace attnkg {
namespace {

const PhraseNormalizer kNormalize = NormalizePhrase;

CandidateFact Fact(std::vector<int> positions, float degree = 0.5f,
                   const std::string &lemma = "sign",
                   const std::string &head = "A",
                   const std::string &tail = "B") {
  CandidateFact f;
  f.doc_id = "d";
  f.head.surface = head;
  f.tail.surface = tail;
  f.relation_positions = std::move(positions);
  for (size_t i = 0; i < f.relation_positions.size(); ++i) {
    f.relation_tokens.push_back({lemma, lemma, "VERB", 0, 1});
  }
  f.normalized_degree = degree;
  return f;
}

RelationStats StatsWithPairs(const std::string &phrase, int n) {
  RelationStats s;
  for (int i = 0; i < n; ++i) s.Add(phrase, "h" + std::to_string(i), "t");
  return s;
}

TEST(CheckContiguousTest, Examples) {
  EXPECT_TRUE(CheckContiguous(Fact({1, 2, 3})));
  EXPECT_FALSE(CheckContiguous(Fact({1, 3})));
  EXPECT_TRUE(CheckContiguous(Fact({2})));
  EXPECT_TRUE(CheckContiguous(Fact({5, 4, 3})));  // backward search order
}

TEST(CollectStatsTest, SetSemantics) {
  std::vector<CandidateFact> facts = {Fact({1}, 0.5f, "sign", "A", "B"),
                                      Fact({1}, 0.5f, "sign", "A", "B"),
                                      Fact({1}, 0.5f, "sign", "C", "D")};
  RelationStats s = CollectStats(facts, kNormalize);
  EXPECT_EQ(s.DistinctPairs("sign"), 2u);
  EXPECT_EQ(s.DistinctPairs("unknown"), 0u);
}

TEST(CollectStatsTest, EmptyStream) {
  EXPECT_TRUE(CollectStats({}, kNormalize).empty());
}

TEST(CollectStatsTest, MergeMatchesSinglePass) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CandidateFact> facts =
        testing::RandomCandidateFacts(rng(), 200);
    const int parts = testing::UniformInt(rng, 1, 7);
    std::vector<std::vector<CandidateFact>> split(parts);
    for (size_t i = 0; i < facts.size(); ++i) {
      split[rng() % parts].push_back(facts[i]);
    }
    RelationStats merged;
    for (const auto &p : split) merged.Merge(CollectStats(p, kNormalize));
    EXPECT_EQ(merged, CollectStats(facts, kNormalize));
  }
}

TEST(RelationStatsTest, MergeIsCommutativeAssociativeIdempotent) {
  auto a = CollectStats(testing::RandomCandidateFacts(1, 80), kNormalize);
  auto b = CollectStats(testing::RandomCandidateFacts(2, 80), kNormalize);
  auto c = CollectStats(testing::RandomCandidateFacts(3, 80), kNormalize);
  RelationStats ab = a, ba = b;
  ab.Merge(b);
  ba.Merge(a);
  EXPECT_EQ(ab, ba);
  RelationStats ab_c = ab, a_bc = a, bc = b;
  ab_c.Merge(c);
  bc.Merge(c);
  a_bc.Merge(bc);
  EXPECT_EQ(ab_c, a_bc);
  RelationStats aa = a;
  aa.Merge(a);
  EXPECT_EQ(aa, a);
  for (const auto &[phrase, n] : a.Counts()) {
    EXPECT_GE(ab.DistinctPairs(phrase), n);
  }
}

TEST(RelationStatsTest, TsvRoundTrip) {
  auto s = CollectStats(testing::RandomCandidateFacts(9, 100), kNormalize);
  auto path = std::filesystem::temp_directory_path() / "attnkg_stats.tsv";
  s.SaveTsv(path.string());
  RelationStats loaded = RelationStats::LoadTsv(path.string());
  EXPECT_EQ(loaded.Counts(), s.Counts());
  EXPECT_THROW(loaded.Merge(s), Error);
  std::filesystem::remove(path);
}

TEST(ApplyFiltersTest, DefaultsMatchReportedSettings) {
  FilterConfig cfg;
  EXPECT_EQ(cfg.degree_threshold, 0.005f);
  EXPECT_EQ(cfg.min_distinct_pairs, 10u);
  EXPECT_TRUE(cfg.require_contiguous);
}

TEST(ApplyFiltersTest, ConstraintExamples) {
  RelationStats stats = StatsWithPairs("sign", 12);
  stats.Merge(StatsWithPairs("join", 9));
  FilterConfig cfg;

  FilterResult low = ApplyFilters({Fact({1}, 0.004f)}, stats, kNormalize, cfg);
  ASSERT_EQ(low.rejected.size(), 1u);
  EXPECT_EQ(low.rejected[0].reason, RejectReason::kConstraint1);
  EXPECT_EQ(RejectReasonName(low.rejected[0].reason), "constraint1");

  FilterResult rare =
      ApplyFilters({Fact({1}, 0.5f, "join")}, stats, kNormalize, cfg);
  ASSERT_EQ(rare.rejected.size(), 1u);
  EXPECT_EQ(rare.rejected[0].reason, RejectReason::kConstraint2);

  FilterResult gap =
      ApplyFilters({Fact({1, 3}, 0.5f)}, StatsWithPairs("sign sign", 12),
                   kNormalize, cfg);
  ASSERT_EQ(gap.rejected.size(), 1u);
  EXPECT_EQ(gap.rejected[0].reason, RejectReason::kConstraint3);

  FilterResult ok = ApplyFilters({Fact({1}, 0.01f)}, stats, kNormalize, cfg);
  EXPECT_EQ(ok.kept.size(), 1u);
  EXPECT_TRUE(ok.rejected.empty());
}

TEST(ApplyFiltersTest, FirstFailingConstraintWins) {
  FilterResult r = ApplyFilters({Fact({1, 3}, 0.001f, "join")}, RelationStats{},
                                kNormalize, FilterConfig{});
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].reason, RejectReason::kConstraint1);
}

TEST(ApplyFiltersTest, ContiguityCanBeDisabled) {
  FilterConfig cfg;
  cfg.require_contiguous = false;
  FilterResult r = ApplyFilters({Fact({1, 3}, 0.5f)},
                                StatsWithPairs("sign sign", 12), kNormalize, cfg);
  EXPECT_EQ(r.kept.size(), 1u);
}

TEST(ApplyFiltersPropertyTest, IdempotentPartitionedAndMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<CandidateFact> facts = testing::RandomCandidateFacts(rng(), 300);
    RelationStats stats = CollectStats(facts, kNormalize);
    FilterConfig cfg;
    cfg.degree_threshold = testing::UnitFloat(rng) * 0.05f;
    cfg.min_distinct_pairs = testing::UniformInt(rng, 1, 40);
    FilterResult r = ApplyFilters(facts, stats, kNormalize, cfg);
    EXPECT_EQ(r.kept.size() + r.rejected.size(), facts.size());
    EXPECT_EQ(ApplyFilters(r.kept, stats, kNormalize, cfg).kept, r.kept);

    // Kept and rejected interleave back into the input order.
    size_t ki = 0, ri = 0;
    for (const CandidateFact &f : facts) {
      if (ki < r.kept.size() && r.kept[ki] == f) {
        ++ki;
      } else {
        ASSERT_LT(ri, r.rejected.size());
        EXPECT_EQ(r.rejected[ri].fact, f);
        ++ri;
      }
    }

    FilterConfig stricter = cfg;
    stricter.degree_threshold += 0.01f;
    stricter.min_distinct_pairs += 5;
    FilterResult s = ApplyFilters(facts, stats, kNormalize, stricter);
    for (const CandidateFact &f : s.kept) {
      EXPECT_NE(std::find(r.kept.begin(), r.kept.end(), f), r.kept.end());
    }
  }
}

}  // namespace
}  // namespace attnkg
