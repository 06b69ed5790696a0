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

#ifndef ATTNKG_MATCHER_H_
#define ATTNKG_MATCHER_H_

#include <optional>
#include <string>
#include <vector>

#include "attnkg/corpus.h"

namespace attnkg {

enum class Direction { kForward, kBackward };

std::string_view DirectionName(Direction d);
std::optional<Direction> ParseDirection(std::string_view name);

struct MatchConfig {
  int beam_size = 6;
  // Maximum number of relation tokens, i.e. the search-tree depth bound.
  int max_relation_len = 8;
  bool normalize_by_length = true;
  // Drop pairs whose near edges are further apart than this many tokens.
  std::optional<int> max_pair_token_gap;
  // Applied when a record carries per-head attention.
  HeadReduction head_reduction = HeadReduction::kMean;

  // Throws Error when a field is out of range.
  void Validate() const;
};

struct ChunkPair {
  NounChunk head;
  NounChunk tail;
  Direction direction;
};

// A head-to-tail path found by the search, with everything downstream stages
// need materialized so they can run without the source record.
struct CandidateFact {
  std::string doc_id;
  int64_t sent_id = 0;
  NounChunk head;
  NounChunk tail;
  Direction direction = Direction::kForward;
  // In search order: increasing for Forward, decreasing for Backward.
  std::vector<int> relation_positions;
  // Relation tokens in sentence order.
  std::vector<TokenAnnotation> relation_tokens;
  // Every token text of the source sentence, used as linking context.
  std::vector<std::string> sentence_tokens;
  float raw_degree = 0.0f;
  float normalized_degree = 0.0f;

  const std::string &head_surface() const { return head.surface; }
  const std::string &tail_surface() const { return tail.surface; }
  // Relation token texts joined by single spaces, in sentence order.
  std::string relation_surface() const;

  bool operator==(const CandidateFact &) const = default;
};

// The search start and the tail edge it must land on.
struct SearchEndpoints {
  int query = 0;
  int tail_edge = 0;
};

SearchEndpoints EndpointsFor(const NounChunk &head, const NounChunk &tail,
                             Direction direction);

std::vector<ChunkPair> EnumeratePairs(const SentenceRecord &record,
                                      const MatchConfig &cfg);

struct BeamSearchResult {
  // Sorted by normalized_degree descending; empty means no fact for the pair.
  std::vector<CandidateFact> facts;
  // Number of successor candidates scored (yield and stop steps).
  size_t yield_evaluations = 0;
  size_t rounds = 0;
};

// Runs the breadth-first beam search from head to tail. attention must be
// reduced.
BeamSearchResult BeamSearch(const ChunkPair &pair, const SentenceRecord &record,
                            const AttentionTensor &attention,
                            const MatchConfig &cfg);

// All pairs of the sentence, searched in pair order; facts keep their rank
// order within a pair.
std::vector<CandidateFact> MatchSentence(const SentenceRecord &record,
                                         const MatchConfig &cfg);

// Re-sums attention along start, relation positions and tail edge.
float ReplayDegree(const CandidateFact &fact, const AttentionTensor &attention);

}  // namespace attnkg

#endif  // ATTNKG_MATCHER_H_
