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

#include "attnkg/matcher.h"

#include <algorithm>

namespace attnkg {

namespace {

struct BeamEntry {
  int query_pos = 0;
  std::vector<int> positions;
  float degree = 0.0f;
  bool complete = false;
};

// Higher degree first, then the smaller newest position, then the shorter
// relation; positions break any remaining tie so the order is total.
bool BeamBefore(const BeamEntry &a, const BeamEntry &b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  if (a.query_pos != b.query_pos) return a.query_pos < b.query_pos;
  if (a.positions.size() != b.positions.size()) {
    return a.positions.size() < b.positions.size();
  }
  if (a.positions != b.positions) return a.positions < b.positions;
  return a.complete && !b.complete;
}

}  // namespace

std::string_view DirectionName(Direction d) {
  return d == Direction::kForward ? "forward" : "backward";
}

std::optional<Direction> ParseDirection(std::string_view name) {
  if (name == "forward") return Direction::kForward;
  if (name == "backward") return Direction::kBackward;
  return std::nullopt;
}

void MatchConfig::Validate() const {
  if (beam_size < 1) throw Error("beam size must be >= 1");
  if (max_relation_len < 1) throw Error("max relation length must be >= 1");
  if (max_pair_token_gap && *max_pair_token_gap < 1) {
    throw Error("max pair token gap must be >= 1");
  }
  if (head_reduction == HeadReduction::kNone) {
    throw Error("head reduction must be mean or max");
  }
}

std::string CandidateFact::relation_surface() const {
  std::vector<std::string> words;
  words.reserve(relation_tokens.size());
  for (const TokenAnnotation &t : relation_tokens) words.push_back(t.text);
  return Join(words, " ");
}

SearchEndpoints EndpointsFor(const NounChunk &head, const NounChunk &tail,
                             Direction direction) {
  if (direction == Direction::kForward) {
    return {head.last_token, tail.first_token};
  }
  return {head.first_token, tail.last_token};
}

std::vector<ChunkPair> EnumeratePairs(const SentenceRecord &record,
                                      const MatchConfig &cfg) {
  std::vector<ChunkPair> pairs;
  const auto &chunks = record.chunks;
  for (size_t i = 0; i < chunks.size(); ++i) {
    for (size_t j = 0; j < chunks.size(); ++j) {
      if (i == j) continue;
      const NounChunk &head = chunks[i];
      const NounChunk &tail = chunks[j];
      Direction dir = head.first_token < tail.first_token ? Direction::kForward
                                                           : Direction::kBackward;
      SearchEndpoints ends = EndpointsFor(head, tail, dir);
      int gap = std::abs(ends.tail_edge - ends.query);
      if (cfg.max_pair_token_gap && gap > *cfg.max_pair_token_gap) continue;
      pairs.push_back({head, tail, dir});
    }
  }
  // Chunks are sorted, so (i, j) order already equals
  // (head.first_token, tail.first_token) order.
  return pairs;
}

BeamSearchResult BeamSearch(const ChunkPair &pair, const SentenceRecord &record,
                            const AttentionTensor &attention,
                            const MatchConfig &cfg) {
  if (attention.layout != AttentionLayout::kReduced) {
    throw Error("beam search needs reduced attention");
  }
  if (pair.head == pair.tail) throw Error("head and tail must differ");
  const SearchEndpoints ends = EndpointsFor(pair.head, pair.tail, pair.direction);
  const int step = pair.direction == Direction::kForward ? 1 : -1;
  const size_t k = static_cast<size_t>(cfg.beam_size);
  const size_t max_len = static_cast<size_t>(cfg.max_relation_len);

  BeamSearchResult result;
  std::vector<BeamEntry> beam{BeamEntry{ends.query, {}, 0.0f, false}};
  auto growing = [](const std::vector<BeamEntry> &b) {
    return std::any_of(b.begin(), b.end(),
                       [](const BeamEntry &e) { return !e.complete; });
  };

  while (growing(beam)) {
    ++result.rounds;
    std::vector<BeamEntry> next;
    for (BeamEntry &cand : beam) {
      if (cand.complete) {
        next.push_back(std::move(cand));
        continue;
      }
      for (int p = cand.query_pos + step;; p += step) {
        const bool at_tail = p == ends.tail_edge;
        if (at_tail ? cand.positions.empty()
                    : cand.positions.size() >= max_len) {
          if (at_tail) break;
          continue;
        }
        ++result.yield_evaluations;
        BeamEntry succ;
        succ.query_pos = p;
        succ.positions = cand.positions;
        succ.degree = cand.degree + attention.at(p, cand.query_pos);
        succ.complete = at_tail;
        if (!at_tail) succ.positions.push_back(p);
        next.push_back(std::move(succ));
        if (at_tail) break;
      }
    }
    std::sort(next.begin(), next.end(), BeamBefore);
    if (next.size() > k) next.resize(k);
    beam = std::move(next);
  }

  std::vector<BeamEntry> done;
  for (BeamEntry &e : beam) {
    if (e.complete && !e.positions.empty()) done.push_back(std::move(e));
  }
  auto normalized = [&](const BeamEntry &e) {
    return cfg.normalize_by_length
               ? e.degree / static_cast<float>(e.positions.size() + 1)
               : e.degree;
  };
  std::stable_sort(done.begin(), done.end(),
                   [&](const BeamEntry &a, const BeamEntry &b) {
                     float na = normalized(a), nb = normalized(b);
                     if (na != nb) return na > nb;
                     return BeamBefore(a, b);
                   });

  for (const BeamEntry &e : done) {
    CandidateFact fact;
    fact.doc_id = record.doc_id;
    fact.sent_id = record.sent_id;
    fact.head = pair.head;
    fact.tail = pair.tail;
    fact.direction = pair.direction;
    fact.relation_positions = e.positions;
    std::vector<int> sorted = e.positions;
    std::sort(sorted.begin(), sorted.end());
    for (int p : sorted) fact.relation_tokens.push_back(record.tokens[p]);
    fact.sentence_tokens.reserve(record.tokens.size());
    for (const TokenAnnotation &t : record.tokens) {
      fact.sentence_tokens.push_back(t.text);
    }
    fact.raw_degree = e.degree;
    fact.normalized_degree = normalized(e);
    result.facts.push_back(std::move(fact));
  }
  return result;
}

std::vector<CandidateFact> MatchSentence(const SentenceRecord &record,
                                         const MatchConfig &cfg) {
  std::vector<CandidateFact> out;
  if (record.chunks.size() < 2) return out;
  const AttentionTensor reduced =
      EnsureReduced(record.attention, cfg.head_reduction);
  for (const ChunkPair &pair : EnumeratePairs(record, cfg)) {
    BeamSearchResult r = BeamSearch(pair, record, reduced, cfg);
    for (CandidateFact &f : r.facts) out.push_back(std::move(f));
  }
  return out;
}

float ReplayDegree(const CandidateFact &fact,
                   const AttentionTensor &attention) {
  SearchEndpoints ends = EndpointsFor(fact.head, fact.tail, fact.direction);
  float degree = 0.0f;
  int prev = ends.query;
  for (int p : fact.relation_positions) {
    degree += attention.at(p, prev);
    prev = p;
  }
  degree += attention.at(ends.tail_edge, prev);
  return degree;
}

}  // namespace attnkg
