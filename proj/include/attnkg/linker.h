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

#ifndef ATTNKG_LINKER_H_
#define ATTNKG_LINKER_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "attnkg/corpus.h"
#include "attnkg/matcher.h"

namespace attnkg {

// Case-folded, whitespace-collapsed, one leading determiner (a/an/the)
// removed.
std::string NormalizeMention(std::string_view surface);

bool IsBarePronoun(std::string_view normalized_mention);

struct EntityCandidate {
  std::string entity_id;
  float prior = 0.0f;

  bool operator==(const EntityCandidate &) const = default;
};

// Normalized mention -> candidate entities, priors descending.
class MentionDictionary {
 public:
  // Adds a candidate; duplicates of an entity keep the larger prior. Throws
  // Error for non-positive priors.
  void Add(std::string_view mention, const std::string &entity_id, float prior);

  // TSV: mention \t entity_id \t prior.
  static MentionDictionary Load(const std::string &path);

  // Candidates for an already normalized mention; empty if unknown.
  std::span<const EntityCandidate> Lookup(const std::string &normalized) const;

  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<EntityCandidate>> entries_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class WordVectors {
 public:
  explicit WordVectors(int dim = 0) : dim_(dim) {}

  // Throws DimensionMismatchError when the vector size differs from dim().
  // The first vector added fixes the dimension of an empty table. Keys are
  // case-folded; the first vector of a folded key wins.
  void Add(std::string_view token, std::vector<float> vec);

  // Text format: token v1 ... vd per line.
  static WordVectors Load(const std::string &path);

  const std::vector<float> *Find(std::string_view token) const;
  int dim() const { return dim_; }
  size_t size() const { return table_.size(); }

  // Mean of the in-vocabulary tokens; nullopt when none are known.
  std::optional<std::vector<float>> MeanVector(
      std::span<const std::string> tokens) const;

 private:
  int dim_;
  std::unordered_map<std::string, std::vector<float>> table_;
};

// entity_id -> label.
class EntityLabels {
 public:
  void Add(const std::string &entity_id, const std::string &label);
  static EntityLabels Load(const std::string &path);
  // Whitespace-split label tokens; empty when the entity has no label.
  std::vector<std::string> LabelTokens(const std::string &entity_id) const;

 private:
  std::unordered_map<std::string, std::string> labels_;
};

struct EntityLink {
  std::string entity_id;
  float prior = 0.0f;
  float context_sim = 0.0f;
  float score = 0.0f;  // prior * max(0, context_sim)

  bool operator==(const EntityLink &) const = default;
};

// Cosine between the mean context vector and the mean label vector; 0 when
// either side has no in-vocabulary token.
float ContextSimilarity(std::span<const std::string> context,
                        std::span<const std::string> label,
                        const WordVectors &vectors);

struct LinkerResources {
  const MentionDictionary *dictionary = nullptr;
  const WordVectors *vectors = nullptr;
  const EntityLabels *labels = nullptr;
  float link_threshold = 0.25f;
};

// Links a chunk given its sentence token texts. The chunk's own tokens are
// excluded from the context.
std::optional<EntityLink> LinkMention(const NounChunk &chunk,
                                      std::span<const std::string> sentence,
                                      const LinkerResources &res);

std::optional<EntityLink> LinkMention(const NounChunk &chunk,
                                      const SentenceRecord &record,
                                      const LinkerResources &res);

// A candidate fact carried through linking and relation mapping.
struct LinkedFact {
  CandidateFact fact;
  std::string relation_normalized;
  std::optional<EntityLink> head_link;
  std::optional<EntityLink> tail_link;
  std::optional<std::string> relation_kg;

  bool operator==(const LinkedFact &) const = default;
};

// Normalizes the relation and links head and tail.
LinkedFact LinkFact(const CandidateFact &fact, const LinkerResources &res);

}  // namespace attnkg

#endif  // ATTNKG_LINKER_H_
