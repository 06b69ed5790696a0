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

#ifndef ATTNKG_RELMAP_H_
#define ATTNKG_RELMAP_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "attnkg/corpus.h"

namespace attnkg {

struct LinkedFact;

// POS tags removed from relation phrases before lemma joining.
inline const std::set<std::string> &DroppedRelationPos() {
  static const std::set<std::string> kDropped = {"AUX", "ADJ", "ADV", "DET",
                                                 "PUNCT"};
  return kDropped;
}

// Lowercased lemmas of the kept relation tokens, space-joined. When every
// token is dropped the lemmas of all tokens are used instead, so copular
// relations ("is" -> "be") survive. nullopt only for an empty token list.
std::optional<std::string> NormalizePhrase(
    const std::vector<TokenAnnotation> &tokens);

// Oracle knowledge graph: a set of (head, relation, tail) triples with a
// slot index keyed by (head, relation).
class OracleKG {
 public:
  using Triple = std::tuple<std::string, std::string, std::string>;

  void Add(const std::string &head, const std::string &relation,
           const std::string &tail);

  // TSV: head \t relation \t tail. Throws Error on malformed lines.
  static OracleKG Load(const std::string &path);

  const std::set<Triple> &facts() const { return facts_; }
  size_t size() const { return facts_.size(); }

  // Relations linking head to tail, in sorted order.
  const std::set<std::string> &RelationsBetween(const std::string &head,
                                                const std::string &tail) const;
  // Gold tails of the (head, relation) slot, or nullptr if not a slot.
  const std::set<std::string> *Slot(const std::string &head,
                                    const std::string &relation) const;
  const std::map<std::pair<std::string, std::string>, std::set<std::string>> &
  slots() const {
    return slots_;
  }

 private:
  std::set<Triple> facts_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> slots_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> by_pair_;
};

enum class CooccurrenceMode {
  kPerFact,  // every linked fact counts once
  kPerPair,  // every distinct linked (head, tail) pair counts once
};

class RelationMap {
 public:
  using Key = std::pair<std::string, std::string>;  // (phrase, kg_relation)

  void Add(const std::string &phrase, const std::string &relation,
           int64_t count);
  void Merge(const RelationMap &other);

  int64_t Count(const std::string &phrase, const std::string &relation) const;
  const std::map<Key, int64_t> &counts() const { return counts_; }
  const std::set<Key> &curated() const { return curated_; }

  // Approves a pair for mapping. Pairs without counts are ignored and false
  // is returned.
  bool Approve(const std::string &phrase, const std::string &relation);

  // Phrases co-occurring with relation, by count descending then phrase.
  std::vector<std::string> RankPhrases(const std::string &relation,
                                       size_t n = 15) const;

  // Highest-count curated relation for the phrase, ties lexicographic.
  std::optional<std::string> MapRelation(const std::string &phrase) const;

  // Counts TSV: phrase \t relation \t count.
  void SaveCounts(const std::string &path) const;
  static RelationMap LoadCounts(const std::string &path);

  // Curation sheet: phrase \t relation \t count \t approved(0|1). Rows are the
  // top n phrases of every relation seen in the counts.
  void SaveCurationSheet(const std::string &path, size_t n = 15) const;
  // Applies the approved rows of a curation sheet. Returns the number of
  // approvals that matched counted pairs.
  size_t LoadCuration(const std::string &path);

 private:
  std::map<Key, int64_t> counts_;
  std::set<Key> curated_;
};

// Counts co-occurrences between linked candidate facts and oracle relations.
// Facts without both entity links are skipped.
RelationMap BuildRelationMap(const std::vector<LinkedFact> &facts,
                             const OracleKG &oracle,
                             CooccurrenceMode mode = CooccurrenceMode::kPerFact);

}  // namespace attnkg

#endif  // ATTNKG_RELMAP_H_
