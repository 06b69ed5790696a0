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

#ifndef ATTNKG_FILTERS_H_
#define ATTNKG_FILTERS_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "attnkg/matcher.h"

namespace attnkg {

// Maps relation tokens to the phrase key used for corpus statistics.
using PhraseNormalizer =
    std::function<std::optional<std::string>(const std::vector<TokenAnnotation> &)>;

// Distinct (head surface, tail surface) pairs per normalized relation phrase.
// Merging is a set union, so it is commutative, associative and idempotent.
class RelationStats {
 public:
  void Add(const std::string &phrase, const std::string &head,
           const std::string &tail);
  void Merge(const RelationStats &other);

  size_t DistinctPairs(const std::string &phrase) const;
  std::map<std::string, size_t> Counts() const;
  bool empty() const { return pairs_.empty(); }

  bool operator==(const RelationStats &) const = default;

  // TSV: phrase \t distinct_pair_count. Loaded stats answer DistinctPairs
  // but cannot be merged with pair-level stats.
  void SaveTsv(const std::string &path) const;
  static RelationStats LoadTsv(const std::string &path);

 private:
  std::map<std::string, std::set<std::pair<std::string, std::string>>> pairs_;
  std::map<std::string, size_t> loaded_counts_;
};

struct FilterConfig {
  float degree_threshold = 0.005f;
  size_t min_distinct_pairs = 10;
  bool require_contiguous = true;

  void Validate() const;
};

enum class RejectReason { kConstraint1, kConstraint2, kConstraint3 };

std::string_view RejectReasonName(RejectReason r);

struct RejectedFact {
  CandidateFact fact;
  RejectReason reason;
};

struct FilterResult {
  std::vector<CandidateFact> kept;
  std::vector<RejectedFact> rejected;
};

// True iff the relation positions, sorted, are consecutive integers.
bool CheckContiguous(const CandidateFact &fact);

RelationStats CollectStats(const std::vector<CandidateFact> &facts,
                           const PhraseNormalizer &normalizer);

// Keeps facts passing the degree threshold, the distinct-pair count of their
// normalized phrase and, if required, contiguity. Rejections carry the first
// failing constraint.
FilterResult ApplyFilters(const std::vector<CandidateFact> &facts,
                          const RelationStats &stats,
                          const PhraseNormalizer &normalizer,
                          const FilterConfig &cfg);

}  // namespace attnkg

#endif  // ATTNKG_FILTERS_H_
