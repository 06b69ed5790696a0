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

#include <algorithm>
#include <fstream>

namespace attnkg {

void RelationStats::Add(const std::string &phrase, const std::string &head,
                        const std::string &tail) {
  pairs_[phrase].emplace(head, tail);
}

void RelationStats::Merge(const RelationStats &other) {
  if (!other.loaded_counts_.empty() || !loaded_counts_.empty()) {
    throw Error("stats loaded from TSV cannot be merged");
  }
  for (const auto &[phrase, pairs] : other.pairs_) {
    pairs_[phrase].insert(pairs.begin(), pairs.end());
  }
}

size_t RelationStats::DistinctPairs(const std::string &phrase) const {
  if (auto it = pairs_.find(phrase); it != pairs_.end()) {
    return it->second.size();
  }
  if (auto it = loaded_counts_.find(phrase); it != loaded_counts_.end()) {
    return it->second;
  }
  return 0;
}

std::map<std::string, size_t> RelationStats::Counts() const {
  std::map<std::string, size_t> out = loaded_counts_;
  for (const auto &[phrase, pairs] : pairs_) out[phrase] = pairs.size();
  return out;
}

void RelationStats::SaveTsv(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto &[phrase, count] : Counts()) {
    out << phrase << '\t' << count << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

RelationStats RelationStats::LoadTsv(const std::string &path) {
  RelationStats stats;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 2) {
      throw Error(path + ":" + std::to_string(line_no) +
                  ": expected phrase \\t count");
    }
    try {
      stats.loaded_counts_[f[0]] = std::stoull(f[1]);
    } catch (const std::logic_error &) {
      throw Error(path + ":" + std::to_string(line_no) + ": bad count");
    }
  }
  return stats;
}

void FilterConfig::Validate() const {
  if (!(degree_threshold >= 0.0f)) throw Error("degree threshold must be >= 0");
  if (min_distinct_pairs < 1) throw Error("min distinct pairs must be >= 1");
}

std::string_view RejectReasonName(RejectReason r) {
  switch (r) {
    case RejectReason::kConstraint1: return "constraint1";
    case RejectReason::kConstraint2: return "constraint2";
    case RejectReason::kConstraint3: return "constraint3";
  }
  return "constraint1";
}

bool CheckContiguous(const CandidateFact &fact) {
  std::vector<int> pos = fact.relation_positions;
  std::sort(pos.begin(), pos.end());
  for (size_t i = 1; i < pos.size(); ++i) {
    if (pos[i] != pos[i - 1] + 1) return false;
  }
  return true;
}

RelationStats CollectStats(const std::vector<CandidateFact> &facts,
                           const PhraseNormalizer &normalizer) {
  RelationStats stats;
  for (const CandidateFact &f : facts) {
    std::optional<std::string> phrase = normalizer(f.relation_tokens);
    if (!phrase) continue;
    stats.Add(*phrase, f.head_surface(), f.tail_surface());
  }
  return stats;
}

FilterResult ApplyFilters(const std::vector<CandidateFact> &facts,
                          const RelationStats &stats,
                          const PhraseNormalizer &normalizer,
                          const FilterConfig &cfg) {
  FilterResult result;
  for (const CandidateFact &f : facts) {
    std::optional<RejectReason> reason;
    if (!(f.normalized_degree >= cfg.degree_threshold)) {
      reason = RejectReason::kConstraint1;
    } else {
      std::optional<std::string> phrase = normalizer(f.relation_tokens);
      if (!phrase || stats.DistinctPairs(*phrase) < cfg.min_distinct_pairs) {
        reason = RejectReason::kConstraint2;
      } else if (cfg.require_contiguous && !CheckContiguous(f)) {
        reason = RejectReason::kConstraint3;
      }
    }
    if (reason) {
      result.rejected.push_back({f, *reason});
    } else {
      result.kept.push_back(f);
    }
  }
  return result;
}

}  // namespace attnkg
