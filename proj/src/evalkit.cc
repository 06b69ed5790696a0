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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

namespace attnkg {

nlohmann::json ScoreReport::ToJson() const {
  return {{"precision", precision},
          {"recall", recall},
          {"f1", f1},
          {"num_predictions", num_predictions},
          {"num_correct", num_correct},
          {"num_oracle_slots_filled", num_oracle_slots_filled},
          {"num_oracle_slots", num_oracle_slots}};
}

ScoreReport ScoreSlotFilling(const std::vector<OpenFact> &predictions,
                             const OracleKG &oracle,
                             const ScoreOptions &options) {
  std::set<std::tuple<std::string, std::string, std::string>> unique;
  for (const OpenFact &f : predictions) {
    if (f.category != FactCategory::kMapped) continue;
    unique.emplace(*f.head_entity, *f.relation_kg, *f.tail_entity);
  }
  ScoreReport r;
  r.num_oracle_slots = static_cast<int64_t>(oracle.slots().size());
  std::set<std::pair<std::string, std::string>> filled;
  for (const auto &[head, rel, tail] : unique) {
    const std::set<std::string> *gold = oracle.Slot(head, rel);
    if (gold == nullptr) {
      if (options.strict_precision) ++r.num_predictions;
      continue;
    }
    ++r.num_predictions;
    if (gold->count(tail)) {
      ++r.num_correct;
      filled.emplace(head, rel);
    }
  }
  r.num_oracle_slots_filled = static_cast<int64_t>(filled.size());
  if (r.num_predictions > 0) {
    r.precision = static_cast<double>(r.num_correct) / r.num_predictions;
  }
  if (r.num_oracle_slots > 0) {
    r.recall = static_cast<double>(r.num_oracle_slots_filled) /
               r.num_oracle_slots;
  }
  if (r.precision + r.recall > 0) {
    r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

std::vector<ReviewRow> SampleForReview(const std::vector<OpenFact> &facts,
                                       size_t n, uint64_t seed) {
  std::vector<size_t> idx(facts.size());
  std::iota(idx.begin(), idx.end(), 0);
  n = std::min(n, idx.size());
  // Partial Fisher-Yates with an explicit modulo draw so the sample does not
  // depend on the standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < n; ++i) {
    size_t span = idx.size() - i;
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(idx[i], idx[i + draw % span]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return std::tie(facts[a].doc_id, facts[a].sent_id, a) <
           std::tie(facts[b].doc_id, facts[b].sent_id, b);
  });
  std::vector<ReviewRow> rows;
  rows.reserve(n);
  for (size_t i : idx) {
    const OpenFact &f = facts[i];
    rows.push_back({f.doc_id, f.sent_id, f.head_entity.value_or(f.head_surface),
                    f.relation_kg.value_or(f.relation_surface),
                    f.tail_entity.value_or(f.tail_surface), f.category});
  }
  return rows;
}

void WriteReviewSheet(const std::vector<ReviewRow> &rows, std::ostream &out) {
  out << "doc_id\tsent_id\thead\trelation\ttail\tcategory\tverdict\n";
  for (const ReviewRow &r : rows) {
    out << r.doc_id << '\t' << r.sent_id << '\t' << r.head << '\t'
        << r.relation << '\t' << r.tail << '\t' << CategoryName(r.category)
        << "\t\n";
  }
  if (!out) throw Error("failed writing review sheet");
}

}  // namespace attnkg
