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

#ifndef ATTNKG_EVALKIT_H_
#define ATTNKG_EVALKIT_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "attnkg/kg.h"
#include "attnkg/relmap.h"
#include "json.hpp"

namespace attnkg {

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t num_predictions = 0;
  int64_t num_correct = 0;
  int64_t num_oracle_slots_filled = 0;
  int64_t num_oracle_slots = 0;

  nlohmann::json ToJson() const;
};

struct ScoreOptions {
  // Count predictions on slots the oracle does not define as wrong instead of
  // ignoring them.
  bool strict_precision = false;
};

// Slot-filling precision, recall and F1 of mapped facts against the oracle.
// Non-mapped facts in the input are ignored; identical predictions count
// once.
ScoreReport ScoreSlotFilling(const std::vector<OpenFact> &predictions,
                             const OracleKG &oracle,
                             const ScoreOptions &options = {});

struct ReviewRow {
  std::string doc_id;
  int64_t sent_id = 0;
  std::string head;
  std::string relation;
  std::string tail;
  FactCategory category;
};

// Seeded uniform sample of n facts without replacement, grouped by doc_id.
// n at or above the population returns every fact once.
std::vector<ReviewRow> SampleForReview(const std::vector<OpenFact> &facts,
                                       size_t n, uint64_t seed);

// Header plus one row per fact, with an empty verdict column.
void WriteReviewSheet(const std::vector<ReviewRow> &rows, std::ostream &out);

}  // namespace attnkg

#endif  // ATTNKG_EVALKIT_H_
