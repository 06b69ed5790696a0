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

#ifndef ATTNKG_PIPELINE_H_
#define ATTNKG_PIPELINE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "attnkg/evalkit.h"
#include "attnkg/filters.h"
#include "attnkg/kg.h"
#include "attnkg/matcher.h"
#include "attnkg/relmap.h"
#include "json.hpp"

namespace attnkg {

struct PipelineConfig {
  MatchConfig match;
  FilterConfig filter;
  float link_threshold = 0.25f;
  CooccurrenceMode cooccurrence = CooccurrenceMode::kPerFact;
  bool strict_precision = false;
  size_t rank_top_n = 15;

  // One .senrec.jsonl file per partition.
  std::vector<std::string> record_paths;
  std::string dictionary_path;
  std::string vectors_path;
  std::string labels_path;
  std::string oracle_path;
  // Optional; without it no relation is mapped.
  std::string curation_path;

  int workers = 1;
  std::string out_dir;
  uint64_t seed = 0;

  // Range checks plus existence of every referenced input file.
  void Validate() const;
  // Every setting that can change an output. Worker count and output
  // directory are excluded.
  nlohmann::json ResultConfigJson() const;
};

// Raised when a pipeline stage fails; what() names the stage.
class StageError : public Error {
 public:
  StageError(const std::string &stage, const std::string &cause)
      : Error("stage " + stage + " failed: " + cause), stage_(stage) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

// Runs fn(i) for i in [0, n) on a fixed pool of workers. The first
// exception thrown by any task is rethrown after all workers stop.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn);

struct MatchSummary {
  std::vector<std::string> outputs;  // part-<k>.cand.jsonl, in input order
  size_t records = 0;
  size_t bad_records = 0;
  size_t facts = 0;
};

// Name of the candidate file written for partition k.
std::string PartitionOutputName(size_t k);

// Matches every partition independently into out_dir. Bad records are
// logged and counted; I/O failures throw.
MatchSummary RunMatch(const std::vector<std::string> &record_paths,
                      const MatchConfig &cfg, int workers,
                      const std::string &out_dir);

// Links facts in parallel while keeping their order.
std::vector<LinkedFact> LinkFacts(const std::vector<CandidateFact> &facts,
                                  const LinkerResources &res, int workers);

struct PipelineResult {
  OpenKG kg;
  ScoreReport score;
  nlohmann::json manifest;
};

// The stages recorded in the manifest, in execution order.
const std::vector<std::string> &PipelineStages();

// match -> stats -> filter -> link -> build-relmap -> map -> assemble ->
// export -> score, writing every intermediate file and manifest.json into
// out_dir.
PipelineResult RunPipeline(const PipelineConfig &cfg);

// SHA-256 of a file's bytes.
std::string FileSha256(const std::string &path);

}  // namespace attnkg

#endif  // ATTNKG_PIPELINE_H_
