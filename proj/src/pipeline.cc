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

#include "attnkg/pipeline.h"

#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "attnkg/codec.h"
#include "attnkg/fact_io.h"
#include "attnkg/linker.h"

namespace attnkg {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void RequireFile(const std::string &path, const std::string &what) {
  if (path.empty()) throw Error(what + " path is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(what + " file not found: " + path);
  }
}

std::string PathIn(const fs::path &dir, const std::string &name) {
  return (dir / name).string();
}

// Times one stage and wraps any failure in a StageError.
template <typename Fn>
void RunStage(const std::string &name, json &timings, Fn &&fn) {
  spdlog::info("stage {} started", name);
  auto start = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(name, e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  timings.push_back({{"name", name}, {"seconds", secs}});
  spdlog::info("stage {} finished in {:.3f}s", name, secs);
}

std::optional<std::string> DefaultNormalizer(
    const std::vector<TokenAnnotation> &tokens) {
  return NormalizePhrase(tokens);
}

}  // namespace

void PipelineConfig::Validate() const {
  match.Validate();
  filter.Validate();
  if (workers < 1) throw Error("worker count must be >= 1");
  if (out_dir.empty()) throw Error("output directory is required");
  if (record_paths.empty()) throw Error("at least one records file is required");
  for (const std::string &p : record_paths) RequireFile(p, "records");
  RequireFile(dictionary_path, "dictionary");
  RequireFile(vectors_path, "vectors");
  RequireFile(labels_path, "labels");
  RequireFile(oracle_path, "oracle");
  if (!curation_path.empty()) RequireFile(curation_path, "curation");
}

json PipelineConfig::ResultConfigJson() const {
  json j;
  j["beam_size"] = match.beam_size;
  j["max_relation_len"] = match.max_relation_len;
  j["normalize_by_length"] = match.normalize_by_length;
  j["max_pair_token_gap"] =
      match.max_pair_token_gap ? json(*match.max_pair_token_gap) : json(nullptr);
  j["head_reduction"] = HeadReductionName(match.head_reduction);
  j["degree_threshold"] = filter.degree_threshold;
  j["min_distinct_pairs"] = filter.min_distinct_pairs;
  j["require_contiguous"] = filter.require_contiguous;
  j["link_threshold"] = link_threshold;
  j["cooccurrence"] =
      cooccurrence == CooccurrenceMode::kPerFact ? "per_fact" : "per_pair";
  j["strict_precision"] = strict_precision;
  j["rank_top_n"] = rank_top_n;
  j["seed"] = seed;
  j["records"] = record_paths;
  j["dictionary"] = dictionary_path;
  j["vectors"] = vectors_path;
  j["labels"] = labels_path;
  j["oracle"] = oracle_path;
  j["curation"] = curation_path;
  return j;
}

void ParallelFor(size_t n, int workers,
                 const std::function<void(size_t)> &fn) {
  if (n == 0) return;
  const size_t pool = std::min(n, static_cast<size_t>(std::max(workers, 1)));
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (error) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (pool == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (size_t t = 0; t < pool; ++t) threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

std::string PartitionOutputName(size_t k) {
  return "part-" + std::to_string(k) + ".cand.jsonl";
}

MatchSummary RunMatch(const std::vector<std::string> &record_paths,
                      const MatchConfig &cfg, int workers,
                      const std::string &out_dir) {
  cfg.Validate();
  fs::create_directories(out_dir);
  struct PartStats {
    size_t records = 0, bad = 0, facts = 0;
  };
  std::vector<PartStats> stats(record_paths.size());
  MatchSummary summary;
  for (size_t k = 0; k < record_paths.size(); ++k) {
    summary.outputs.push_back(PathIn(out_dir, PartitionOutputName(k)));
  }
  ParallelFor(record_paths.size(), workers, [&](size_t k) {
    std::ifstream in(record_paths[k]);
    if (!in) throw Error("cannot open " + record_paths[k]);
    std::ofstream out(summary.outputs[k]);
    if (!out) throw Error("cannot write " + summary.outputs[k]);
    RecordReader reader(in);
    PartStats &ps = stats[k];
    while (auto result = reader.Next()) {
      if (auto *err = std::get_if<RecordError>(&*result)) {
        ++ps.bad;
        spdlog::warn("{}: {}", record_paths[k], err->ToString());
        continue;
      }
      ++ps.records;
      std::vector<CandidateFact> facts =
          MatchSentence(std::get<SentenceRecord>(*result), cfg);
      ps.facts += facts.size();
      WriteCandidates(facts, out);
    }
    out.flush();
    if (!out) throw Error("failed writing " + summary.outputs[k]);
  });
  for (const PartStats &ps : stats) {
    summary.records += ps.records;
    summary.bad_records += ps.bad;
    summary.facts += ps.facts;
  }
  return summary;
}

std::vector<LinkedFact> LinkFacts(const std::vector<CandidateFact> &facts,
                                  const LinkerResources &res, int workers) {
  std::vector<LinkedFact> out(facts.size());
  const size_t slices =
      std::min(facts.size(), static_cast<size_t>(std::max(workers, 1)) * 4);
  if (slices == 0) return out;
  const size_t per = (facts.size() + slices - 1) / slices;
  ParallelFor(slices, workers, [&](size_t s) {
    const size_t end = std::min(facts.size(), (s + 1) * per);
    for (size_t i = s * per; i < end; ++i) out[i] = LinkFact(facts[i], res);
  });
  return out;
}

const std::vector<std::string> &PipelineStages() {
  static const std::vector<std::string> kStages = {
      "match", "stats",    "filter", "link", "build-relmap",
      "map",   "assemble", "export", "score"};
  return kStages;
}

std::string FileSha256(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Sha256Hex(ss.str());
}

PipelineResult RunPipeline(const PipelineConfig &cfg) {
  cfg.Validate();
  // Parse every side input before creating any output.
  MentionDictionary dictionary = MentionDictionary::Load(cfg.dictionary_path);
  WordVectors vectors = WordVectors::Load(cfg.vectors_path);
  EntityLabels labels = EntityLabels::Load(cfg.labels_path);
  OracleKG oracle = OracleKG::Load(cfg.oracle_path);
  if (!cfg.curation_path.empty()) {
    RelationMap probe;
    probe.LoadCuration(cfg.curation_path);
  }

  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  json timings = json::array();
  std::vector<std::string> outputs;
  PipelineResult result;

  MatchSummary match_summary;
  std::vector<CandidateFact> candidates;
  RunStage("match", timings, [&] {
    match_summary = RunMatch(cfg.record_paths, cfg.match, cfg.workers,
                             out_dir.string());
    for (const std::string &p : match_summary.outputs) {
      outputs.push_back(p);
      std::vector<CandidateFact> part = ReadCandidatesFile(p);
      std::move(part.begin(), part.end(), std::back_inserter(candidates));
    }
    spdlog::info("match: {} records, {} bad, {} candidate facts",
                 match_summary.records, match_summary.bad_records,
                 match_summary.facts);
  });

  RelationStats stats;
  RunStage("stats", timings, [&] {
    // Per-partition partials merged, as a distributed run would.
    std::vector<RelationStats> partials(cfg.record_paths.size());
    ParallelFor(partials.size(), cfg.workers, [&](size_t k) {
      partials[k] = CollectStats(ReadCandidatesFile(match_summary.outputs[k]),
                                 DefaultNormalizer);
    });
    for (const RelationStats &p : partials) stats.Merge(p);
    std::string path = PathIn(out_dir, "relation_stats.tsv");
    stats.SaveTsv(path);
    outputs.push_back(path);
  });

  std::vector<CandidateFact> kept;
  RunStage("filter", timings, [&] {
    FilterResult fr =
        ApplyFilters(candidates, stats, DefaultNormalizer, cfg.filter);
    kept = std::move(fr.kept);
    std::string kept_path = PathIn(out_dir, "kept.cand.jsonl");
    std::string rejected_path = PathIn(out_dir, "rejected.jsonl");
    WriteCandidatesFile(kept, kept_path);
    WriteRejectedFile(fr.rejected, rejected_path);
    outputs.push_back(kept_path);
    outputs.push_back(rejected_path);
    spdlog::info("filter: kept {}, rejected {}", kept.size(),
                 fr.rejected.size());
  });

  std::vector<LinkedFact> linked;
  RunStage("link", timings, [&] {
    LinkerResources res{&dictionary, &vectors, &labels, cfg.link_threshold};
    linked = LinkFacts(kept, res, cfg.workers);
    std::string path = PathIn(out_dir, "linked.jsonl");
    WriteLinkedFile(linked, path);
    outputs.push_back(path);
  });

  RelationMap relmap;
  RunStage("build-relmap", timings, [&] {
    relmap = BuildRelationMap(linked, oracle, cfg.cooccurrence);
    std::string counts = PathIn(out_dir, "relmap.counts.tsv");
    relmap.SaveCounts(counts);
    outputs.push_back(counts);
    if (!cfg.curation_path.empty()) {
      size_t n = relmap.LoadCuration(cfg.curation_path);
      spdlog::info("build-relmap: {} curated mappings", n);
    }
    std::string sheet = PathIn(out_dir, "curation_sheet.tsv");
    relmap.SaveCurationSheet(sheet, cfg.rank_top_n);
    outputs.push_back(sheet);
  });

  RunStage("map", timings, [&] {
    MapRelations(linked, relmap);
    std::string path = PathIn(out_dir, "mapped.jsonl");
    WriteLinkedFile(linked, path);
    outputs.push_back(path);
  });

  RunStage("assemble", timings, [&] {
    result.kg = Assemble(linked);
    spdlog::info("assemble: {} facts ({} mapped, {} partially unmapped, {} "
                 "completely unmapped)",
                 result.kg.size(),
                 result.kg.CountCategory(FactCategory::kMapped),
                 result.kg.CountCategory(FactCategory::kPartiallyUnmapped),
                 result.kg.CountCategory(FactCategory::kCompletelyUnmapped));
  });

  RunStage("export", timings, [&] {
    for (auto [ext, fmt] : {std::pair{"jsonl", ExportFormat::kJsonl},
                            std::pair{"tsv", ExportFormat::kTsv},
                            std::pair{"dot", ExportFormat::kDot}}) {
      std::string path = PathIn(out_dir, std::string("kg.okg.") + ext);
      std::ofstream out(path);
      if (!out) throw Error("cannot write " + path);
      Export(result.kg, fmt, out);
      outputs.push_back(path);
    }
  });

  RunStage("score", timings, [&] {
    result.score = ScoreSlotFilling(result.kg.MappedFacts(), oracle,
                                    {cfg.strict_precision});
    json report = result.score.ToJson();
    report["config"] = cfg.ResultConfigJson();
    std::string path = PathIn(out_dir, "score.json");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << report.dump(2) << '\n';
    if (!out) throw Error("failed writing " + path);
    out.close();
    outputs.push_back(path);
  });

  json manifest;
  json config = cfg.ResultConfigJson();
  manifest["config"] = config;
  manifest["config_hash"] = Sha256Hex(config.dump());
  manifest["runtime"] = {{"workers", cfg.workers}, {"out_dir", cfg.out_dir}};
  manifest["stages"] = timings;
  json inputs = json::object();
  for (const std::string &p : cfg.record_paths) inputs[p] = FileSha256(p);
  for (const std::string *p :
       {&cfg.dictionary_path, &cfg.vectors_path, &cfg.labels_path,
        &cfg.oracle_path, &cfg.curation_path}) {
    if (!p->empty()) inputs[*p] = FileSha256(*p);
  }
  manifest["inputs"] = inputs;
  json out_sums = json::object();
  for (const std::string &p : outputs) {
    out_sums[fs::path(p).filename().string()] = FileSha256(p);
  }
  manifest["outputs"] = out_sums;
  manifest["counts"] = {{"records", match_summary.records},
                        {"bad_records", match_summary.bad_records},
                        {"candidates", candidates.size()},
                        {"kept", kept.size()},
                        {"kg_facts", result.kg.size()}};
  std::ofstream mout(PathIn(out_dir, "manifest.json"));
  if (!mout) throw Error("cannot write manifest");
  mout << manifest.dump(2) << '\n';
  result.manifest = std::move(manifest);
  return result;
}

}  // namespace attnkg
