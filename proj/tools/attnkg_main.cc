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

// Command-line front end. Every stage reads and writes the documented file
// formats, so stages can be re-run independently; `run` chains them all.

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "attnkg/evalkit.h"
#include "attnkg/fact_io.h"
#include "attnkg/filters.h"
#include "attnkg/kg.h"
#include "attnkg/linker.h"
#include "attnkg/pipeline.h"
#include "attnkg/relmap.h"

namespace {

using namespace attnkg;

void ConfigureLogging() {
  const char *level = std::getenv("MAMA_KG_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level)
                          : spdlog::level::warn);
}

std::optional<std::string> Normalizer(
    const std::vector<TokenAnnotation> &tokens) {
  return NormalizePhrase(tokens);
}

std::vector<CandidateFact> ReadAllCandidates(
    const std::vector<std::string> &paths) {
  std::vector<CandidateFact> all;
  for (const std::string &p : paths) {
    std::vector<CandidateFact> part = ReadCandidatesFile(p);
    std::move(part.begin(), part.end(), std::back_inserter(all));
  }
  return all;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

// Options shared by `match` and `run`.
struct MatchFlags {
  std::optional<int> max_gap;
  std::string head_reduction = "mean";
  bool no_normalize = false;

  void Register(CLI::App *app, MatchConfig &cfg) {
    app->add_option("--beam-size", cfg.beam_size, "Beam size k")
        ->capture_default_str();
    app->add_option("--max-relation-len", cfg.max_relation_len,
                    "Maximum relation tokens (search depth)")
        ->capture_default_str();
    app->add_option("--max-pair-gap", max_gap,
                    "Skip chunk pairs further apart than this many tokens");
    app->add_option("--head-reduction", head_reduction,
                    "Reduction for per-head attention (mean|max)")
        ->check(CLI::IsMember({"mean", "max"}))
        ->capture_default_str();
    app->add_flag("--no-length-normalization", no_normalize,
                  "Compare raw instead of length-normalized degrees");
  }

  void Apply(MatchConfig &cfg) const {
    cfg.max_pair_token_gap = max_gap;
    cfg.head_reduction = *ParseHeadReduction(head_reduction);
    cfg.normalize_by_length = !no_normalize;
  }
};

void RegisterFilterFlags(CLI::App *app, FilterConfig &cfg, bool &allow_gaps) {
  app->add_option("--degree-threshold", cfg.degree_threshold,
                  "Minimum normalized matching degree")
      ->capture_default_str();
  app->add_option("--min-distinct-pairs", cfg.min_distinct_pairs,
                  "Minimum distinct head-tail pairs per relation phrase")
      ->capture_default_str();
  app->add_flag("--allow-gaps", allow_gaps,
                "Keep relations that are not contiguous");
}

}  // namespace

int main(int argc, char **argv) {
  ConfigureLogging();
  CLI::App app{"Builds open knowledge graphs from language-model attention"};
  app.require_subcommand(1);
  // Options are read from [<subcommand>] sections, e.g. [run].
  app.set_config("--config", "", "TOML file with per-subcommand options");

  // match
  MatchConfig match_cfg;
  MatchFlags match_flags;
  std::vector<std::string> match_records;
  std::string match_out;
  int match_workers = 1;
  CLI::App *match = app.add_subcommand("match", "Beam search candidate facts");
  match->add_option("--records", match_records, "Partition files")
      ->required()
      ->check(CLI::ExistingFile);
  match->add_option("--out", match_out, "Output directory")->required();
  match->add_option("--workers", match_workers)->capture_default_str();
  match_flags.Register(match, match_cfg);

  // stats
  std::vector<std::string> stats_in;
  std::string stats_out;
  CLI::App *stats = app.add_subcommand("stats", "Distinct pair counts per phrase");
  stats->add_option("--candidates", stats_in)->required()->check(
      CLI::ExistingFile);
  stats->add_option("--out", stats_out, "Stats TSV")->required();

  // filter
  std::vector<std::string> filter_in;
  std::string filter_stats, filter_kept, filter_rejected;
  FilterConfig filter_cfg;
  bool filter_allow_gaps = false;
  CLI::App *filter = app.add_subcommand("filter", "Apply the fact constraints");
  filter->add_option("--candidates", filter_in)->required()->check(
      CLI::ExistingFile);
  filter->add_option("--stats", filter_stats,
                     "Stats TSV; computed from the candidates when omitted")
      ->check(CLI::ExistingFile);
  filter->add_option("--kept", filter_kept)->required();
  filter->add_option("--rejected", filter_rejected)->required();
  RegisterFilterFlags(filter, filter_cfg, filter_allow_gaps);

  // link
  std::string link_in, link_dict, link_vectors, link_labels, link_out;
  float link_threshold = 0.25f;
  int link_workers = 1;
  CLI::App *link = app.add_subcommand("link", "Link heads and tails to entities");
  link->add_option("--candidates", link_in)->required()->check(
      CLI::ExistingFile);
  link->add_option("--dictionary", link_dict)->required()->check(
      CLI::ExistingFile);
  link->add_option("--vectors", link_vectors)->required()->check(
      CLI::ExistingFile);
  link->add_option("--labels", link_labels)->required()->check(
      CLI::ExistingFile);
  link->add_option("--link-threshold", link_threshold)->capture_default_str();
  link->add_option("--workers", link_workers)->capture_default_str();
  link->add_option("--out", link_out)->required();

  // build-relmap
  std::string br_in, br_oracle, br_out;
  bool br_per_pair = false;
  CLI::App *build = app.add_subcommand(
      "build-relmap", "Count phrase/relation co-occurrences");
  build->add_option("--linked", br_in)->required()->check(CLI::ExistingFile);
  build->add_option("--oracle", br_oracle)->required()->check(
      CLI::ExistingFile);
  build->add_option("--out", br_out, "Counts TSV")->required();
  build->add_flag("--per-pair", br_per_pair,
                  "Count each linked head-tail pair once");

  // rank
  std::string rank_counts, rank_curation, rank_out, rank_relation;
  size_t rank_n = 15;
  CLI::App *rank = app.add_subcommand("rank", "Write the curation sheet");
  rank->add_option("--counts", rank_counts)->required()->check(
      CLI::ExistingFile);
  rank->add_option("--curation", rank_curation,
                   "Existing sheet whose approvals are carried over")
      ->check(CLI::ExistingFile);
  rank->add_option("--top-n", rank_n)->capture_default_str();
  rank->add_option("--relation", rank_relation,
                   "Print the top phrases of one relation instead");
  rank->add_option("--out", rank_out, "Curation sheet TSV");

  // map
  std::string map_in, map_counts, map_curation, map_out;
  CLI::App *map = app.add_subcommand("map", "Map relation phrases");
  map->add_option("--linked", map_in)->required()->check(CLI::ExistingFile);
  map->add_option("--counts", map_counts)->required()->check(
      CLI::ExistingFile);
  map->add_option("--curation", map_curation)->check(CLI::ExistingFile);
  map->add_option("--out", map_out)->required();

  // assemble
  std::vector<std::string> asm_in;
  std::string asm_out;
  CLI::App *assemble = app.add_subcommand("assemble", "Build the open KG");
  assemble->add_option("--mapped", asm_in)->required()->check(
      CLI::ExistingFile);
  assemble->add_option("--out", asm_out, "KG .okg.jsonl")->required();

  // export
  std::string exp_in, exp_out, exp_format = "tsv";
  CLI::App *exp = app.add_subcommand("export", "Export the open KG");
  exp->add_option("--kg", exp_in)->required()->check(CLI::ExistingFile);
  exp->add_option("--format", exp_format)
      ->check(CLI::IsMember({"jsonl", "tsv", "dot"}))
      ->capture_default_str();
  exp->add_option("--out", exp_out, "Output file (stdout if omitted)");

  // score
  std::string score_kg, score_oracle, score_out;
  bool score_strict = false;
  CLI::App *score = app.add_subcommand("score", "Slot-filling P/R/F1");
  score->add_option("--kg", score_kg)->required()->check(CLI::ExistingFile);
  score->add_option("--oracle", score_oracle)->required()->check(
      CLI::ExistingFile);
  score->add_flag("--strict-precision", score_strict,
                  "Count off-slot predictions as wrong");
  score->add_option("--out", score_out, "Report JSON (stdout if omitted)");

  // sample-review
  std::string rev_kg, rev_out;
  size_t rev_n = 100;
  uint64_t rev_seed = 0;
  bool rev_all = false;
  CLI::App *review = app.add_subcommand("sample-review",
                                        "Sample facts into a review sheet");
  review->add_option("--kg", rev_kg)->required()->check(CLI::ExistingFile);
  review->add_option("-n,--count", rev_n)->capture_default_str();
  review->add_option("--seed", rev_seed)->capture_default_str();
  review->add_flag("--all-categories", rev_all,
                   "Include mapped facts (default: unmapped only)");
  review->add_option("--out", rev_out, "Review TSV (stdout if omitted)");

  // run
  PipelineConfig run_cfg;
  MatchFlags run_match_flags;
  bool run_allow_gaps = false, run_per_pair = false;
  CLI::App *run = app.add_subcommand("run", "Run the whole pipeline");
  run->add_option("--records", run_cfg.record_paths, "Partition files")
      ->required();
  run->add_option("--dictionary", run_cfg.dictionary_path)->required();
  run->add_option("--vectors", run_cfg.vectors_path)->required();
  run->add_option("--labels", run_cfg.labels_path)->required();
  run->add_option("--oracle", run_cfg.oracle_path)->required();
  run->add_option("--curation", run_cfg.curation_path);
  run->add_option("--workers", run_cfg.workers)->capture_default_str();
  run->add_option("--seed", run_cfg.seed)->capture_default_str();
  run->add_option("--out", run_cfg.out_dir)->required();
  run->add_option("--link-threshold", run_cfg.link_threshold)
      ->capture_default_str();
  run->add_option("--top-n", run_cfg.rank_top_n)->capture_default_str();
  run->add_flag("--per-pair", run_per_pair);
  run->add_flag("--strict-precision", run_cfg.strict_precision);
  run_match_flags.Register(run, run_cfg.match);
  RegisterFilterFlags(run, run_cfg.filter, run_allow_gaps);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*match) {
      match_flags.Apply(match_cfg);
      MatchSummary s = RunMatch(match_records, match_cfg, match_workers,
                                match_out);
      std::cout << "records " << s.records << " bad " << s.bad_records
                << " facts " << s.facts << '\n';
      return 0;
    }
    if (*stats) {
      CollectStats(ReadAllCandidates(stats_in), Normalizer).SaveTsv(stats_out);
      return 0;
    }
    if (*filter) {
      filter_cfg.require_contiguous = !filter_allow_gaps;
      filter_cfg.Validate();
      std::vector<CandidateFact> facts = ReadAllCandidates(filter_in);
      RelationStats rs = filter_stats.empty() ? CollectStats(facts, Normalizer)
                                              : RelationStats::LoadTsv(
                                                    filter_stats);
      FilterResult fr = ApplyFilters(facts, rs, Normalizer, filter_cfg);
      WriteCandidatesFile(fr.kept, filter_kept);
      WriteRejectedFile(fr.rejected, filter_rejected);
      std::cout << "kept " << fr.kept.size() << " rejected "
                << fr.rejected.size() << '\n';
      return 0;
    }
    if (*link) {
      MentionDictionary dict = MentionDictionary::Load(link_dict);
      WordVectors vectors = WordVectors::Load(link_vectors);
      EntityLabels labels = EntityLabels::Load(link_labels);
      LinkerResources res{&dict, &vectors, &labels, link_threshold};
      WriteLinkedFile(LinkFacts(ReadCandidatesFile(link_in), res, link_workers),
                      link_out);
      return 0;
    }
    if (*build) {
      BuildRelationMap(ReadLinkedFile(br_in), OracleKG::Load(br_oracle),
                       br_per_pair ? CooccurrenceMode::kPerPair
                                   : CooccurrenceMode::kPerFact)
          .SaveCounts(br_out);
      return 0;
    }
    if (*rank) {
      RelationMap rm = RelationMap::LoadCounts(rank_counts);
      if (!rank_curation.empty()) rm.LoadCuration(rank_curation);
      if (!rank_relation.empty()) {
        for (const std::string &p : rm.RankPhrases(rank_relation, rank_n)) {
          std::cout << p << '\t' << rm.Count(p, rank_relation) << '\n';
        }
        return 0;
      }
      if (rank_out.empty()) throw Error("--out or --relation is required");
      rm.SaveCurationSheet(rank_out, rank_n);
      return 0;
    }
    if (*map) {
      RelationMap rm = RelationMap::LoadCounts(map_counts);
      if (!map_curation.empty()) rm.LoadCuration(map_curation);
      std::vector<LinkedFact> facts = ReadLinkedFile(map_in);
      MapRelations(facts, rm);
      WriteLinkedFile(facts, map_out);
      return 0;
    }
    if (*assemble) {
      std::vector<LinkedFact> facts;
      for (const std::string &p : asm_in) {
        std::vector<LinkedFact> part = ReadLinkedFile(p);
        std::move(part.begin(), part.end(), std::back_inserter(facts));
      }
      std::ofstream out = OpenOut(asm_out);
      Export(Assemble(facts), ExportFormat::kJsonl, out);
      return 0;
    }
    if (*exp) {
      OpenKG kg = ReadOpenKGFile(exp_in);
      ExportFormat fmt = *ParseExportFormat(exp_format);
      if (exp_out.empty()) {
        Export(kg, fmt, std::cout);
      } else {
        std::ofstream out = OpenOut(exp_out);
        Export(kg, fmt, out);
      }
      return 0;
    }
    if (*score) {
      OpenKG kg = ReadOpenKGFile(score_kg);
      ScoreReport r = ScoreSlotFilling(kg.MappedFacts(),
                                       OracleKG::Load(score_oracle),
                                       {score_strict});
      nlohmann::json j = r.ToJson();
      j["config"] = {{"kg", score_kg},
                     {"oracle", score_oracle},
                     {"strict_precision", score_strict}};
      if (score_out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        OpenOut(score_out) << j.dump(2) << '\n';
      }
      return 0;
    }
    if (*review) {
      OpenKG kg = ReadOpenKGFile(rev_kg);
      std::vector<OpenFact> pool;
      for (const OpenFact &f : kg.facts()) {
        if (rev_all || f.category != FactCategory::kMapped) pool.push_back(f);
      }
      std::vector<ReviewRow> rows = SampleForReview(pool, rev_n, rev_seed);
      if (rev_out.empty()) {
        WriteReviewSheet(rows, std::cout);
      } else {
        std::ofstream out = OpenOut(rev_out);
        WriteReviewSheet(rows, out);
      }
      return 0;
    }
    if (*run) {
      run_match_flags.Apply(run_cfg.match);
      run_cfg.filter.require_contiguous = !run_allow_gaps;
      run_cfg.cooccurrence =
          run_per_pair ? CooccurrenceMode::kPerPair : CooccurrenceMode::kPerFact;
      PipelineResult r = RunPipeline(run_cfg);
      std::cout << "facts " << r.kg.size() << " mapped "
                << r.kg.CountCategory(FactCategory::kMapped) << " precision "
                << r.score.precision << " recall " << r.score.recall << " f1 "
                << r.score.f1 << '\n';
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
