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

#include "attnkg/relmap.h"

#include <algorithm>
#include <fstream>

#include "attnkg/linker.h"

namespace attnkg {

namespace {

const std::set<std::string> kNoRelations;

}  // namespace

std::optional<std::string> NormalizePhrase(
    const std::vector<TokenAnnotation> &tokens) {
  if (tokens.empty()) return std::nullopt;
  const auto &dropped = DroppedRelationPos();
  std::vector<std::string> kept;
  for (const TokenAnnotation &t : tokens) {
    if (dropped.count(t.pos) == 0) kept.push_back(CaseFold(t.lemma));
  }
  if (kept.empty()) {
    for (const TokenAnnotation &t : tokens) kept.push_back(CaseFold(t.lemma));
  }
  // Lemmas may themselves hold spaces; collapse so the result is canonical.
  return Join(SplitWhitespace(Join(kept, " ")), " ");
}

void OracleKG::Add(const std::string &head, const std::string &relation,
                   const std::string &tail) {
  if (!facts_.emplace(head, relation, tail).second) return;
  slots_[{head, relation}].insert(tail);
  by_pair_[{head, tail}].insert(relation);
}

OracleKG OracleKG::Load(const std::string &path) {
  OracleKG kg;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 3) {
      throw Error(path + ":" + std::to_string(line_no) +
                  ": expected head \\t relation \\t tail");
    }
    kg.Add(f[0], f[1], f[2]);
  }
  return kg;
}

const std::set<std::string> &OracleKG::RelationsBetween(
    const std::string &head, const std::string &tail) const {
  auto it = by_pair_.find({head, tail});
  return it == by_pair_.end() ? kNoRelations : it->second;
}

const std::set<std::string> *OracleKG::Slot(const std::string &head,
                                            const std::string &relation) const {
  auto it = slots_.find({head, relation});
  return it == slots_.end() ? nullptr : &it->second;
}

void RelationMap::Add(const std::string &phrase, const std::string &relation,
                      int64_t count) {
  if (count <= 0) return;
  counts_[{phrase, relation}] += count;
}

void RelationMap::Merge(const RelationMap &other) {
  for (const auto &[key, count] : other.counts_) counts_[key] += count;
  for (const Key &key : other.curated_) curated_.insert(key);
}

int64_t RelationMap::Count(const std::string &phrase,
                           const std::string &relation) const {
  auto it = counts_.find({phrase, relation});
  return it == counts_.end() ? 0 : it->second;
}

bool RelationMap::Approve(const std::string &phrase,
                          const std::string &relation) {
  if (counts_.count({phrase, relation}) == 0) return false;
  curated_.insert({phrase, relation});
  return true;
}

std::vector<std::string> RelationMap::RankPhrases(const std::string &relation,
                                                  size_t n) const {
  std::vector<std::pair<int64_t, std::string>> rows;
  for (const auto &[key, count] : counts_) {
    if (key.second == relation) rows.emplace_back(count, key.first);
  }
  std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  for (size_t i = 0; i < rows.size() && i < n; ++i) {
    out.push_back(rows[i].second);
  }
  return out;
}

std::optional<std::string> RelationMap::MapRelation(
    const std::string &phrase) const {
  std::optional<std::string> best;
  int64_t best_count = 0;
  // curated_ is sorted by (phrase, relation), so the first maximum is also
  // the lexicographically smallest relation.
  for (auto it = curated_.lower_bound({phrase, std::string()});
       it != curated_.end() && it->first == phrase; ++it) {
    int64_t c = Count(it->first, it->second);
    if (!best || c > best_count) {
      best = it->second;
      best_count = c;
    }
  }
  return best;
}

void RelationMap::SaveCounts(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto &[key, count] : counts_) {
    out << key.first << '\t' << key.second << '\t' << count << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

RelationMap RelationMap::LoadCounts(const std::string &path) {
  RelationMap map;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 3) {
      throw Error(path + ":" + std::to_string(line_no) +
                  ": expected phrase \\t relation \\t count");
    }
    try {
      map.Add(f[0], f[1], std::stoll(f[2]));
    } catch (const std::logic_error &) {
      throw Error(path + ":" + std::to_string(line_no) + ": bad count");
    }
  }
  return map;
}

void RelationMap::SaveCurationSheet(const std::string &path, size_t n) const {
  std::set<std::string> relations;
  for (const auto &[key, count] : counts_) relations.insert(key.second);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const std::string &rel : relations) {
    for (const std::string &phrase : RankPhrases(rel, n)) {
      out << phrase << '\t' << rel << '\t' << Count(phrase, rel) << '\t'
          << (curated_.count({phrase, rel}) ? 1 : 0) << '\n';
    }
  }
  if (!out) throw Error("failed writing " + path);
}

size_t RelationMap::LoadCuration(const std::string &path) {
  size_t approved = 0;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 4 || (f[3] != "0" && f[3] != "1")) {
      throw Error(path + ":" + std::to_string(line_no) +
                  ": expected phrase \\t relation \\t count \\t approved(0|1)");
    }
    if (f[3] == "1" && Approve(f[0], f[1])) ++approved;
  }
  return approved;
}

RelationMap BuildRelationMap(const std::vector<LinkedFact> &facts,
                             const OracleKG &oracle, CooccurrenceMode mode) {
  RelationMap map;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
  for (const LinkedFact &lf : facts) {
    if (!lf.head_link || !lf.tail_link || lf.relation_normalized.empty()) {
      continue;
    }
    const std::string &h = lf.head_link->entity_id;
    const std::string &t = lf.tail_link->entity_id;
    for (const std::string &rel : oracle.RelationsBetween(h, t)) {
      if (mode == CooccurrenceMode::kPerPair &&
          !seen.emplace(lf.relation_normalized, rel, h, t).second) {
        continue;
      }
      map.Add(lf.relation_normalized, rel, 1);
    }
  }
  return map;
}

}  // namespace attnkg
