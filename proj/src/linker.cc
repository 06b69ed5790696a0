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

#include "attnkg/linker.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "attnkg/relmap.h"

namespace attnkg {

namespace {

bool CandidateBefore(const EntityCandidate &a, const EntityCandidate &b) {
  if (a.prior != b.prior) return a.prior > b.prior;
  return a.entity_id < b.entity_id;
}

float ParseFloat(const std::string &s, const std::string &where) {
  try {
    size_t used = 0;
    float v = std::stof(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception &) {
    throw Error(where + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string NormalizeMention(std::string_view surface) {
  std::vector<std::string> words = SplitWhitespace(CaseFold(surface));
  if (words.size() > 1 &&
      (words[0] == "a" || words[0] == "an" || words[0] == "the")) {
    words.erase(words.begin());
  }
  return Join(words, " ");
}

bool IsBarePronoun(std::string_view m) {
  return m == "he" || m == "she" || m == "it" || m == "they";
}

void MentionDictionary::Add(std::string_view mention,
                            const std::string &entity_id, float prior) {
  if (!(prior > 0.0f)) {
    throw Error("prior for " + entity_id + " must be positive");
  }
  std::vector<EntityCandidate> &cands = entries_[NormalizeMention(mention)];
  auto it = std::find_if(cands.begin(), cands.end(), [&](const auto &c) {
    return c.entity_id == entity_id;
  });
  if (it != cands.end()) {
    it->prior = std::max(it->prior, prior);
  } else {
    cands.push_back({entity_id, prior});
  }
  std::sort(cands.begin(), cands.end(), CandidateBefore);
}

MentionDictionary MentionDictionary::Load(const std::string &path) {
  MentionDictionary dict;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != 3) throw Error(where + ": expected 3 tab-separated fields");
    dict.Add(f[0], f[1], ParseFloat(f[2], where));
  }
  return dict;
}

std::span<const EntityCandidate> MentionDictionary::Lookup(
    const std::string &normalized) const {
  auto it = entries_.find(normalized);
  if (it == entries_.end()) return {};
  return it->second;
}

void WordVectors::Add(std::string_view token, std::vector<float> vec) {
  if (dim_ == 0 && table_.empty()) dim_ = static_cast<int>(vec.size());
  if (static_cast<int>(vec.size()) != dim_ || dim_ == 0) {
    throw DimensionMismatchError("vector for '" + std::string(token) +
                                 "' has dimension " +
                                 std::to_string(vec.size()) + ", expected " +
                                 std::to_string(dim_));
  }
  table_.try_emplace(CaseFold(token), std::move(vec));
}

WordVectors WordVectors::Load(const std::string &path) {
  WordVectors wv;
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    std::vector<float> vec;
    std::string num;
    while (ss >> num) {
      vec.push_back(ParseFloat(num, path + ":" + std::to_string(line_no)));
    }
    try {
      wv.Add(token, std::move(vec));
    } catch (const DimensionMismatchError &e) {
      throw DimensionMismatchError(path + ":" + std::to_string(line_no) + ": " +
                                   e.what());
    }
  }
  return wv;
}

const std::vector<float> *WordVectors::Find(std::string_view token) const {
  auto it = table_.find(CaseFold(token));
  return it == table_.end() ? nullptr : &it->second;
}

std::optional<std::vector<float>> WordVectors::MeanVector(
    std::span<const std::string> tokens) const {
  std::vector<double> acc(dim_, 0.0);
  int found = 0;
  for (const std::string &t : tokens) {
    const std::vector<float> *v = Find(t);
    if (v == nullptr) continue;
    for (int d = 0; d < dim_; ++d) acc[d] += (*v)[d];
    ++found;
  }
  if (found == 0) return std::nullopt;
  std::vector<float> mean(dim_);
  for (int d = 0; d < dim_; ++d) mean[d] = static_cast<float>(acc[d] / found);
  return mean;
}

void EntityLabels::Add(const std::string &entity_id, const std::string &label) {
  labels_[entity_id] = label;
}

EntityLabels EntityLabels::Load(const std::string &path) {
  EntityLabels labels;
  size_t line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 2) {
      throw Error(path + ":" + std::to_string(line_no) +
                  ": expected entity_id \\t label");
    }
    labels.Add(f[0], f[1]);
  }
  return labels;
}

std::vector<std::string> EntityLabels::LabelTokens(
    const std::string &entity_id) const {
  auto it = labels_.find(entity_id);
  if (it == labels_.end()) return {};
  return SplitWhitespace(it->second);
}

float ContextSimilarity(std::span<const std::string> context,
                        std::span<const std::string> label,
                        const WordVectors &vectors) {
  auto a = vectors.MeanVector(context);
  auto b = vectors.MeanVector(label);
  if (!a || !b) return 0.0f;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t d = 0; d < a->size(); ++d) {
    dot += static_cast<double>((*a)[d]) * (*b)[d];
    na += static_cast<double>((*a)[d]) * (*a)[d];
    nb += static_cast<double>((*b)[d]) * (*b)[d];
  }
  if (na == 0.0 || nb == 0.0) return 0.0f;
  double cos = dot / (std::sqrt(na) * std::sqrt(nb));
  return static_cast<float>(std::clamp(cos, -1.0, 1.0));
}

std::optional<EntityLink> LinkMention(const NounChunk &chunk,
                                      std::span<const std::string> sentence,
                                      const LinkerResources &res) {
  const std::string mention =
      NormalizeMention(chunk.resolved_surface.value_or(chunk.surface));
  if (!chunk.resolved_surface && IsBarePronoun(mention)) return std::nullopt;
  std::span<const EntityCandidate> cands = res.dictionary->Lookup(mention);
  if (cands.empty()) return std::nullopt;

  std::vector<std::string> context;
  for (size_t i = 0; i < sentence.size(); ++i) {
    if (!chunk.Contains(static_cast<int>(i))) context.push_back(sentence[i]);
  }
  std::optional<EntityLink> best;
  for (const EntityCandidate &c : cands) {
    std::vector<std::string> label = res.labels->LabelTokens(c.entity_id);
    float sim = ContextSimilarity(context, label, *res.vectors);
    if (sim < res.link_threshold) continue;
    EntityLink link{c.entity_id, c.prior, sim,
                    c.prior * std::max(0.0f, sim)};
    if (!best || link.score > best->score ||
        (link.score == best->score &&
         (link.prior > best->prior ||
          (link.prior == best->prior && link.entity_id < best->entity_id)))) {
      best = std::move(link);
    }
  }
  return best;
}

std::optional<EntityLink> LinkMention(const NounChunk &chunk,
                                      const SentenceRecord &record,
                                      const LinkerResources &res) {
  std::vector<std::string> sentence;
  sentence.reserve(record.tokens.size());
  for (const TokenAnnotation &t : record.tokens) sentence.push_back(t.text);
  return LinkMention(chunk, sentence, res);
}

LinkedFact LinkFact(const CandidateFact &fact, const LinkerResources &res) {
  LinkedFact out;
  out.fact = fact;
  out.relation_normalized = NormalizePhrase(fact.relation_tokens).value_or("");
  out.head_link = LinkMention(fact.head, fact.sentence_tokens, res);
  out.tail_link = LinkMention(fact.tail, fact.sentence_tokens, res);
  return out;
}

}  // namespace attnkg
