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

#include "testing/fixtures.h"

namespace attnkg::testing {

SentenceRecord MakeRecord(const std::string &doc_id, int64_t sent_id,
                          const std::vector<Word> &words,
                          const std::vector<std::pair<int, int>> &chunks,
                          std::vector<float> attention) {
  SentenceRecord r;
  r.doc_id = doc_id;
  r.sent_id = sent_id;
  r.tokens = Tokens(words);
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) r.text += ' ';
    r.text += words[i].text;
  }
  for (const auto &[first, last] : chunks) {
    NounChunk c;
    c.first_token = first;
    c.last_token = last;
    for (int i = first; i <= last; ++i) {
      if (i > first) c.surface += ' ';
      c.surface += words[i].text;
    }
    r.chunks.push_back(std::move(c));
  }
  const int n = static_cast<int>(words.size());
  if (attention.empty()) attention.assign(static_cast<size_t>(n) * n, 0.0f);
  r.attention.layout = AttentionLayout::kReduced;
  r.attention.dim = n;
  r.attention.values = std::move(attention);
  r.attention.layer_spec = "last";
  r.attention.reduction_applied = HeadReduction::kMean;
  return r;
}

std::vector<TokenAnnotation> Tokens(const std::vector<Word> &words) {
  std::vector<TokenAnnotation> out;
  int64_t offset = 0;
  for (const Word &w : words) {
    TokenAnnotation t;
    t.text = w.text;
    t.lemma = w.lemma;
    t.pos = w.pos;
    t.char_start = offset;
    t.char_end = offset + static_cast<int64_t>(w.text.size());
    offset = t.char_end + 1;
    out.push_back(std::move(t));
  }
  return out;
}

SentenceRecord Figure2Record() {
  const int n = 5;
  std::vector<float> a(n * n, 0.0f);
  auto set = [&](int attending, int attended, float v) {
    a[attending * n + attended] = v;
  };
  set(1, 0, 0.3f);  // is -> Dylan
  set(3, 1, 0.4f);  // songwriter -> is
  set(2, 0, 0.1f);  // a -> Dylan
  set(3, 2, 0.2f);  // songwriter -> a
  return MakeRecord("fig2", 0,
                    {{"Dylan", "Dylan", "PROPN"},
                     {"is", "be", "AUX"},
                     {"a", "a", "DET"},
                     {"songwriter", "songwriter", "NOUN"},
                     {".", ".", "PUNCT"}},
                    {{0, 0}, {3, 3}}, std::move(a));
}

OpenFact MappedFact(const std::string &head, const std::string &relation,
                    const std::string &tail) {
  OpenFact f;
  f.category = FactCategory::kMapped;
  f.head_surface = head;
  f.head_entity = head;
  f.relation_surface = relation;
  f.relation_normalized = relation;
  f.relation_kg = relation;
  f.tail_surface = tail;
  f.tail_entity = tail;
  f.doc_id = "eval";
  return f;
}

OracleKG FourSlotOracle() {
  OracleKG o;
  for (int i = 1; i <= 4; ++i) {
    o.Add("S" + std::to_string(i), "R", "G" + std::to_string(i));
  }
  return o;
}

std::vector<OpenFact> TwoOfThreePredictions() {
  return {MappedFact("S1", "R", "G1"), MappedFact("S2", "R", "G2"),
          MappedFact("S3", "R", "wrong")};
}

}  // namespace attnkg::testing
