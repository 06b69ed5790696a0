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

#ifndef ATTNKG_TESTING_FIXTURES_H_
#define ATTNKG_TESTING_FIXTURES_H_

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "attnkg/corpus.h"
#include "attnkg/kg.h"
#include "attnkg/matcher.h"
#include "attnkg/relmap.h"

namespace attnkg::testing {

struct Word {
  std::string text;
  std::string lemma;
  std::string pos;
};

// Builds a valid record: text is the words joined by single spaces, chunks
// are inclusive token spans with surfaces taken from the words, attention is
// a reduced row-major T*T matrix (zeros when empty).
SentenceRecord MakeRecord(const std::string &doc_id, int64_t sent_id,
                          const std::vector<Word> &words,
                          const std::vector<std::pair<int, int>> &chunks,
                          std::vector<float> attention = {});

// "Dylan is a songwriter ." with chunks {Dylan, songwriter} and the
// attention of the matching walkthrough: A[is][Dylan]=0.3,
// A[songwriter][is]=0.4, A[a][Dylan]=0.1, A[songwriter][a]=0.2, zeros
// elsewhere.
SentenceRecord Figure2Record();

// Relation tokens for a phrase given as (text, lemma, pos) triples.
std::vector<TokenAnnotation> Tokens(const std::vector<Word> &words);

// A mapped open fact (head, relation, tail) with entity ids set.
OpenFact MappedFact(const std::string &head, const std::string &relation,
                    const std::string &tail);

// Oracle with four single-tail slots S1..S4 under relation "R".
OracleKG FourSlotOracle();

// Three on-slot predictions against FourSlotOracle(), two of them correct.
std::vector<OpenFact> TwoOfThreePredictions();

}  // namespace attnkg::testing

#endif  // ATTNKG_TESTING_FIXTURES_H_
